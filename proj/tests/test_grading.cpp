#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "test_util.hpp"

using namespace persres;
using namespace persres::testing;

TEST_CASE("leq golden values") {
  CHECK(leq(gr(0, 0), gr(1, 2)));
  CHECK_FALSE(leq(gr(1, 0), gr(0, 1)));  // incomparable
  CHECK(leq(gr(3, 5), gr(3, 5)));        // reflexive
  CHECK_THROWS(leq(gr(0, 0), Grade({mpq_class(0)})));
}

TEST_CASE("shift_grade golden values") {
  // Grade (eps,eps) of C_eps's last term shifted by 2*eta, eps=1, eta=3/4.
  Grade shifted = gr(1, 1).shifted(q(3, 2));
  CHECK(shifted == grq(q(-1, 2), q(-1, 2)));
  CHECK(gr(2, 3).shifted(0) == gr(2, 3));
  CHECK(gr(2, 3).shifted(q(1, 3)).shifted(q(-1, 3)) == gr(2, 3));
}

TEST_CASE("critical_grid golden values") {
  // Join closure of a product grid.
  Grid g = critical_grid({gr(0, 0), gr(1, 0), gr(0, 1)}, {});
  CHECK(g.axes[0] == Vec{mpq_class(0), mpq_class(1)});
  CHECK(g.axes[1] == Vec{mpq_class(0), mpq_class(1)});
  CHECK(g.contains(gr(1, 1)));  // the join appears

  Grid g2 = critical_grid({gr(0, 0)}, {q(1, 2)});
  CHECK(g2.axes[0] == Vec{q(-1, 2), mpq_class(0)});

  // The running example at eps=1, eta=3/4: C_eps[2 eta] needs (-1/2,-3/2).
  Grid g3 = critical_grid({gr(1, 1), gr(1, 0), gr(0, 1), gr(0, 0)}, {q(3, 2)});
  CHECK(g3.contains(grq(q(-1, 2), q(-3, 2))));

  CHECK_THROWS(critical_grid({}, {}));
}

TEST_CASE("leq is a partial order on random triples") {
  Rng rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    Grade a = gr(rng.pick(-2, 2), rng.pick(-2, 2));
    Grade b = gr(rng.pick(-2, 2), rng.pick(-2, 2));
    Grade c = gr(rng.pick(-2, 2), rng.pick(-2, 2));
    CHECK(leq(a, a));
    if (leq(a, b) && leq(b, a)) CHECK(a == b);
    if (leq(a, b) && leq(b, c)) CHECK(leq(a, c));
  }
}

TEST_CASE("shift_grade is a poset automorphism") {
  Rng rng(6);
  for (int trial = 0; trial < 100; ++trial) {
    Grade a = gr(rng.pick(-3, 3), rng.pick(-3, 3));
    Grade b = gr(rng.pick(-3, 3), rng.pick(-3, 3));
    mpq_class eps = q(rng.pick(-8, 8), 4);
    CHECK(leq(a, b) == leq(a.shifted(eps), b.shifted(eps)));
  }
}

TEST_CASE("critical_grid is monotone under input growth") {
  std::vector<Grade> base{gr(0, 0), gr(2, 1)};
  Grid small = critical_grid(base, {q(1, 2)});
  std::vector<Grade> more = base;
  more.push_back(gr(1, 3));
  Grid big = critical_grid(more, {q(1, 2), q(1, 3)});
  for (std::size_t axis = 0; axis < 2; ++axis)
    for (const auto& v : small.axes[axis])
      CHECK(std::find(big.axes[axis].begin(), big.axes[axis].end(), v) != big.axes[axis].end());
}

TEST_CASE("grid points enumerate in lexicographic order") {
  Grid g = critical_grid({gr(0, 0), gr(1, 1)}, {});
  auto pts = g.points();
  REQUIRE(pts.size() == 4);
  CHECK(pts[0] == gr(0, 0));
  CHECK(pts[1] == gr(0, 1));
  CHECK(pts[2] == gr(1, 0));
  CHECK(pts[3] == gr(1, 1));
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) CHECK(lex_less(pts[i], pts[i + 1]));
}
