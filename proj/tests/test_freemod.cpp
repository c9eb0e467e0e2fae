#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "test_util.hpp"

using namespace persres;
using namespace persres::testing;

TEST_CASE("xi golden values") {
  FreeModule f00(2, {gr(0, 0)});
  auto x = f00.xi();
  CHECK(x.size() == 1);
  CHECK(x.at(gr(0, 0)) == 1);

  FreeModule f00sq(2, {gr(0, 0), gr(0, 0)});
  CHECK(f00sq.xi().at(gr(0, 0)) == 2);

  FreeModule empty(2, {});
  CHECK(empty.xi().empty());
}

TEST_CASE("shift_free golden values") {
  FreeModule f(2, {gr(1, 1)});
  CHECK(f.shifted(q(3, 2)).gens[0] == grq(q(-1, 2), q(-1, 2)));
  FreeModule g(2, {gr(0, 0), gr(2, 1)});
  CHECK(g.shifted(0) == g);
  CHECK(g.shifted(q(2, 7)).shifted(q(-2, 7)) == g);
}

TEST_CASE("evaluate_free golden values") {
  FreeModule f00(2, {gr(0, 0)});
  CHECK(f00.alive(gr(1, 1)) == std::vector<std::size_t>{0});
  FreeModule two(2, {gr(1, 0), gr(0, 1)});
  CHECK(two.alive(grq(q(1, 2), q(1, 2))).empty());
  FreeModule f00sq(2, {gr(0, 0), gr(0, 0)});
  CHECK(f00sq.alive(gr(0, 0)) == std::vector<std::size_t>{0, 1});
}

TEST_CASE("admissibility is enforced at construction") {
  Field Q = Field::rationals();
  FreeModule src(2, {gr(0, 0)});
  FreeModule tgt(2, {gr(1, 1)});
  Matrix bad(Q, 1, 1);
  bad.set(0, 0, 1);  // would map F_{(0,0)} -> F_{(1,1)}: (1,1) <= (0,0) fails
  CHECK_THROWS(GradedMatrix(src, tgt, bad));
  Matrix zero(Q, 1, 1);
  CHECK_NOTHROW(GradedMatrix(src, tgt, zero));
}

TEST_CASE("compose golden values") {
  Field Q = Field::rationals();
  // The box resolution differentials compose to zero: (1 1) o (1,-1)^T = 0.
  FreeModule fee(2, {gr(1, 1)});
  FreeModule mid(2, {gr(1, 0), gr(0, 1)});
  FreeModule f00(2, {gr(0, 0)});
  Matrix d2(Q, 2, 1);
  d2.set(0, 0, 1);
  d2.set(1, 0, -1);
  Matrix d1(Q, 1, 2);
  d1.set(0, 0, 1);
  d1.set(0, 1, 1);
  GradedMatrix a(fee, mid, d2), b(mid, f00, d1);
  CHECK(compose(b, a).entries.is_zero());

  GradedMatrix id = GradedMatrix::identity(Q, mid);
  CHECK(compose(id, a) == a);
  CHECK(compose(b, id) == b);
  CHECK_THROWS(compose(a, b));  // middle mismatch
}

TEST_CASE("smoothing_free golden values") {
  Field Q = Field::rationals();
  FreeModule f00(2, {gr(0, 0)});
  GradedMatrix s = smoothing_free(Q, f00, q(3, 4));
  CHECK(s.source == f00);
  CHECK(s.target == f00.shifted(q(3, 4)));
  CHECK(s.entries == Matrix::identity(Q, 1));
  CHECK(smoothing_free(Q, f00, 0) == GradedMatrix::identity(Q, f00));
  CHECK_THROWS(smoothing_free(Q, f00, q(-1, 2)));

  // s_{eps'}^{F[eps]} o s_eps^F = s_{eps+eps'}^F
  FreeModule f(2, {gr(0, 0), gr(1, 2)});
  mpq_class e1(1, 3), e2(3, 5);
  CHECK(compose(smoothing_free(Q, f.shifted(e1), e2), smoothing_free(Q, f, e1)) ==
        smoothing_free(Q, f, e1 + e2));
}

TEST_CASE("admissibility preserved under composition and shift") {
  Rng rng(11);
  Field F2 = Field::gf(2);
  int composed = 0;
  for (int trial = 0; trial < 200 && composed < 40; ++trial) {
    GradedMatrix a = random_graded_matrix(rng, F2);
    GradedMatrix b = random_graded_matrix(rng, F2);
    mpq_class eps = q(rng.pick(-4, 4), 2);
    CHECK(is_admissible(a.target.shifted(eps), a.source.shifted(eps), a.shifted(eps).entries));
    if (b.source == a.target) {
      GradedMatrix c = compose(b, a);
      CHECK(is_admissible(c.target, c.source, c.entries));
      ++composed;
    }
  }
}

TEST_CASE("shift commutes with composition") {
  Rng rng(13);
  Field Q = Field::rationals();
  for (int trial = 0; trial < 40; ++trial) {
    GradedMatrix a = random_graded_matrix(rng, Q);
    // Build a composable partner by reusing a.target as source.
    std::vector<Grade> tg;
    for (long i = 0; i < rng.pick(0, 3); ++i) tg.push_back(gr(rng.pick(-1, 1), rng.pick(-1, 1)));
    FreeModule tgt(2, tg);
    Matrix m(Q, tgt.rank(), a.target.rank());
    for (std::size_t i = 0; i < tgt.rank(); ++i)
      for (std::size_t j = 0; j < a.target.rank(); ++j)
        if (leq(tgt.gens[i], a.target.gens[j])) m.set(i, j, rng.scalar(Q));
    GradedMatrix b(a.target, tgt, std::move(m));
    mpq_class eps = q(rng.pick(-4, 4), 4);
    CHECK(compose(b, a).shifted(eps) == compose(b.shifted(eps), a.shifted(eps)));
  }
}

TEST_CASE("evaluation of a graded matrix is natural") {
  // Evaluating at s then including into t equals including then evaluating:
  // entries against alive generators are stable as the alive set grows.
  Rng rng(19);
  Field Q = Field::rationals();
  for (int trial = 0; trial < 30; ++trial) {
    GradedMatrix a = random_graded_matrix(rng, Q);
    if (a.source.rank() == 0 || a.target.rank() == 0) continue;
    std::vector<Grade> grades = a.source.gens;
    grades.insert(grades.end(), a.target.gens.begin(), a.target.gens.end());
    Grid grid = critical_grid(grades, {});
    auto pts = grid.points();
    for (const Grade& s : pts)
      for (const Grade& t : pts) {
        if (!leq(s, t)) continue;
        auto rows_s = a.target.alive(s);
        auto cols_s = a.source.alive(s);
        Matrix at_s = a.evaluate(s);
        Matrix at_t = a.evaluate(t);
        auto rows_t = a.target.alive(t);
        auto cols_t = a.source.alive(t);
        // positions of s-alive generators inside the t-alive lists
        for (std::size_t i = 0; i < rows_s.size(); ++i)
          for (std::size_t j = 0; j < cols_s.size(); ++j) {
            std::size_t ti =
                std::find(rows_t.begin(), rows_t.end(), rows_s[i]) - rows_t.begin();
            std::size_t tj =
                std::find(cols_t.begin(), cols_t.end(), cols_s[j]) - cols_t.begin();
            CHECK(at_s.at(i, j) == at_t.at(ti, tj));
          }
        // a column alive at s maps into rows alive at s only
        for (std::size_t i = 0; i < rows_t.size(); ++i) {
          bool row_alive_at_s = std::find(rows_s.begin(), rows_s.end(), rows_t[i]) != rows_s.end();
          if (row_alive_at_s) continue;
          for (std::size_t j = 0; j < cols_s.size(); ++j) {
            std::size_t tj =
                std::find(cols_t.begin(), cols_t.end(), cols_s[j]) - cols_t.begin();
            CHECK(at_t.at(i, tj) == 0);
          }
        }
      }
  }
}
