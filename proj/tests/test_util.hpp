#pragma once

#include <random>

#include "persres/ingest.hpp"
#include "persres/interleave.hpp"

namespace persres::testing {

inline Grade gr(long a, long b) { return Grade({mpq_class(a), mpq_class(b)}); }
inline Grade grq(const mpq_class& a, const mpq_class& b) { return Grade({a, b}); }
inline mpq_class q(long num, long den = 1) {
  mpq_class v(num, den);
  v.canonicalize();
  return v;
}

// The running example pair: M = k on the positive quadrant, N_eps = M plus a
// box summand dying at (eps,0) and (0,eps). Generators ordered (free, box).
inline Presentation make_M(Field f) {
  return Presentation::free_module(f, FreeModule(2, {gr(0, 0)}));
}

inline Presentation make_N(Field f, const mpq_class& eps = mpq_class(1)) {
  FreeModule gens(2, {gr(0, 0), gr(0, 0)});
  FreeModule rels(2, {grq(eps, 0), grq(0, eps)});
  Matrix m(f, 2, 2);
  m.set(1, 0, 1);
  m.set(1, 1, 1);
  return Presentation(GradedMatrix(rels, gens, std::move(m)));
}

// The half-open box k_[0,eps)^2 presented as coker((1 1)).
inline Presentation make_box(Field f, const mpq_class& eps = mpq_class(1)) {
  FreeModule gens(2, {gr(0, 0)});
  FreeModule rels(2, {grq(eps, 0), grq(0, eps)});
  Matrix m(f, 1, 2);
  m.set(0, 0, 1);
  m.set(0, 1, 1);
  return Presentation(GradedMatrix(rels, gens, std::move(m)));
}

// The complex C_eps resolving the box, signs fixed so d o d = 0.
inline FreeChainComplex make_C(Field f, const mpq_class& eps = mpq_class(1)) {
  FreeChainComplex c(2, f);
  c.set_term(-2, FreeModule(2, {grq(eps, eps)}));
  c.set_term(-1, FreeModule(2, {grq(eps, 0), grq(0, eps)}));
  c.set_term(0, FreeModule(2, {gr(0, 0)}));
  Matrix d2(f, 2, 1);
  d2.set(0, 0, 1);
  d2.set(1, 0, -1);
  c.set_diff(-2, GradedMatrix(c.term(-2), c.term(-1), std::move(d2)));
  Matrix d1(f, 1, 2);
  d1.set(0, 0, 1);
  d1.set(0, 1, 1);
  c.set_diff(-1, GradedMatrix(c.term(-1), c.term(0), std::move(d1)));
  return c;
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : rng_(seed) {}
  long pick(long lo, long hi) { return lo + static_cast<long>(rng_() % (hi - lo + 1)); }
  mpq_class scalar(const Field& f, long span = 3) {
    if (f.is_rational()) return mpq_class(pick(-span, span));
    return f.from_long(pick(0, static_cast<long>(f.p) - 1));
  }

 private:
  std::mt19937_64 rng_;
};

// Random finitely presented module over the grid {0..grid_max}^2 with small
// generator/relation counts, admissible by construction.
inline Presentation random_presentation(Rng& rng, Field f, long grid_max = 2, long max_gens = 2,
                                        long max_rels = 2) {
  long ngens = rng.pick(1, max_gens);
  std::vector<Grade> gens;
  for (long i = 0; i < ngens; ++i) gens.push_back(gr(rng.pick(0, grid_max), rng.pick(0, grid_max)));
  FreeModule gmod(2, gens);

  long nrels = rng.pick(0, max_rels);
  std::vector<Grade> rel_grades;
  std::vector<Vec> cols;
  for (long r = 0; r < nrels; ++r) {
    Grade b = gr(rng.pick(0, grid_max), rng.pick(0, grid_max));
    Vec col(gens.size(), mpq_class(0));
    bool nonzero = false;
    for (std::size_t g = 0; g < gens.size(); ++g) {
      if (!leq(gens[g], b)) continue;
      mpq_class c = rng.scalar(f);
      col[g] = f.normalize(c);
      nonzero = nonzero || !f.is_zero(col[g]);
    }
    if (!nonzero) continue;
    rel_grades.push_back(b);
    cols.push_back(std::move(col));
  }
  FreeModule rmod(2, rel_grades);
  return Presentation(GradedMatrix(rmod, gmod, Matrix::from_cols(f, gmod.rank(), cols)));
}

// Random admissible graded matrix between random free modules.
inline GradedMatrix random_graded_matrix(Rng& rng, Field f, long grid_max = 2, long max_rank = 3) {
  long srank = rng.pick(0, max_rank);
  long trank = rng.pick(0, max_rank);
  std::vector<Grade> sg, tg;
  for (long i = 0; i < srank; ++i) sg.push_back(gr(rng.pick(0, grid_max), rng.pick(0, grid_max)));
  for (long i = 0; i < trank; ++i) tg.push_back(gr(rng.pick(0, grid_max), rng.pick(0, grid_max)));
  FreeModule src(2, sg), tgt(2, tg);
  Matrix m(f, tgt.rank(), src.rank());
  for (std::size_t i = 0; i < tgt.rank(); ++i)
    for (std::size_t j = 0; j < src.rank(); ++j)
      if (leq(tgt.gens[i], src.gens[j])) m.set(i, j, rng.scalar(f));
  return GradedMatrix(src, tgt, std::move(m));
}

// Random monotone bifiltration on a small template complex.
inline Bifiltration random_bifiltration(Rng& rng, long max_simplices = 12) {
  Bifiltration k;
  long nv = rng.pick(2, 4);
  for (int v = 0; v < nv; ++v) k.simplices.push_back({{v}, gr(rng.pick(0, 2), rng.pick(0, 2))});
  for (int a = 0; a < nv && static_cast<long>(k.simplices.size()) < max_simplices; ++a)
    for (int b = a + 1; b < nv && static_cast<long>(k.simplices.size()) < max_simplices; ++b) {
      if (rng.pick(0, 2) == 0) continue;
      Grade g = join(k.simplices[a].grade, k.simplices[b].grade);
      g = join(g, gr(rng.pick(0, 2), rng.pick(0, 2)));
      k.simplices.push_back({{a, b}, g});
    }
  // Add a triangle when all three edges exist.
  auto has = [&](std::vector<int> v) {
    for (const auto& s : k.simplices)
      if (s.vertices == v) return true;
    return false;
  };
  for (int a = 0; a < nv; ++a)
    for (int b = a + 1; b < nv; ++b)
      for (int c = b + 1; c < nv; ++c)
        if (has({a, b}) && has({a, c}) && has({b, c}) &&
            static_cast<long>(k.simplices.size()) < max_simplices && rng.pick(0, 1) == 0) {
          Grade g = gr(0, 0);
          for (const auto& s : k.simplices)
            if (s.vertices == std::vector<int>{a, b} || s.vertices == std::vector<int>{a, c} ||
                s.vertices == std::vector<int>{b, c})
              g = join(g, s.grade);
          k.simplices.push_back({{a, b, c}, g});
        }
  k.canonicalize_and_validate();
  return k;
}

}  // namespace persres::testing
