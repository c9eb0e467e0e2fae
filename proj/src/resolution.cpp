#include "persres/resolution.hpp"

#include <stdexcept>

namespace persres {

FreeChainComplex minimal_free_resolution(const Presentation& p) {
  const Field& f = p.field();
  Minimized mz = minimize_full(p);
  FreeChainComplex x(p.ambient_dim(), f);
  x.set_term(0, mz.minimal.generators());
  if (mz.minimal.relations().rank() == 0) return x;
  x.set_term(-1, mz.minimal.relations());
  x.set_diff(-1, mz.minimal.rel);

  GradedMatrix cur = mz.minimal.rel;
  int degree = -1;
  const int floor_degree = -static_cast<int>(p.ambient_dim()) - 1;
  while (true) {
    auto [k, incl] = kernel_presentation(cur);
    if (k.rank() == 0) break;
    --degree;
    if (degree < floor_degree)
      throw std::logic_error("minimal_free_resolution: length exceeds the syzygy bound");
    x.set_term(degree, k);
    x.set_diff(degree, incl);
    cur = incl;
  }
  return x;
}

std::map<Grade, std::size_t, GradeLess> betti(const Presentation& p, std::size_t i) {
  FreeChainComplex x = minimal_free_resolution(p);
  return x.term(-static_cast<int>(i)).xi();
}

bool resolution_is_minimal(const FreeChainComplex& x) {
  for (const auto& [j, d] : x.diffs)
    for (std::size_t r = 0; r < d.target.rank(); ++r)
      for (std::size_t c = 0; c < d.source.rank(); ++c)
        if (!x.field.is_zero(d.entries.at(r, c)) && d.target.gens[r] == d.source.gens[c])
          return false;
  return true;
}

namespace {

std::vector<Grade> complex_grades(const FreeChainComplex& x) {
  std::vector<Grade> g;
  for (const auto& [j, m] : x.terms) g.insert(g.end(), m.gens.begin(), m.gens.end());
  return g;
}

}  // namespace

bool verify_resolution(const Presentation& p, const FreeChainComplex& x) {
  if (x.ambient_dim != p.ambient_dim() || !(x.field == p.field())) return false;
  if (!x.validate()) return false;
  if (!x.terms.empty() && x.max_degree() > 0) return false;

  std::vector<Grade> grades = p.all_grades();
  auto xg = complex_grades(x);
  grades.insert(grades.end(), xg.begin(), xg.end());
  if (grades.empty()) return p.generators().rank() == 0;
  Grid grid = critical_grid(grades, {});
  std::vector<Grade> pts = grid.points();

  // Exactness in negative degrees: dim ker d^j(s) == rank d^{j-1}(s).
  for (const Grade& s : pts) {
    for (int j = x.min_degree(); j < 0; ++j) {
      if (x.term(j).rank() == 0) continue;
      Matrix dj = x.diff_or_zero(j).evaluate(s);
      Matrix djm1 = x.diff_or_zero(j - 1).evaluate(s);
      std::size_t alive = x.term(j).alive(s).size();
      if (alive - rank(dj) != rank(djm1)) return false;
    }
  }

  // Degree-0 cokernel versus p: pointwise dimensions and structure-map ranks
  // over all grid pairs s <= t.
  Presentation q(x.has_term(-1) ? x.diff_or_zero(-1)
                                : GradedMatrix::zero(x.field, FreeModule(x.ambient_dim, {}), x.term(0)));
  for (const Grade& s : pts)
    if (evaluate(q, s).dim() != evaluate(p, s).dim()) return false;
  for (std::size_t a = 0; a < pts.size(); ++a)
    for (std::size_t b = 0; b < pts.size(); ++b) {
      if (a == b || !leq(pts[a], pts[b])) continue;
      if (rank(structure_map(q, pts[a], pts[b])) != rank(structure_map(p, pts[a], pts[b])))
        return false;
    }
  return true;
}

namespace {

// Particular solution with the chosen free-variable policy; free_vars_one
// yields a second deterministic lift for coherence checks.
std::optional<Vec> solve_styled(const Matrix& m, const Vec& b, LiftStyle style) {
  if (style == LiftStyle::free_vars_zero) return solve(m, b);
  Matrix aug(m.field(), m.rows(), m.cols() + 1);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) aug.set(i, j, m.at(i, j));
    aug.set(i, m.cols(), b[i]);
  }
  RrefResult r = rref(aug);
  for (std::size_t piv : r.pivots)
    if (piv == m.cols()) return std::nullopt;
  std::vector<bool> is_pivot(m.cols(), false);
  for (std::size_t piv : r.pivots) is_pivot[piv] = true;
  Vec x(m.cols(), mpq_class(0));
  const Field& f = m.field();
  for (std::size_t j = 0; j < m.cols(); ++j)
    if (!is_pivot[j]) x[j] = f.normalize(mpq_class(1));
  for (std::size_t k = 0; k < r.pivots.size(); ++k) {
    mpq_class v = r.reduced.at(k, m.cols());
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (!is_pivot[j]) v = f.sub(v, r.reduced.at(k, j));
    x[r.pivots[k]] = v;
  }
  return x;
}

}  // namespace

ChainMap lift_resolution(const FPMorphism& f, const FreeChainComplex& px,
                         const FreeChainComplex& py, LiftStyle style) {
  const Field& field = f.field();
  Minimized mx = minimize_full(f.source);
  Minimized my = minimize_full(f.target);
  if (!(px.term(0) == mx.minimal.generators()) || !(py.term(0) == my.minimal.generators()))
    throw std::invalid_argument(
        "lift_resolution: resolutions do not match the canonical minimal resolutions");

  ChainMap lift(px, py);

  // Degree 0: map each PX^0 generator class through f and pick a preimage
  // under PY^0 ->> coker modulo the relation image.
  FPMorphism f_min = compose(my.from_input, compose(f, mx.to_input));
  const FreeModule& gx = px.term(0);
  const FreeModule& gy = py.term(0);
  GradedMatrix dy0 = py.diff_or_zero(-1);
  {
    Matrix comp(field, gy.rank(), gx.rank());
    for (std::size_t g = 0; g < gx.rank(); ++g) {
      const Grade& a = gx.gens[g];
      Evaluation ev = evaluate(my.minimal, a);
      // System: [unit columns of alive gens | relation columns alive at a].
      std::vector<std::size_t> alive = gy.alive(a);
      std::vector<std::size_t> alive_rels = py.term(-1).alive(a);
      std::vector<Vec> cols;
      for (std::size_t i : alive) {
        Vec u = zero_vec(gy.rank());
        u[i] = field.normalize(mpq_class(1));
        cols.push_back(std::move(u));
      }
      for (std::size_t r : alive_rels) {
        Vec col(gy.rank());
        for (std::size_t i = 0; i < gy.rank(); ++i) col[i] = dy0.entries.at(i, r);
        cols.push_back(std::move(col));
      }
      // Right-hand side: canonical representative of f_min(gen g) at a.
      Vec rhs = zero_vec(gy.rank());
      for (std::size_t j = 0; j < ev.dim(); ++j) rhs[ev.basis[j]] = f_min.gen_images[g][j];
      auto sol = solve_styled(Matrix::from_cols(field, gy.rank(), cols), rhs, style);
      if (!sol) throw std::invalid_argument("lift_resolution: degree-0 lift inconsistent");
      for (std::size_t j = 0; j < alive.size(); ++j) comp.set(alive[j], g, (*sol)[j]);
    }
    GradedMatrix m0(gx, gy, std::move(comp));
    if (!m0.entries.is_zero()) lift.comps.insert_or_assign(0, std::move(m0));
  }

  // Negative degrees: solve d_Y^{j} y = (previous lift) o d_X^{j} columnwise.
  for (int j = -1; j >= px.min_degree(); --j) {
    const FreeModule& xj = px.term(j);
    const FreeModule& yj = py.term(j);
    if (xj.rank() == 0) break;
    GradedMatrix rhs_map = compose(lift.comp_or_zero(j + 1), px.diff_or_zero(j));
    if (yj.rank() == 0) {
      if (!rhs_map.entries.is_zero())
        throw std::invalid_argument("lift_resolution: target resolution too short");
      continue;
    }
    GradedMatrix dy = py.diff_or_zero(j);
    Matrix comp(field, yj.rank(), xj.rank());
    for (std::size_t g = 0; g < xj.rank(); ++g) {
      const Grade& a = xj.gens[g];
      std::vector<std::size_t> alive = yj.alive(a);
      Matrix sys = dy.entries.cols_selected(alive);
      auto sol = solve_styled(sys, rhs_map.entries.col(g), style);
      if (!sol) throw std::invalid_argument("lift_resolution: inconsistent lift (not a resolution?)");
      for (std::size_t k = 0; k < alive.size(); ++k) comp.set(alive[k], g, (*sol)[k]);
    }
    GradedMatrix mj(xj, yj, std::move(comp));
    if (!mj.entries.is_zero()) lift.comps.insert_or_assign(j, std::move(mj));
  }
  return lift;
}

FPMorphism induced_degree0(const ChainMap& phi, const Presentation& src_p, const Presentation& tgt_p) {
  Minimized mx = minimize_full(src_p);
  Minimized my = minimize_full(tgt_p);
  if (!(phi.source.term(0) == mx.minimal.generators()) ||
      !(phi.target.term(0) == my.minimal.generators()))
    throw std::invalid_argument("induced_degree0: resolutions do not match the presentations");

  GradedMatrix phi0 = phi.comp_or_zero(0);
  std::vector<Vec> images;
  for (std::size_t g = 0; g < mx.minimal.generators().rank(); ++g) {
    const Grade& a = mx.minimal.generators().gens[g];
    images.push_back(evaluate(my.minimal, a).reduce(phi0.entries.col(g)));
  }
  FPMorphism on_min(mx.minimal, my.minimal, std::move(images));
  return compose(my.to_input, compose(on_min, mx.from_input));
}

}  // namespace persres
