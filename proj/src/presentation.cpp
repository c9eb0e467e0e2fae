#include "persres/presentation.hpp"

#include <algorithm>
#include <stdexcept>

namespace persres {

Presentation Presentation::free_module(Field f, const FreeModule& gens) {
  FreeModule no_rels(gens.ambient_dim, {});
  return Presentation(GradedMatrix(no_rels, gens, Matrix(f, gens.rank(), 0)));
}

Presentation Presentation::to_field(Field f) const {
  Matrix m(f, rel.entries.rows(), rel.entries.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) m.set(i, j, f.convert(rel.entries.at(i, j)));
  return Presentation(GradedMatrix(rel.source, rel.target, std::move(m)));
}

std::vector<Grade> Presentation::all_grades() const {
  std::vector<Grade> g = rel.target.gens;
  g.insert(g.end(), rel.source.gens.begin(), rel.source.gens.end());
  return g;
}

Vec Evaluation::reduce(const Vec& full) const {
  Vec v(alive.size());
  for (std::size_t k = 0; k < alive.size(); ++k) v[k] = full[alive[k]];
  v = relation_span.reduce(std::move(v));
  // Quotient coordinates are the residues at non-pivot alive positions.
  Vec coords(basis.size());
  std::size_t b = 0;
  for (std::size_t k = 0; k < alive.size(); ++k) {
    bool pivot = std::find(relation_span.pivots().begin(), relation_span.pivots().end(), k) !=
                 relation_span.pivots().end();
    if (!pivot) coords[b++] = v[k];
  }
  return coords;
}

Evaluation evaluate(const Presentation& p, const Grade& s) {
  if (s.dim() != p.ambient_dim()) throw std::invalid_argument("evaluate: dimension mismatch");
  std::vector<std::size_t> alive = p.generators().alive(s);
  std::vector<std::size_t> alive_rels = p.relations().alive(s);

  EchelonSpan span(p.field(), alive.size());
  for (std::size_t r : alive_rels) {
    Vec v(alive.size());
    for (std::size_t k = 0; k < alive.size(); ++k) v[k] = p.rel.entries.at(alive[k], r);
    span.insert(std::move(v));
  }
  std::vector<std::size_t> basis;
  std::size_t pi = 0;
  for (std::size_t k = 0; k < alive.size(); ++k) {
    if (pi < span.pivots().size() && span.pivots()[pi] == k) {
      ++pi;
      continue;
    }
    basis.push_back(alive[k]);
  }
  return Evaluation{s, std::move(alive), std::move(basis), std::move(span)};
}

Matrix structure_map(const Presentation& p, const Grade& s, const Grade& t) {
  if (!leq(s, t)) throw std::invalid_argument("structure_map: s <= t required");
  Evaluation es = evaluate(p, s);
  Evaluation et = evaluate(p, t);
  Matrix m(p.field(), et.dim(), es.dim());
  const std::size_t width = p.generators().rank();
  for (std::size_t j = 0; j < es.dim(); ++j) {
    Vec full = zero_vec(width);
    full[es.basis[j]] = p.field().normalize(mpq_class(1));
    Vec coords = et.reduce(full);
    for (std::size_t i = 0; i < et.dim(); ++i) m.set(i, j, coords[i]);
  }
  return m;
}

namespace {

// Push quotient coordinates at grade s to quotient coordinates at t >= s.
Vec push_coords(const Presentation& p, const Evaluation& es, const Evaluation& et, const Vec& coords) {
  Vec full = zero_vec(p.generators().rank());
  for (std::size_t j = 0; j < es.basis.size(); ++j) full[es.basis[j]] = coords[j];
  return et.reduce(full);
}

}  // namespace

FPMorphism::FPMorphism(Presentation src, Presentation tgt, std::vector<Vec> images)
    : source(std::move(src)), target(std::move(tgt)), gen_images(std::move(images)) {
  if (source.field() != target.field()) throw std::invalid_argument("FPMorphism: field mismatch");
  if (source.ambient_dim() != target.ambient_dim())
    throw std::invalid_argument("FPMorphism: dimension mismatch");
  if (gen_images.size() != source.generators().rank())
    throw std::invalid_argument("FPMorphism: one image per generator required");
  for (std::size_t g = 0; g < gen_images.size(); ++g) {
    Evaluation ev = evaluate(target, source.generators().gens[g]);
    if (gen_images[g].size() != ev.dim())
      throw std::invalid_argument("FPMorphism: image length mismatch");
  }
}

bool FPMorphism::is_well_defined() const {
  const FreeModule& rels = source.relations();
  for (std::size_t r = 0; r < rels.rank(); ++r) {
    const Grade& b = rels.gens[r];
    Evaluation eb = evaluate(target, b);
    Vec acc = zero_vec(eb.dim());
    for (std::size_t g = 0; g < source.generators().rank(); ++g) {
      const mpq_class& c = source.rel.entries.at(g, r);
      if (field().is_zero(c)) continue;
      Evaluation eg = evaluate(target, source.generators().gens[g]);
      Vec pushed = push_coords(target, eg, eb, gen_images[g]);
      for (std::size_t i = 0; i < acc.size(); ++i)
        acc[i] = field().add(acc[i], field().mul(c, pushed[i]));
    }
    if (!vec_is_zero(acc)) return false;
  }
  return true;
}

Matrix FPMorphism::evaluate_at(const Grade& s) const {
  Evaluation es = evaluate(source, s);
  Evaluation et = evaluate(target, s);
  Matrix m(field(), et.dim(), es.dim());
  for (std::size_t j = 0; j < es.dim(); ++j) {
    std::size_t g = es.basis[j];  // basis element j is the class of generator g
    Evaluation eg = evaluate(target, source.generators().gens[g]);
    Vec pushed = push_coords(target, eg, et, gen_images[g]);
    for (std::size_t i = 0; i < et.dim(); ++i) m.set(i, j, pushed[i]);
  }
  return m;
}

FPMorphism FPMorphism::shifted(const mpq_class& eps) const {
  return FPMorphism(source.shifted(eps), target.shifted(eps), gen_images);
}

FPMorphism FPMorphism::identity(const Presentation& p) {
  std::vector<Vec> images;
  for (std::size_t g = 0; g < p.generators().rank(); ++g) {
    Evaluation ev = evaluate(p, p.generators().gens[g]);
    Vec full = zero_vec(p.generators().rank());
    full[g] = p.field().normalize(mpq_class(1));
    images.push_back(ev.reduce(full));
  }
  return FPMorphism(p, p, std::move(images));
}

FPMorphism FPMorphism::zero(const Presentation& src, const Presentation& tgt) {
  std::vector<Vec> images;
  for (std::size_t g = 0; g < src.generators().rank(); ++g)
    images.push_back(zero_vec(evaluate(tgt, src.generators().gens[g]).dim()));
  return FPMorphism(src, tgt, std::move(images));
}

FPMorphism compose(const FPMorphism& g, const FPMorphism& f) {
  if (!(g.source == f.target)) throw std::invalid_argument("compose: middle presentation mismatch");
  std::vector<Vec> images;
  for (std::size_t i = 0; i < f.source.generators().rank(); ++i) {
    const Grade& a = f.source.generators().gens[i];
    Matrix gm = g.evaluate_at(a);
    images.push_back(matvec(gm, f.gen_images[i]));
  }
  return FPMorphism(f.source, g.target, std::move(images));
}

FPMorphism add(const FPMorphism& a, const FPMorphism& b) {
  if (!(a.source == b.source) || !(a.target == b.target))
    throw std::invalid_argument("add: presentation mismatch");
  std::vector<Vec> images = a.gen_images;
  for (std::size_t g = 0; g < images.size(); ++g)
    for (std::size_t i = 0; i < images[g].size(); ++i)
      images[g][i] = a.field().add(images[g][i], b.gen_images[g][i]);
  return FPMorphism(a.source, a.target, std::move(images));
}

FPMorphism sub(const FPMorphism& a, const FPMorphism& b) {
  if (!(a.source == b.source) || !(a.target == b.target))
    throw std::invalid_argument("sub: presentation mismatch");
  std::vector<Vec> images = a.gen_images;
  for (std::size_t g = 0; g < images.size(); ++g)
    for (std::size_t i = 0; i < images[g].size(); ++i)
      images[g][i] = a.field().sub(images[g][i], b.gen_images[g][i]);
  return FPMorphism(a.source, a.target, std::move(images));
}

FPMorphism smoothing_fp(const Presentation& p, const mpq_class& eps) {
  if (eps < 0) throw std::invalid_argument("smoothing_fp: negative epsilon");
  Presentation shifted = p.shifted(eps);
  std::vector<Vec> images;
  for (std::size_t g = 0; g < p.generators().rank(); ++g) {
    const Grade& a = p.generators().gens[g];
    // evaluate(P[eps], a) = evaluate(P, a + eps*1)
    Evaluation ev = evaluate(shifted, a);
    Vec full = zero_vec(p.generators().rank());
    full[g] = p.field().normalize(mpq_class(1));
    images.push_back(ev.reduce(full));
  }
  return FPMorphism(p, std::move(shifted), std::move(images));
}

Presentation shift_presentation(const Presentation& p, const mpq_class& eps) { return p.shifted(eps); }

std::vector<FPMorphism> hom_space(const Presentation& p, const Presentation& q) {
  if (p.field() != q.field()) throw std::invalid_argument("hom_space: field mismatch");
  if (p.ambient_dim() != q.ambient_dim()) throw std::invalid_argument("hom_space: dimension mismatch");
  const Field& f = p.field();
  const std::size_t ngens = p.generators().rank();

  std::vector<Evaluation> gen_evals;
  std::vector<std::size_t> offsets(ngens + 1, 0);
  for (std::size_t g = 0; g < ngens; ++g) {
    gen_evals.push_back(evaluate(q, p.generators().gens[g]));
    offsets[g + 1] = offsets[g] + gen_evals.back().dim();
  }
  const std::size_t unknowns = offsets[ngens];

  std::vector<Vec> rows;
  const FreeModule& rels = p.relations();
  for (std::size_t r = 0; r < rels.rank(); ++r) {
    const Grade& b = rels.gens[r];
    Evaluation eb = evaluate(q, b);
    std::vector<Vec> block_rows(eb.dim(), zero_vec(unknowns));
    for (std::size_t g = 0; g < ngens; ++g) {
      const mpq_class& c = p.rel.entries.at(g, r);
      if (f.is_zero(c)) continue;
      // Push matrix from coordinates at gen grade to coordinates at b.
      for (std::size_t j = 0; j < gen_evals[g].dim(); ++j) {
        Vec unit = zero_vec(gen_evals[g].dim());
        unit[j] = f.normalize(mpq_class(1));
        Vec pushed = push_coords(q, gen_evals[g], eb, unit);
        for (std::size_t i = 0; i < eb.dim(); ++i)
          block_rows[i][offsets[g] + j] = f.add(block_rows[i][offsets[g] + j], f.mul(c, pushed[i]));
      }
    }
    for (auto& row : block_rows) rows.push_back(std::move(row));
  }

  Matrix constraints = Matrix::from_rows(f, unknowns, rows);
  std::vector<Vec> basis = kernel_basis(constraints);
  std::vector<FPMorphism> result;
  for (const Vec& v : basis) {
    std::vector<Vec> images;
    for (std::size_t g = 0; g < ngens; ++g)
      images.emplace_back(v.begin() + offsets[g], v.begin() + offsets[g + 1]);
    result.emplace_back(p, q, std::move(images));
  }
  return result;
}

std::vector<std::pair<Grade, Vec>> sweep_minimal_generators(
    Field f, const FreeModule& ambient, const Grid& grid,
    const std::function<std::vector<Vec>(const Grade&, const std::vector<std::size_t>&)>& subspace_at) {
  std::vector<std::pair<Grade, Vec>> found;
  const std::size_t width = ambient.rank();
  // New generators are stored monic (first nonzero coordinate scaled to 1) so
  // repeated sweeps reproduce themselves exactly.
  auto monic = [&](Vec v) {
    for (const auto& c : v)
      if (!f.is_zero(c)) {
        mpq_class inv = f.inv(c);
        for (auto& x : v) x = f.mul(x, inv);
        break;
      }
    return v;
  };
  for (const Grade& s : grid.points()) {
    std::vector<std::size_t> alive = ambient.alive(s);
    std::vector<Vec> space = subspace_at(s, alive);
    if (space.empty()) continue;
    EchelonSpan inherited(f, width);
    for (const auto& [g, v] : found)
      if (leq(g, s)) inherited.insert(v);
    for (const Vec& v : space) {
      Vec m = monic(v);
      if (inherited.insert(m)) found.emplace_back(s, std::move(m));
    }
  }
  return found;
}

std::pair<FreeModule, GradedMatrix> kernel_presentation(const GradedMatrix& phi) {
  const Field& f = phi.field();
  const FreeModule& src = phi.source;
  if (src.rank() == 0) {
    FreeModule empty(src.ambient_dim, {});
    return {empty, GradedMatrix::zero(f, empty, src)};
  }
  Grid grid = critical_grid(src.gens, {});
  auto kernel_at = [&](const Grade&, const std::vector<std::size_t>& alive) {
    std::vector<Vec> vecs;
    if (alive.empty()) return vecs;
    Matrix m = phi.entries.cols_selected(alive);
    for (const Vec& k : kernel_basis(m)) {
      Vec full = zero_vec(src.rank());
      for (std::size_t j = 0; j < alive.size(); ++j) full[alive[j]] = k[j];
      vecs.push_back(std::move(full));
    }
    return vecs;
  };
  auto gens = sweep_minimal_generators(f, src, grid, kernel_at);
  std::vector<Grade> grades;
  std::vector<Vec> cols;
  for (auto& [g, v] : gens) {
    grades.push_back(g);
    cols.push_back(v);
  }
  FreeModule k(src.ambient_dim, std::move(grades));
  GradedMatrix incl(k, src, Matrix::from_cols(f, src.rank(), cols));
  return {std::move(k), std::move(incl)};
}

Minimized minimize_full(const Presentation& p) {
  const Field& f = p.field();
  const std::size_t n = p.ambient_dim();
  const std::size_t width = p.generators().rank();

  if (width == 0) {
    FreeModule empty(n, {});
    Presentation minimal = Presentation::free_module(f, empty);
    FPMorphism fwd(minimal, p, {});
    FPMorphism bwd(p, minimal, {});
    return Minimized{std::move(minimal), std::move(fwd), std::move(bwd)};
  }

  Grid grid = critical_grid(p.all_grades(), {});

  auto relation_span_at = [&](const Grade& s) {
    EchelonSpan span(f, width);
    for (std::size_t r : p.relations().alive(s)) {
      Vec col = zero_vec(width);
      for (std::size_t i = 0; i < width; ++i) col[i] = p.rel.entries.at(i, r);
      span.insert(std::move(col));
    }
    return span;
  };

  // Phase 1: minimal generators of coker(rel). At each grid point, unit
  // generator vectors outside span(relations + inherited generators) are the
  // new generators; the completion by units keeps already-minimal inputs
  // fixed.
  std::vector<std::pair<Grade, Vec>> gen_list;
  for (const Grade& s : grid.points()) {
    std::vector<std::size_t> alive = p.generators().alive(s);
    if (alive.empty()) continue;
    EchelonSpan span = relation_span_at(s);
    for (const auto& [g, w] : gen_list)
      if (leq(g, s)) span.insert(w);
    for (std::size_t idx : alive) {
      Vec unit = zero_vec(width);
      unit[idx] = f.normalize(mpq_class(1));
      if (span.insert(unit)) gen_list.emplace_back(s, std::move(unit));
    }
  }

  std::vector<Grade> min_grades;
  std::vector<Vec> gen_vectors;
  for (auto& [g, w] : gen_list) {
    min_grades.push_back(g);
    gen_vectors.push_back(w);
  }
  FreeModule min_gens(n, min_grades);

  // Phase 2: minimal generators of the kernel of F(min_gens) ->> coker(rel):
  // x is in the kernel at s iff sum_g x_g w_g lies in the relation span.
  Grid rel_grid = grid;
  auto kernel_at = [&](const Grade& s, const std::vector<std::size_t>& alive) {
    std::vector<Vec> vecs;
    if (alive.empty()) return vecs;
    std::vector<std::size_t> alive_rels = p.relations().alive(s);
    // Columns: [w_g for alive g | relation columns alive at s].
    std::vector<Vec> cols;
    for (std::size_t g : alive) cols.push_back(gen_vectors[g]);
    for (std::size_t r : alive_rels) {
      Vec col(width);
      for (std::size_t i = 0; i < width; ++i) col[i] = p.rel.entries.at(i, r);
      cols.push_back(std::move(col));
    }
    Matrix m = Matrix::from_cols(f, width, cols);
    for (const Vec& k : kernel_basis(m)) {
      Vec x = zero_vec(min_gens.rank());
      bool nonzero = false;
      for (std::size_t j = 0; j < alive.size(); ++j) {
        x[alive[j]] = k[j];
        nonzero = nonzero || !f.is_zero(k[j]);
      }
      if (nonzero) vecs.push_back(std::move(x));
    }
    return vecs;
  };
  auto rel_list = sweep_minimal_generators(f, min_gens, rel_grid, kernel_at);

  std::vector<Grade> rel_grades;
  std::vector<Vec> rel_cols;
  for (auto& [g, v] : rel_list) {
    rel_grades.push_back(g);
    rel_cols.push_back(v);
  }
  FreeModule min_rels(n, rel_grades);
  Presentation minimal(
      GradedMatrix(min_rels, min_gens, Matrix::from_cols(f, min_gens.rank(), rel_cols)));

  // to_input: minimal generator g maps to the class of w_g in the input.
  std::vector<Vec> fwd_images;
  for (std::size_t g = 0; g < min_gens.rank(); ++g)
    fwd_images.push_back(evaluate(p, min_gens.gens[g]).reduce(gen_vectors[g]));
  FPMorphism to_input(minimal, p, std::move(fwd_images));

  // from_input: express each input generator class in the minimal module by
  // solving W x = e_g modulo the relation span at the generator's grade.
  std::vector<Vec> bwd_images;
  for (std::size_t g = 0; g < width; ++g) {
    const Grade& a = p.generators().gens[g];
    std::vector<std::size_t> alive_min = min_gens.alive(a);
    std::vector<std::size_t> alive_rels = p.relations().alive(a);
    std::vector<Vec> cols;
    for (std::size_t m : alive_min) cols.push_back(gen_vectors[m]);
    for (std::size_t r : alive_rels) {
      Vec col(width);
      for (std::size_t i = 0; i < width; ++i) col[i] = p.rel.entries.at(i, r);
      cols.push_back(std::move(col));
    }
    Matrix sys = Matrix::from_cols(f, width, cols);
    Vec rhs = zero_vec(width);
    rhs[g] = f.normalize(mpq_class(1));
    auto sol = solve(sys, rhs);
    if (!sol) throw std::logic_error("minimize: generator not reachable from minimal generators");
    Vec x = zero_vec(min_gens.rank());
    for (std::size_t j = 0; j < alive_min.size(); ++j) x[alive_min[j]] = (*sol)[j];
    bwd_images.push_back(evaluate(minimal, a).reduce(x));
  }
  FPMorphism from_input(p, minimal, std::move(bwd_images));

  return Minimized{std::move(minimal), std::move(to_input), std::move(from_input)};
}

Presentation minimize(const Presentation& p) { return minimize_full(p).minimal; }

}  // namespace persres
