#include "persres/interleave.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace persres {

std::string level_name(Level level) {
  switch (level) {
    case Level::module: return "module";
    case Level::homotopy: return "homotopy";
    case Level::derived: return "derived";
  }
  return "module";
}

Level parse_level(const std::string& name) {
  if (name == "module") return Level::module;
  if (name == "homotopy") return Level::homotopy;
  if (name == "derived") return Level::derived;
  throw std::invalid_argument("unknown level: " + name);
}

namespace {

// Odometer over the search field's coefficient vectors, lexicographic with
// the last coordinate fastest. The empty vector enumerates exactly once.
class FieldOdometer {
 public:
  FieldOdometer(Field f, std::size_t dims) : f_(f), digits_(dims, 0), done_(false) {
    if (f.is_rational()) throw std::invalid_argument("search field must be finite");
  }

  bool done() const { return done_; }
  Vec coefficients() const {
    Vec v(digits_.size());
    for (std::size_t i = 0; i < digits_.size(); ++i) v[i] = f_.from_long(static_cast<long>(digits_[i]));
    return v;
  }
  void advance() {
    std::size_t i = digits_.size();
    while (i > 0) {
      --i;
      if (++digits_[i] < f_.p) return;
      digits_[i] = 0;
    }
    done_ = true;
  }

 private:
  Field f_;
  std::vector<unsigned long> digits_;
  bool done_;
};

// p^dims, saturated at limit + 1.
unsigned long long enumeration_space(const Field& f, std::size_t dims, unsigned long long limit) {
  unsigned long long space = 1;
  for (std::size_t i = 0; i < dims; ++i) {
    if (space > limit / f.p) return limit + 1;
    space *= f.p;
  }
  return space;
}

FPMorphism fp_combination(const std::vector<FPMorphism>& basis, const Vec& coeffs,
                          const Presentation& src, const Presentation& tgt) {
  const Field& f = src.field();
  FPMorphism acc = FPMorphism::zero(src, tgt);
  for (std::size_t i = 0; i < basis.size(); ++i) {
    if (f.is_zero(coeffs[i])) continue;
    std::vector<Vec> scaled;
    for (const Vec& img : basis[i].gen_images) scaled.push_back(vec_scale(f, coeffs[i], img));
    acc = add(acc, FPMorphism(src, tgt, std::move(scaled)));
  }
  return acc;
}

ChainMap chain_combination(const std::vector<ChainMap>& basis, const Vec& coeffs,
                           const FreeChainComplex& src, const FreeChainComplex& tgt) {
  const Field& f = src.field;
  ChainMap acc = ChainMap::zero(src, tgt);
  for (std::size_t i = 0; i < basis.size(); ++i) {
    if (f.is_zero(coeffs[i])) continue;
    ChainMap scaled(src, tgt);
    for (const auto& [j, m] : basis[i].comps) {
      Matrix e(f, m.entries.rows(), m.entries.cols());
      for (std::size_t r = 0; r < e.rows(); ++r)
        for (std::size_t c = 0; c < e.cols(); ++c) e.set(r, c, f.mul(coeffs[i], m.entries.at(r, c)));
      scaled.comps.insert_or_assign(j, GradedMatrix(m.source, m.target, std::move(e)));
    }
    acc = add(acc, scaled);
  }
  return acc;
}

}  // namespace

bool verify_module_interleaving(const FPMorphism& f, const FPMorphism& g, const mpq_class& eps) {
  if (eps < 0) throw std::invalid_argument("verify_module_interleaving: negative epsilon");
  const Presentation& m = f.source;
  const Presentation& n = g.source;
  if (!(f.target == n.shifted(eps)) || !(g.target == m.shifted(eps)))
    throw std::invalid_argument("verify_module_interleaving: shape mismatch");
  if (!f.is_well_defined() || !g.is_well_defined()) return false;
  mpq_class two_eps = 2 * eps;
  if (!(compose(g.shifted(eps), f) == smoothing_fp(m, two_eps))) return false;
  if (!(compose(f.shifted(eps), g) == smoothing_fp(n, two_eps))) return false;
  return true;
}

SearchResult search_module_interleaving(const Presentation& m_in, const Presentation& n_in,
                                        const mpq_class& eps, Field search_field,
                                        unsigned long long budget) {
  if (eps < 0) throw std::invalid_argument("search_module_interleaving: negative epsilon");
  if (search_field.is_rational())
    throw std::invalid_argument("search_module_interleaving: search field must be finite");
  const Field& f = search_field;
  Presentation m = m_in.to_field(f);
  Presentation n = n_in.to_field(f);
  Presentation n_eps = n.shifted(eps);
  Presentation m_eps = m.shifted(eps);
  mpq_class two_eps = 2 * eps;

  std::vector<FPMorphism> basis_f = hom_space(m, n_eps);
  std::vector<FPMorphism> basis_g = hom_space(n, m_eps);

  // The hexagon is symmetric, so enumerate whichever hom-space is smaller
  // (2^min instead of 2^max candidates, still exhaustive) and solve the
  // other side linearly.
  if (basis_g.size() < basis_f.size()) {
    SearchResult swapped = search_module_interleaving(n_in, m_in, eps, search_field, budget);
    if (swapped.certificate) std::swap(swapped.certificate->forward, swapped.certificate->backward);
    return swapped;
  }

  FPMorphism s2m = smoothing_fp(m, two_eps);
  FPMorphism s2n = smoothing_fp(n, two_eps);

  // Bilinear composition tables: cond1[i][j] = basis_g[j][eps] o basis_f[i]
  // and cond2[i][j] = basis_f[i][eps] o basis_g[j], computed once per call.
  std::vector<std::vector<FPMorphism>> cond1, cond2;
  for (const FPMorphism& fi : basis_f) {
    std::vector<FPMorphism> row1, row2;
    FPMorphism fi_eps = fi.shifted(eps);
    for (const FPMorphism& gj : basis_g) {
      row1.push_back(compose(gj.shifted(eps), fi));
      row2.push_back(compose(fi_eps, gj));
    }
    cond1.push_back(std::move(row1));
    cond2.push_back(std::move(row2));
  }

  // When the full enumeration cannot fit the budget anyway, only probe a few
  // low-weight candidates before reporting exhaustion.
  unsigned long long limit = budget;
  if (enumeration_space(f, basis_f.size(), budget) > budget)
    limit = std::min<unsigned long long>(budget, 64);

  SearchResult result;
  for (FieldOdometer odo(f, basis_f.size()); !odo.done(); odo.advance()) {
    if (result.candidates_tried >= limit) {
      result.status = SearchStatus::budget_exhausted;
      return result;
    }
    ++result.candidates_tried;
    Vec coeffs = odo.coefficients();

    // Both hexagon conditions are linear in g's hom-space coefficients; the
    // coefficient of mu_j is the candidate-weighted sum over the tables.
    std::vector<Vec> rows;
    Vec rhs;
    auto emit = [&](const std::vector<std::vector<FPMorphism>>& table,
                    const FPMorphism& target_morphism) {
      for (std::size_t gi = 0; gi < target_morphism.gen_images.size(); ++gi)
        for (std::size_t k = 0; k < target_morphism.gen_images[gi].size(); ++k) {
          Vec row = zero_vec(basis_g.size());
          for (std::size_t i = 0; i < basis_f.size(); ++i) {
            if (f.is_zero(coeffs[i])) continue;
            for (std::size_t j = 0; j < basis_g.size(); ++j)
              row[j] = f.add(row[j], f.mul(coeffs[i], table[i][j].gen_images[gi][k]));
          }
          rows.push_back(std::move(row));
          rhs.push_back(target_morphism.gen_images[gi][k]);
        }
    };
    emit(cond1, s2m);
    emit(cond2, s2n);
    auto sol = solve(Matrix::from_rows(f, basis_g.size(), rows), rhs);
    if (!sol) continue;

    FPMorphism fw = fp_combination(basis_f, coeffs, m, n_eps);
    FPMorphism bw = fp_combination(basis_g, *sol, n, m_eps);
    InterleavingCertificate cert;
    cert.level = Level::module;
    cert.epsilon = eps;
    cert.field = f;
    cert.forward = fw;
    cert.backward = bw;
    result.status = SearchStatus::found;
    result.certificate = std::move(cert);
    return result;
  }
  result.status = SearchStatus::none;
  return result;
}

std::optional<std::pair<Homotopy, Homotopy>> verify_homotopy_interleaving(const ChainMap& phi,
                                                                          const ChainMap& psi,
                                                                          const mpq_class& eps) {
  if (eps < 0) throw std::invalid_argument("verify_homotopy_interleaving: negative epsilon");
  if (!phi.is_valid() || !psi.is_valid()) return std::nullopt;
  const FreeChainComplex& x = phi.source;
  const FreeChainComplex& y = psi.source;
  if (!(phi.target == y.shifted(eps)) || !(psi.target == x.shifted(eps)))
    throw std::invalid_argument("verify_homotopy_interleaving: shape mismatch");
  mpq_class two_eps = 2 * eps;
  ChainMap delta_x = sub(compose(psi.shifted(eps), phi), smoothing_chain_map(x, two_eps));
  auto hx = is_nullhomotopic(delta_x);
  if (!hx) return std::nullopt;
  ChainMap delta_y = sub(compose(phi.shifted(eps), psi), smoothing_chain_map(y, two_eps));
  auto hy = is_nullhomotopic(delta_y);
  if (!hy) return std::nullopt;
  return std::make_pair(std::move(*hx), std::move(*hy));
}

namespace {

struct ChainUnknowns {
  // Admissible entry positions, indexed (degree, row, col) -> column index.
  std::map<int, std::map<std::pair<std::size_t, std::size_t>, std::size_t>> index;
  std::size_t count = 0;

  void collect(const FreeChainComplex& src, const FreeChainComplex& tgt, int tgt_degree_offset) {
    int lo = std::min(src.min_degree(), tgt.min_degree());
    int hi = std::max(src.max_degree(), tgt.max_degree()) + 1;
    for (int i = lo; i <= hi; ++i) {
      const FreeModule& s = src.term(i);
      const FreeModule& t = tgt.term(i + tgt_degree_offset);
      for (std::size_t r = 0; r < t.rank(); ++r)
        for (std::size_t c = 0; c < s.rank(); ++c)
          if (leq(t.gens[r], s.gens[c])) index[i][{r, c}] = count++;
    }
  }
  std::optional<std::size_t> at(int i, std::size_t r, std::size_t c) const {
    auto di = index.find(i);
    if (di == index.end()) return std::nullopt;
    auto it = di->second.find({r, c});
    if (it == di->second.end()) return std::nullopt;
    return it->second;
  }
};

}  // namespace

SearchResult search_homotopy_interleaving(const FreeChainComplex& x, const FreeChainComplex& y,
                                          const mpq_class& eps, Field search_field,
                                          unsigned long long budget) {
  if (eps < 0) throw std::invalid_argument("search_homotopy_interleaving: negative epsilon");
  if (search_field.is_rational())
    throw std::invalid_argument("search_homotopy_interleaving: search field must be finite");
  const Field& f = search_field;
  if (!(x.field == f) || !(y.field == f))
    throw std::invalid_argument("search_homotopy_interleaving: complexes must be over the search field");
  mpq_class two_eps = 2 * eps;
  FreeChainComplex y_eps = y.shifted(eps);
  FreeChainComplex x_eps = x.shifted(eps);
  FreeChainComplex x_2eps = x.shifted(two_eps);
  FreeChainComplex y_2eps = y.shifted(two_eps);
  ChainMap s2x = smoothing_chain_map(x, two_eps);
  ChainMap s2y = smoothing_chain_map(y, two_eps);

  std::vector<ChainMap> basis_phi = chain_map_space(x, y_eps);

  // Symmetric problem: enumerate the smaller chain-map space.
  if (chain_map_space(y, x_eps).size() < basis_phi.size()) {
    SearchResult swapped = search_homotopy_interleaving(y, x, eps, search_field, budget);
    if (swapped.certificate) {
      std::swap(swapped.certificate->chain_forward, swapped.certificate->chain_backward);
      std::swap(swapped.certificate->homotopy_forward, swapped.certificate->homotopy_backward);
    }
    return swapped;
  }

  // Unknowns: psi (chain map Y -> X[eps]), h (X -> X[2eps] degree -1),
  // h' (Y -> Y[2eps] degree -1). The offsets split one flat column space.
  ChainUnknowns psi_u, h_u, hp_u;
  psi_u.collect(y, x_eps, 0);
  std::size_t psi_count = psi_u.count;
  h_u.collect(x, x_2eps, -1);
  std::size_t h_count = h_u.count;
  hp_u.collect(y, y_2eps, -1);
  std::size_t total = psi_count + h_count + hp_u.count;

  int lo = std::min(x.min_degree(), y.min_degree());
  int hi = std::max(x.max_degree(), y.max_degree());

  unsigned long long limit = budget;
  if (enumeration_space(f, basis_phi.size(), budget) > budget)
    limit = std::min<unsigned long long>(budget, 8);

  SearchResult result;
  for (FieldOdometer odo(f, basis_phi.size()); !odo.done(); odo.advance()) {
    if (result.candidates_tried >= limit) {
      result.status = SearchStatus::budget_exhausted;
      return result;
    }
    ++result.candidates_tried;
    ChainMap phi = chain_combination(basis_phi, odo.coefficients(), x, y_eps);

    std::vector<Vec> rows;
    Vec rhs;

    // (a) psi is a chain map: d_{X[eps]} psi - psi d_Y = 0.
    for (int i = lo; i <= hi; ++i) {
      const FreeModule& yi = y.term(i);
      const FreeModule& xi1 = x_eps.term(i + 1);
      if (yi.rank() == 0 || xi1.rank() == 0) continue;
      GradedMatrix dxe = x_eps.diff_or_zero(i);
      GradedMatrix dy = y.diff_or_zero(i);
      for (std::size_t r = 0; r < xi1.rank(); ++r)
        for (std::size_t c = 0; c < yi.rank(); ++c) {
          Vec row = zero_vec(total);
          bool any = false;
          for (std::size_t k = 0; k < x_eps.term(i).rank(); ++k) {
            if (f.is_zero(dxe.entries.at(r, k))) continue;
            if (auto u = psi_u.at(i, k, c)) {
              row[*u] = f.add(row[*u], dxe.entries.at(r, k));
              any = true;
            }
          }
          for (std::size_t m = 0; m < y.term(i + 1).rank(); ++m) {
            if (f.is_zero(dy.entries.at(m, c))) continue;
            if (auto u = psi_u.at(i + 1, r, m)) {
              row[*u] = f.sub(row[*u], dy.entries.at(m, c));
              any = true;
            }
          }
          if (any) {
            rows.push_back(std::move(row));
            rhs.push_back(mpq_class(0));
          }
        }
    }

    // (b) psi[eps] o phi - s_2eps^X = d h + h d, entrywise per degree.
    for (int i = lo; i <= hi; ++i) {
      const FreeModule& xi = x.term(i);
      const FreeModule& x2i = x_2eps.term(i);
      if (xi.rank() == 0 || x2i.rank() == 0) continue;
      GradedMatrix phii = phi.comp_or_zero(i);
      GradedMatrix dx2 = x_2eps.diff_or_zero(i - 1);
      GradedMatrix dx = x.diff_or_zero(i);
      GradedMatrix s2 = s2x.comp_or_zero(i);
      for (std::size_t r = 0; r < x2i.rank(); ++r)
        for (std::size_t c = 0; c < xi.rank(); ++c) {
          Vec row = zero_vec(total);
          // sum_k psi^i[r,k] phi^i[k,c]   (psi[eps] has psi's entries)
          for (std::size_t k = 0; k < y_eps.term(i).rank(); ++k) {
            if (f.is_zero(phii.entries.at(k, c))) continue;
            if (auto u = psi_u.at(i, r, k)) row[*u] = f.add(row[*u], phii.entries.at(k, c));
          }
          // - d_{X[2eps]}^{i-1} h^i
          for (std::size_t k = 0; k < x_2eps.term(i - 1).rank(); ++k) {
            if (f.is_zero(dx2.entries.at(r, k))) continue;
            if (auto u = h_u.at(i, k, c)) row[psi_count + *u] = f.sub(row[psi_count + *u], dx2.entries.at(r, k));
          }
          // - h^{i+1} d_X^i
          for (std::size_t m = 0; m < x.term(i + 1).rank(); ++m) {
            if (f.is_zero(dx.entries.at(m, c))) continue;
            if (auto u = h_u.at(i + 1, r, m)) row[psi_count + *u] = f.sub(row[psi_count + *u], dx.entries.at(m, c));
          }
          rows.push_back(std::move(row));
          rhs.push_back(s2.entries.at(r, c));
        }
    }

    // (c) phi[eps] o psi - s_2eps^Y = d h' + h' d.
    for (int i = lo; i <= hi; ++i) {
      const FreeModule& yi = y.term(i);
      const FreeModule& y2i = y_2eps.term(i);
      if (yi.rank() == 0 || y2i.rank() == 0) continue;
      GradedMatrix phii = phi.comp_or_zero(i);
      GradedMatrix dy2 = y_2eps.diff_or_zero(i - 1);
      GradedMatrix dy = y.diff_or_zero(i);
      GradedMatrix s2 = s2y.comp_or_zero(i);
      for (std::size_t r = 0; r < y2i.rank(); ++r)
        for (std::size_t c = 0; c < yi.rank(); ++c) {
          Vec row = zero_vec(total);
          // sum_k phi[eps]^i[r,k] psi^i[k,c]; phi[eps] has phi's entries
          for (std::size_t k = 0; k < x_eps.term(i).rank(); ++k) {
            if (f.is_zero(phii.entries.at(r, k))) continue;
            if (auto u = psi_u.at(i, k, c)) row[*u] = f.add(row[*u], phii.entries.at(r, k));
          }
          for (std::size_t k = 0; k < y_2eps.term(i - 1).rank(); ++k) {
            if (f.is_zero(dy2.entries.at(r, k))) continue;
            if (auto u = hp_u.at(i, k, c))
              row[psi_count + h_count + *u] = f.sub(row[psi_count + h_count + *u], dy2.entries.at(r, k));
          }
          for (std::size_t m = 0; m < y.term(i + 1).rank(); ++m) {
            if (f.is_zero(dy.entries.at(m, c))) continue;
            if (auto u = hp_u.at(i + 1, r, m))
              row[psi_count + h_count + *u] = f.sub(row[psi_count + h_count + *u], dy.entries.at(m, c));
          }
          rows.push_back(std::move(row));
          rhs.push_back(s2.entries.at(r, c));
        }
    }

    auto sol = solve(Matrix::from_rows(f, total, rows), rhs);
    if (!sol) continue;

    // Materialize psi, h, h' from the solution vector.
    ChainMap psi(y, x_eps);
    for (int i = lo; i <= hi; ++i) {
      const FreeModule& src = y.term(i);
      const FreeModule& tgt = x_eps.term(i);
      if (src.rank() == 0 || tgt.rank() == 0) continue;
      Matrix m(f, tgt.rank(), src.rank());
      bool nonzero = false;
      for (std::size_t r = 0; r < tgt.rank(); ++r)
        for (std::size_t c = 0; c < src.rank(); ++c)
          if (auto u = psi_u.at(i, r, c)) {
            m.set(r, c, (*sol)[*u]);
            nonzero = nonzero || !f.is_zero((*sol)[*u]);
          }
      if (nonzero) psi.comps.insert_or_assign(i, GradedMatrix(src, tgt, std::move(m)));
    }
    auto build_homotopy = [&](const ChainUnknowns& table, std::size_t offset,
                              const FreeChainComplex& src, const FreeChainComplex& tgt) {
      Homotopy h;
      for (int i = lo; i <= hi + 1; ++i) {
        const FreeModule& s = src.term(i);
        const FreeModule& t = tgt.term(i - 1);
        if (s.rank() == 0 || t.rank() == 0) continue;
        Matrix m(f, t.rank(), s.rank());
        bool nonzero = false;
        for (std::size_t r = 0; r < t.rank(); ++r)
          for (std::size_t c = 0; c < s.rank(); ++c)
            if (auto u = table.at(i, r, c)) {
              m.set(r, c, (*sol)[offset + *u]);
              nonzero = nonzero || !f.is_zero((*sol)[offset + *u]);
            }
        if (nonzero) h.comps.insert_or_assign(i, GradedMatrix(s, t, std::move(m)));
      }
      return h;
    };

    InterleavingCertificate cert;
    cert.level = Level::homotopy;
    cert.epsilon = eps;
    cert.field = f;
    cert.chain_forward = phi;
    cert.chain_backward = psi;
    cert.homotopy_forward = build_homotopy(h_u, psi_count, x, x_2eps);
    cert.homotopy_backward = build_homotopy(hp_u, psi_count + h_count, y, y_2eps);
    result.status = SearchStatus::found;
    result.certificate = std::move(cert);
    return result;
  }
  result.status = SearchStatus::none;
  return result;
}

SearchResult derived_interleaving_search(const Presentation& m, const Presentation& n,
                                         const mpq_class& eps, Field search_field,
                                         unsigned long long budget) {
  FreeChainComplex px = minimal_free_resolution(m.to_field(search_field));
  FreeChainComplex py = minimal_free_resolution(n.to_field(search_field));
  SearchResult r = search_homotopy_interleaving(px, py, eps, search_field, budget);
  if (r.certificate) r.certificate->level = Level::derived;
  return r;
}

std::optional<std::pair<Homotopy, Homotopy>> derived_interleaving_verify(const ChainMap& phi,
                                                                         const ChainMap& psi,
                                                                         const mpq_class& eps) {
  return verify_homotopy_interleaving(phi, psi, eps);
}

bool rank_obstruction(const Presentation& m, const Presentation& n, const mpq_class& eps) {
  if (eps < 0) throw std::invalid_argument("rank_obstruction: negative epsilon");
  std::vector<Grade> grades = m.all_grades();
  auto ng = n.all_grades();
  grades.insert(grades.end(), ng.begin(), ng.end());
  if (grades.empty()) return false;
  Grid grid = critical_grid(grades, {});
  mpq_class two_eps = 2 * eps;
  auto violated = [&](const Presentation& a, const Presentation& b) {
    for (const Grade& s : grid.points()) {
      Grade s_eps = s.shifted(-eps);       // s + eps*1
      Grade s_2eps = s.shifted(-two_eps);  // s + 2eps*1
      std::size_t r = rank(structure_map(a, s, s_2eps));
      if (r > evaluate(b, s_eps).dim()) return true;
    }
    return false;
  };
  return violated(m, n) || violated(n, m);
}

std::vector<mpq_class> candidate_epsilons(const Presentation& m, const Presentation& n) {
  std::vector<Grade> grades = m.all_grades();
  auto ng = n.all_grades();
  grades.insert(grades.end(), ng.begin(), ng.end());
  std::set<mpq_class> values;
  std::set<mpq_class> cands{mpq_class(0)};
  if (!grades.empty()) {
    Grid grid = critical_grid(grades, {});
    for (const auto& axis : grid.axes)
      for (const auto& v : axis) values.insert(v);
    for (const auto& u : values)
      for (const auto& v : values) {
        mpq_class d = u - v;
        if (d < 0) d = -d;
        cands.insert(d);
        cands.insert(d / 2);
      }
  }
  return std::vector<mpq_class>(cands.begin(), cands.end());
}

namespace {

std::string q_str(const mpq_class& v) { return v.get_str(); }

}  // namespace

DistanceBracket estimate_distance(const Presentation& m, const Presentation& n, Level level,
                                  Field search_field, unsigned long long budget) {
  DistanceBracket bracket;
  bracket.level = level;
  bracket.field = search_field;
  bracket.lower = 0;

  // Resolutions do not depend on epsilon; compute them once for the sweep.
  std::optional<FreeChainComplex> px, py;
  if (level != Level::module) {
    px = minimal_free_resolution(m.to_field(search_field));
    py = minimal_free_resolution(n.to_field(search_field));
  }
  auto dispatch_search = [&](const mpq_class& eps) {
    if (level == Level::module) return search_module_interleaving(m, n, eps, search_field, budget);
    SearchResult r = search_homotopy_interleaving(*px, *py, eps, search_field, budget);
    if (level == Level::derived && r.certificate) r.certificate->level = Level::derived;
    return r;
  };

  std::vector<mpq_class> cands = candidate_epsilons(m, n);
  bool budget_hit = false;  // hom spaces only grow with epsilon; stop searching once exhausted
  for (std::size_t i = 0; i < cands.size(); ++i) {
    const mpq_class& c = cands[i];
    bool gap_closed = false;
    if (rank_obstruction(m, n, c)) {
      bracket.lower = c;
      bracket.evidence.push_back({c, "rank-obstruction", "no " + q_str(c) + "-interleaving exists"});
      gap_closed = true;
    } else if (budget_hit) {
      bracket.evidence.push_back(
          {c, "budget-exhausted", "search skipped: an earlier candidate exhausted the budget"});
    } else {
      SearchResult sr = dispatch_search(c);
      if (sr.status == SearchStatus::found) {
        bracket.upper = c;
        bracket.witness = sr.certificate;
        bracket.evidence.push_back({c, "certificate", "verified certificate at " + q_str(c)});
        break;
      }
      if (sr.status == SearchStatus::none) {
        bracket.lower = c;
        bracket.evidence.push_back(
            {c, "search-none", "exhaustive search over " + search_field.name() + " found nothing"});
        gap_closed = true;
      } else {
        budget_hit = true;
        bracket.evidence.push_back({c, "budget-exhausted",
                                    "search stopped after " + std::to_string(sr.candidates_tried) +
                                        " candidates"});
      }
    }
    // Obstruction at a gap midpoint rules out the whole open interval, so the
    // lower bound may ratchet to the next candidate.
    if (gap_closed && i + 1 < cands.size()) {
      mpq_class mid = (c + cands[i + 1]) / 2;
      if (rank_obstruction(m, n, mid)) {
        bracket.lower = cands[i + 1];
        bracket.evidence.push_back(
            {mid, "rank-obstruction", "gap (" + q_str(c) + ", " + q_str(cands[i + 1]) + ") excluded"});
      }
    }
  }
  return bracket;
}

IsometryReport isometry_check(const Presentation& m, const Presentation& n,
                              const std::vector<mpq_class>& eps_list, Field search_field,
                              unsigned long long budget) {
  IsometryReport report;
  report.field = search_field;
  for (const mpq_class& eps : eps_list) {
    IsometryRow row;
    row.epsilon = eps;
    row.module_status = search_module_interleaving(m, n, eps, search_field, budget).status;
    FreeChainComplex px = minimal_free_resolution(m.to_field(search_field));
    FreeChainComplex py = minimal_free_resolution(n.to_field(search_field));
    row.homotopy_status = search_homotopy_interleaving(px, py, eps, search_field, budget).status;
    row.derived_status = derived_interleaving_search(m, n, eps, search_field, budget).status;
    row.agree = row.module_status == row.homotopy_status && row.homotopy_status == row.derived_status &&
                row.module_status != SearchStatus::budget_exhausted;
    report.all_agree = report.all_agree && row.agree;
    report.rows.push_back(std::move(row));
  }
  return report;
}

}  // namespace persres
