#include "persres/complexes.hpp"

#include <stdexcept>

namespace persres {

const FreeModule& FreeChainComplex::term(int j) const {
  auto it = terms.find(j);
  return it != terms.end() ? it->second : empty_;
}

FreeModule FreeChainComplex::term_or_empty(int j) const { return term(j); }

GradedMatrix FreeChainComplex::diff_or_zero(int j) const {
  auto it = diffs.find(j);
  if (it != diffs.end()) return it->second;
  return GradedMatrix::zero(field, term(j), term(j + 1));
}

int FreeChainComplex::min_degree() const { return terms.empty() ? 0 : terms.begin()->first; }
int FreeChainComplex::max_degree() const { return terms.empty() ? 0 : terms.rbegin()->first; }

void FreeChainComplex::set_term(int j, FreeModule m) {
  if (m.ambient_dim != ambient_dim) throw std::invalid_argument("set_term: dimension mismatch");
  if (m.rank() == 0) return;
  terms.insert_or_assign(j, std::move(m));
}

void FreeChainComplex::set_diff(int j, GradedMatrix d) {
  if (!(d.source == term(j)) || !(d.target == term(j + 1)))
    throw std::invalid_argument("set_diff: modules do not match terms");
  if (d.entries.is_zero()) return;
  diffs.insert_or_assign(j, std::move(d));
}

FreeChainComplex FreeChainComplex::shifted(const mpq_class& eps) const {
  FreeChainComplex x(ambient_dim, field);
  for (const auto& [j, m] : terms) x.terms.insert_or_assign(j, m.shifted(eps));
  for (const auto& [j, d] : diffs) x.diffs.insert_or_assign(j, d.shifted(eps));
  return x;
}

bool FreeChainComplex::validate() const {
  for (const auto& [j, d] : diffs) {
    if (!(d.source == term(j)) || !(d.target == term(j + 1))) return false;
    auto next = diffs.find(j + 1);
    if (next != diffs.end()) {
      if (!compose(next->second, d).entries.is_zero()) return false;
    }
  }
  return true;
}

FreeChainComplex direct_sum(const FreeChainComplex& a, const FreeChainComplex& b) {
  if (a.ambient_dim != b.ambient_dim || !(a.field == b.field))
    throw std::invalid_argument("direct_sum: mismatch");
  FreeChainComplex x(a.ambient_dim, a.field);
  int lo = std::min(a.min_degree(), b.min_degree());
  int hi = std::max(a.max_degree(), b.max_degree());
  for (int j = lo; j <= hi; ++j) x.set_term(j, a.term(j).direct_sum(b.term(j)));
  for (int j = lo; j <= hi; ++j) {
    GradedMatrix da = a.diff_or_zero(j), db = b.diff_or_zero(j);
    const FreeModule& src = x.term(j);
    const FreeModule& tgt = x.term(j + 1);
    if (src.rank() == 0 || tgt.rank() == 0) continue;
    Matrix m(a.field, tgt.rank(), src.rank());
    for (std::size_t i = 0; i < da.entries.rows(); ++i)
      for (std::size_t k = 0; k < da.entries.cols(); ++k) m.set(i, k, da.entries.at(i, k));
    for (std::size_t i = 0; i < db.entries.rows(); ++i)
      for (std::size_t k = 0; k < db.entries.cols(); ++k)
        m.set(da.entries.rows() + i, da.entries.cols() + k, db.entries.at(i, k));
    x.set_diff(j, GradedMatrix(src, tgt, std::move(m)));
  }
  return x;
}

FreeChainComplex shift_complex(const FreeChainComplex& x, const mpq_class& eps) { return x.shifted(eps); }

GradedMatrix ChainMap::comp_or_zero(int j) const {
  auto it = comps.find(j);
  if (it != comps.end()) return it->second;
  return GradedMatrix::zero(source.field, source.term(j), target.term(j));
}

bool ChainMap::is_valid() const {
  for (const auto& [j, m] : comps)
    if (!(m.source == source.term(j)) || !(m.target == target.term(j))) return false;
  int lo = std::min(source.min_degree(), target.min_degree());
  int hi = std::max(source.max_degree(), target.max_degree());
  for (int j = lo; j <= hi; ++j) {
    GradedMatrix lhs = compose(target.diff_or_zero(j), comp_or_zero(j));
    GradedMatrix rhs = compose(comp_or_zero(j + 1), source.diff_or_zero(j));
    if (!(lhs.entries == rhs.entries)) return false;
  }
  return true;
}

ChainMap ChainMap::shifted(const mpq_class& eps) const {
  ChainMap f(source.shifted(eps), target.shifted(eps));
  for (const auto& [j, m] : comps) f.comps.insert_or_assign(j, m.shifted(eps));
  return f;
}

ChainMap ChainMap::zero(const FreeChainComplex& src, const FreeChainComplex& tgt) {
  return ChainMap(src, tgt);
}

ChainMap ChainMap::identity(const FreeChainComplex& x) {
  ChainMap f(x, x);
  for (const auto& [j, m] : x.terms)
    f.comps.insert_or_assign(j, GradedMatrix::identity(x.field, m));
  return f;
}

ChainMap compose(const ChainMap& g, const ChainMap& f) {
  if (!(g.source == f.target)) throw std::invalid_argument("compose: middle complex mismatch");
  ChainMap r(f.source, g.target);
  int lo = std::min(f.source.min_degree(), g.target.min_degree());
  int hi = std::max(f.source.max_degree(), g.target.max_degree());
  for (int j = lo; j <= hi; ++j) {
    GradedMatrix m = compose(g.comp_or_zero(j), f.comp_or_zero(j));
    if (!m.entries.is_zero()) r.comps.insert_or_assign(j, std::move(m));
  }
  return r;
}

ChainMap add(const ChainMap& a, const ChainMap& b) {
  if (!(a.source == b.source) || !(a.target == b.target))
    throw std::invalid_argument("add: complex mismatch");
  ChainMap r(a.source, a.target);
  int lo = std::min(a.source.min_degree(), a.target.min_degree());
  int hi = std::max(a.source.max_degree(), a.target.max_degree());
  for (int j = lo; j <= hi; ++j) {
    GradedMatrix m = add(a.comp_or_zero(j), b.comp_or_zero(j));
    if (!m.entries.is_zero()) r.comps.insert_or_assign(j, std::move(m));
  }
  return r;
}

ChainMap sub(const ChainMap& a, const ChainMap& b) {
  if (!(a.source == b.source) || !(a.target == b.target))
    throw std::invalid_argument("sub: complex mismatch");
  ChainMap r(a.source, a.target);
  int lo = std::min(a.source.min_degree(), a.target.min_degree());
  int hi = std::max(a.source.max_degree(), a.target.max_degree());
  for (int j = lo; j <= hi; ++j) {
    GradedMatrix m = sub(a.comp_or_zero(j), b.comp_or_zero(j));
    if (!m.entries.is_zero()) r.comps.insert_or_assign(j, std::move(m));
  }
  return r;
}

ChainMap smoothing_chain_map(const FreeChainComplex& x, const mpq_class& eps) {
  if (eps < 0) throw std::invalid_argument("smoothing_chain_map: negative epsilon");
  ChainMap f(x, x.shifted(eps));
  for (const auto& [j, m] : x.terms)
    f.comps.insert_or_assign(j, smoothing_free(x.field, m, eps));
  return f;
}

namespace {

// Admissible-position bookkeeping for one unknown degreewise matrix family.
struct UnknownBlock {
  int degree;
  std::size_t row, col;
};

}  // namespace

std::optional<Homotopy> is_nullhomotopic(const ChainMap& phi) {
  const FreeChainComplex& x = phi.source;
  const FreeChainComplex& y = phi.target;
  const Field& f = x.field;

  // Unknowns: admissible entries of h^i : X^i -> Y^{i-1}.
  std::vector<UnknownBlock> unknowns;
  std::map<int, std::map<std::pair<std::size_t, std::size_t>, std::size_t>> index;
  int lo = std::min(x.min_degree(), y.min_degree());
  int hi = std::max(x.max_degree(), y.max_degree());
  for (int i = lo; i <= hi + 1; ++i) {
    const FreeModule& src = x.term(i);
    const FreeModule& tgt = y.term(i - 1);
    for (std::size_t r = 0; r < tgt.rank(); ++r)
      for (std::size_t c = 0; c < src.rank(); ++c)
        if (leq(tgt.gens[r], src.gens[c])) {
          index[i][{r, c}] = unknowns.size();
          unknowns.push_back({i, r, c});
        }
  }

  auto unknown_at = [&](int i, std::size_t r, std::size_t c) -> std::optional<std::size_t> {
    auto di = index.find(i);
    if (di == index.end()) return std::nullopt;
    auto it = di->second.find({r, c});
    if (it == di->second.end()) return std::nullopt;
    return it->second;
  };

  std::vector<Vec> rows;
  Vec rhs;
  for (int i = lo; i <= hi; ++i) {
    const FreeModule& xi = x.term(i);
    const FreeModule& yi = y.term(i);
    if (xi.rank() == 0 || yi.rank() == 0) continue;
    GradedMatrix phii = phi.comp_or_zero(i);
    GradedMatrix dy = y.diff_or_zero(i - 1);  // Y^{i-1} -> Y^i
    GradedMatrix dx = x.diff_or_zero(i);      // X^i -> X^{i+1}
    for (std::size_t r = 0; r < yi.rank(); ++r)
      for (std::size_t c = 0; c < xi.rank(); ++c) {
        Vec row = zero_vec(unknowns.size());
        // (d_Y^{i-1} h^i)[r,c] = sum_k dy[r,k] h^i[k,c]
        for (std::size_t k = 0; k < y.term(i - 1).rank(); ++k) {
          if (f.is_zero(dy.entries.at(r, k))) continue;
          if (auto u = unknown_at(i, k, c)) row[*u] = f.add(row[*u], dy.entries.at(r, k));
        }
        // (h^{i+1} d_X^i)[r,c] = sum_m h^{i+1}[r,m] dx[m,c]
        for (std::size_t m = 0; m < x.term(i + 1).rank(); ++m) {
          if (f.is_zero(dx.entries.at(m, c))) continue;
          if (auto u = unknown_at(i + 1, r, m)) row[*u] = f.add(row[*u], dx.entries.at(m, c));
        }
        rows.push_back(std::move(row));
        rhs.push_back(phii.entries.at(r, c));
      }
  }

  Matrix sys = Matrix::from_rows(f, unknowns.size(), rows);
  auto sol = solve(sys, rhs);
  if (!sol) return std::nullopt;

  Homotopy h;
  for (int i = lo; i <= hi + 1; ++i) {
    const FreeModule& src = x.term(i);
    const FreeModule& tgt = y.term(i - 1);
    if (src.rank() == 0 || tgt.rank() == 0) continue;
    Matrix m(f, tgt.rank(), src.rank());
    bool nonzero = false;
    for (std::size_t r = 0; r < tgt.rank(); ++r)
      for (std::size_t c = 0; c < src.rank(); ++c)
        if (auto u = unknown_at(i, r, c)) {
          m.set(r, c, (*sol)[*u]);
          nonzero = nonzero || !f.is_zero((*sol)[*u]);
        }
    if (nonzero) h.comps.insert_or_assign(i, GradedMatrix(src, tgt, std::move(m)));
  }
  return h;
}

bool homotopy_witnesses(const ChainMap& phi, const Homotopy& h) {
  const FreeChainComplex& x = phi.source;
  const FreeChainComplex& y = phi.target;
  auto h_or_zero = [&](int i) {
    auto it = h.comps.find(i);
    if (it != h.comps.end()) return it->second;
    return GradedMatrix::zero(x.field, x.term(i), y.term(i - 1));
  };
  int lo = std::min(x.min_degree(), y.min_degree()) - 1;
  int hi = std::max(x.max_degree(), y.max_degree()) + 1;
  for (int i = lo; i <= hi; ++i) {
    if (x.term(i).rank() == 0) continue;
    Matrix lhs = phi.comp_or_zero(i).entries;
    Matrix a = mul(y.diff_or_zero(i - 1).entries, h_or_zero(i).entries);
    Matrix b = mul(h_or_zero(i + 1).entries, x.diff_or_zero(i).entries);
    if (y.term(i).rank() == 0) {
      if (!lhs.is_zero()) return false;
      continue;
    }
    if (!(lhs == add(a, b))) return false;
  }
  return true;
}

std::vector<ChainMap> chain_map_space(const FreeChainComplex& x, const FreeChainComplex& y) {
  if (x.ambient_dim != y.ambient_dim || !(x.field == y.field))
    throw std::invalid_argument("chain_map_space: mismatch");
  const Field& f = x.field;

  std::vector<UnknownBlock> unknowns;
  std::map<int, std::map<std::pair<std::size_t, std::size_t>, std::size_t>> index;
  int lo = std::min(x.min_degree(), y.min_degree());
  int hi = std::max(x.max_degree(), y.max_degree());
  for (int i = lo; i <= hi; ++i) {
    const FreeModule& src = x.term(i);
    const FreeModule& tgt = y.term(i);
    for (std::size_t r = 0; r < tgt.rank(); ++r)
      for (std::size_t c = 0; c < src.rank(); ++c)
        if (leq(tgt.gens[r], src.gens[c])) {
          index[i][{r, c}] = unknowns.size();
          unknowns.push_back({i, r, c});
        }
  }
  auto unknown_at = [&](int i, std::size_t r, std::size_t c) -> std::optional<std::size_t> {
    auto di = index.find(i);
    if (di == index.end()) return std::nullopt;
    auto it = di->second.find({r, c});
    if (it == di->second.end()) return std::nullopt;
    return it->second;
  };

  // Degreewise commutation d_Y^i f^i = f^{i+1} d_X^i.
  std::vector<Vec> rows;
  for (int i = lo; i <= hi; ++i) {
    const FreeModule& xi = x.term(i);
    const FreeModule& yi1 = y.term(i + 1);
    if (xi.rank() == 0 || yi1.rank() == 0) continue;
    GradedMatrix dy = y.diff_or_zero(i);
    GradedMatrix dx = x.diff_or_zero(i);
    for (std::size_t r = 0; r < yi1.rank(); ++r)
      for (std::size_t c = 0; c < xi.rank(); ++c) {
        Vec row = zero_vec(unknowns.size());
        bool any = false;
        for (std::size_t k = 0; k < y.term(i).rank(); ++k) {
          if (f.is_zero(dy.entries.at(r, k))) continue;
          if (auto u = unknown_at(i, k, c)) {
            row[*u] = f.add(row[*u], dy.entries.at(r, k));
            any = true;
          }
        }
        for (std::size_t m = 0; m < x.term(i + 1).rank(); ++m) {
          if (f.is_zero(dx.entries.at(m, c))) continue;
          if (auto u = unknown_at(i + 1, r, m)) {
            row[*u] = f.sub(row[*u], dx.entries.at(m, c));
            any = true;
          }
        }
        if (any) rows.push_back(std::move(row));
      }
  }

  Matrix sys = Matrix::from_rows(f, unknowns.size(), rows);
  std::vector<ChainMap> basis;
  for (const Vec& v : kernel_basis(sys)) {
    ChainMap cm(x, y);
    for (int i = lo; i <= hi; ++i) {
      const FreeModule& src = x.term(i);
      const FreeModule& tgt = y.term(i);
      if (src.rank() == 0 || tgt.rank() == 0) continue;
      Matrix m(f, tgt.rank(), src.rank());
      bool nonzero = false;
      for (std::size_t r = 0; r < tgt.rank(); ++r)
        for (std::size_t c = 0; c < src.rank(); ++c)
          if (auto u = unknown_at(i, r, c)) {
            m.set(r, c, v[*u]);
            nonzero = nonzero || !f.is_zero(v[*u]);
          }
      if (nonzero) cm.comps.insert_or_assign(i, GradedMatrix(src, tgt, std::move(m)));
    }
    basis.push_back(std::move(cm));
  }
  return basis;
}

}  // namespace persres
