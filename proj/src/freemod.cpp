#include "persres/freemod.hpp"

#include <stdexcept>

namespace persres {

FreeModule::FreeModule(std::size_t n, std::vector<Grade> g) : ambient_dim(n), gens(std::move(g)) {
  for (const auto& grade : gens)
    if (grade.dim() != ambient_dim) throw std::invalid_argument("FreeModule: grade dimension mismatch");
}

std::map<Grade, std::size_t, GradeLess> FreeModule::xi() const {
  std::map<Grade, std::size_t, GradeLess> mult;
  for (const auto& g : gens) ++mult[g];
  return mult;
}

FreeModule FreeModule::shifted(const mpq_class& eps) const {
  FreeModule m(*this);
  for (auto& g : m.gens) g = g.shifted(eps);
  return m;
}

FreeModule FreeModule::direct_sum(const FreeModule& other) const {
  if (ambient_dim != other.ambient_dim) throw std::invalid_argument("direct_sum: dimension mismatch");
  FreeModule m(*this);
  m.gens.insert(m.gens.end(), other.gens.begin(), other.gens.end());
  return m;
}

std::vector<std::size_t> FreeModule::alive(const Grade& s) const {
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < gens.size(); ++i)
    if (leq(gens[i], s)) idx.push_back(i);
  return idx;
}

bool is_admissible(const FreeModule& target, const FreeModule& source, const Matrix& entries) {
  for (std::size_t i = 0; i < target.rank(); ++i)
    for (std::size_t j = 0; j < source.rank(); ++j)
      if (!entries.field().is_zero(entries.at(i, j)) && !leq(target.gens[i], source.gens[j]))
        return false;
  return true;
}

GradedMatrix::GradedMatrix(FreeModule src, FreeModule tgt, Matrix m)
    : source(std::move(src)), target(std::move(tgt)), entries(std::move(m)) {
  if (source.ambient_dim != target.ambient_dim)
    throw std::invalid_argument("GradedMatrix: ambient dimension mismatch");
  if (entries.rows() != target.rank() || entries.cols() != source.rank())
    throw std::invalid_argument("GradedMatrix: shape mismatch");
  if (!is_admissible(target, source, entries))
    throw std::invalid_argument("GradedMatrix: inadmissible entry");
}

GradedMatrix GradedMatrix::shifted(const mpq_class& eps) const {
  return GradedMatrix(source.shifted(eps), target.shifted(eps), entries);
}

Matrix GradedMatrix::evaluate(const Grade& s) const {
  return entries.submatrix(target.alive(s), source.alive(s));
}

GradedMatrix GradedMatrix::zero(Field f, const FreeModule& src, const FreeModule& tgt) {
  return GradedMatrix(src, tgt, Matrix(f, tgt.rank(), src.rank()));
}

GradedMatrix GradedMatrix::identity(Field f, const FreeModule& m) {
  return GradedMatrix(m, m, Matrix::identity(f, m.rank()));
}

GradedMatrix compose(const GradedMatrix& g, const GradedMatrix& f) {
  if (!(g.source == f.target)) throw std::invalid_argument("compose: middle module mismatch");
  return GradedMatrix(f.source, g.target, mul(g.entries, f.entries));
}

GradedMatrix add(const GradedMatrix& a, const GradedMatrix& b) {
  if (!(a.source == b.source) || !(a.target == b.target))
    throw std::invalid_argument("add: module mismatch");
  return GradedMatrix(a.source, a.target, add(a.entries, b.entries));
}

GradedMatrix sub(const GradedMatrix& a, const GradedMatrix& b) {
  if (!(a.source == b.source) || !(a.target == b.target))
    throw std::invalid_argument("sub: module mismatch");
  return GradedMatrix(a.source, a.target, sub(a.entries, b.entries));
}

GradedMatrix smoothing_free(Field f, const FreeModule& m, const mpq_class& eps) {
  if (eps < 0) throw std::invalid_argument("smoothing_free: negative epsilon");
  return GradedMatrix(m, m.shifted(eps), Matrix::identity(f, m.rank()));
}

}  // namespace persres
