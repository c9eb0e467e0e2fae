#include "persres/ingest.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <stdexcept>

namespace persres {

namespace {

bool simplex_order(const Simplex& a, const Simplex& b) {
  if (a.vertices.size() != b.vertices.size()) return a.vertices.size() < b.vertices.size();
  return a.vertices < b.vertices;
}

}  // namespace

void Bifiltration::canonicalize_and_validate() {
  for (auto& s : simplices) {
    if (s.vertices.empty()) throw std::invalid_argument("bifiltration: empty simplex");
    if (!std::is_sorted(s.vertices.begin(), s.vertices.end()) ||
        std::adjacent_find(s.vertices.begin(), s.vertices.end()) != s.vertices.end())
      throw std::invalid_argument("bifiltration: vertices must be sorted and distinct");
    if (s.grade.dim() != 2) throw std::invalid_argument("bifiltration: grades must lie in R^2");
  }
  std::sort(simplices.begin(), simplices.end(), simplex_order);
  for (std::size_t i = 0; i + 1 < simplices.size(); ++i)
    if (simplices[i].vertices == simplices[i + 1].vertices)
      throw std::invalid_argument("bifiltration: duplicate simplex");

  std::map<std::vector<int>, const Simplex*> by_verts;
  for (const auto& s : simplices) by_verts[s.vertices] = &s;
  for (const auto& s : simplices) {
    if (s.vertices.size() == 1) continue;
    for (std::size_t drop = 0; drop < s.vertices.size(); ++drop) {
      std::vector<int> face = s.vertices;
      face.erase(face.begin() + drop);
      auto it = by_verts.find(face);
      if (it == by_verts.end()) throw std::invalid_argument("bifiltration: missing face");
      if (!leq(it->second->grade, s.grade))
        throw std::invalid_argument("bifiltration: non-monotone grades");
    }
  }
}

std::size_t Bifiltration::max_dimension() const {
  std::size_t d = 0;
  for (const auto& s : simplices) d = std::max(d, s.vertices.size() - 1);
  return d;
}

std::vector<const Simplex*> Bifiltration::simplices_of_dim(std::size_t d) const {
  std::vector<const Simplex*> out;
  for (const auto& s : simplices)
    if (s.vertices.size() == d + 1) out.push_back(&s);
  return out;
}

std::vector<Grade> Bifiltration::all_grades() const {
  std::vector<Grade> g;
  for (const auto& s : simplices) g.push_back(s.grade);
  return g;
}

FreeModule chain_module(const Bifiltration& k, std::size_t d) {
  std::vector<Grade> grades;
  for (const Simplex* s : k.simplices_of_dim(d)) grades.push_back(s->grade);
  return FreeModule(2, std::move(grades));
}

GradedMatrix boundary_map(const Bifiltration& k, std::size_t d, Field f) {
  FreeModule cd = chain_module(k, d);
  if (d == 0) return GradedMatrix::zero(f, cd, FreeModule(2, {}));
  FreeModule cdm1 = chain_module(k, d - 1);
  auto faces = k.simplices_of_dim(d - 1);
  std::map<std::vector<int>, std::size_t> face_index;
  for (std::size_t i = 0; i < faces.size(); ++i) face_index[faces[i]->vertices] = i;

  auto cells = k.simplices_of_dim(d);
  Matrix m(f, cdm1.rank(), cd.rank());
  for (std::size_t j = 0; j < cells.size(); ++j) {
    long sign = 1;
    for (std::size_t drop = 0; drop < cells[j]->vertices.size(); ++drop) {
      std::vector<int> face = cells[j]->vertices;
      face.erase(face.begin() + drop);
      m.set(face_index.at(face), j, f.from_long(sign));
      sign = -sign;
    }
  }
  return GradedMatrix(cd, cdm1, std::move(m));
}

Presentation homology_presentation(const Bifiltration& k_in, std::size_t i, Field f) {
  Bifiltration k = k_in;
  k.canonicalize_and_validate();
  if (k.simplices.empty() || i > k.max_dimension()) {
    FreeModule empty(2, {});
    return Presentation::free_module(f, empty);
  }

  GradedMatrix d_i = boundary_map(k, i, f);
  auto [cycles, incl] = kernel_presentation(d_i);
  if (cycles.rank() == 0) return Presentation::free_module(f, cycles);

  // Express each (i+1)-boundary in the cycle basis at the cell's grade.
  std::vector<Grade> rel_grades;
  std::vector<Vec> rel_cols;
  if (i < k.max_dimension()) {
    GradedMatrix d_ip1 = boundary_map(k, i + 1, f);
    for (std::size_t c = 0; c < d_ip1.source.rank(); ++c) {
      const Grade& b = d_ip1.source.gens[c];
      std::vector<std::size_t> alive = cycles.alive(b);
      Matrix sys = incl.entries.cols_selected(alive);
      auto sol = solve(sys, d_ip1.entries.col(c));
      if (!sol) throw std::logic_error("homology_presentation: boundary outside cycle span");
      Vec col = zero_vec(cycles.rank());
      for (std::size_t j = 0; j < alive.size(); ++j) col[alive[j]] = (*sol)[j];
      rel_grades.push_back(b);
      rel_cols.push_back(std::move(col));
    }
  }
  FreeModule rels(2, std::move(rel_grades));
  Presentation raw(GradedMatrix(rels, cycles, Matrix::from_cols(f, cycles.rank(), rel_cols)));
  return minimize(raw);
}

Bifiltration perturb(const Bifiltration& k_in, const mpq_class& delta, std::uint64_t seed) {
  if (delta < 0) throw std::invalid_argument("perturb: negative delta");
  Bifiltration k = k_in;
  k.canonicalize_and_validate();

  std::mt19937_64 rng(seed);
  auto draw_offset = [&]() {
    // t in [-16, 16] from the raw stream; offset = delta * t / 16.
    long t = static_cast<long>(rng() % 33) - 16;
    return mpq_class(delta * t / 16);
  };
  for (auto& s : k.simplices)
    for (auto& c : s.grade.coords) c = c + draw_offset();

  // Re-monotonize: each grade becomes the join of itself with its faces,
  // in ascending dimension order.
  std::map<std::vector<int>, Grade*> by_verts;
  for (auto& s : k.simplices) by_verts[s.vertices] = &s.grade;
  for (auto& s : k.simplices) {
    if (s.vertices.size() == 1) continue;
    for (std::size_t drop = 0; drop < s.vertices.size(); ++drop) {
      std::vector<int> face = s.vertices;
      face.erase(face.begin() + drop);
      s.grade = join(s.grade, *by_verts.at(face));
    }
  }
  k.canonicalize_and_validate();
  return k;
}

}  // namespace persres
