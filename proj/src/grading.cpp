#include "persres/grading.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace persres {

Grade Grade::shifted(const mpq_class& eps) const {
  Grade g(*this);
  for (auto& c : g.coords) c -= eps;
  return g;
}

bool leq(const Grade& a, const Grade& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("leq: dimension mismatch");
  for (std::size_t i = 0; i < a.dim(); ++i)
    if (a.coords[i] > b.coords[i]) return false;
  return true;
}

bool lex_less(const Grade& a, const Grade& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("lex_less: dimension mismatch");
  for (std::size_t i = 0; i < a.dim(); ++i) {
    int c = cmp(a.coords[i], b.coords[i]);
    if (c != 0) return c < 0;
  }
  return false;
}

Grade join(const Grade& a, const Grade& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("join: dimension mismatch");
  Grade g(a);
  for (std::size_t i = 0; i < a.dim(); ++i)
    if (b.coords[i] > g.coords[i]) g.coords[i] = b.coords[i];
  return g;
}

std::size_t Grid::point_count() const {
  std::size_t n = 1;
  for (const auto& axis : axes) n *= axis.size();
  return n;
}

std::vector<Grade> Grid::points() const {
  std::vector<Grade> pts;
  if (axes.empty()) return pts;
  for (const auto& axis : axes)
    if (axis.empty()) return pts;
  std::vector<std::size_t> idx(axes.size(), 0);
  pts.reserve(point_count());
  for (;;) {
    Vec c(axes.size());
    for (std::size_t i = 0; i < axes.size(); ++i) c[i] = axes[i][idx[i]];
    pts.emplace_back(std::move(c));
    std::size_t i = axes.size();
    while (i > 0) {
      --i;
      if (++idx[i] < axes[i].size()) break;
      idx[i] = 0;
      if (i == 0) return pts;
    }
  }
}

bool Grid::contains(const Grade& g) const {
  if (g.dim() != dim()) return false;
  for (std::size_t i = 0; i < dim(); ++i)
    if (!std::binary_search(axes[i].begin(), axes[i].end(), g.coords[i])) return false;
  return true;
}

Grid critical_grid(const std::vector<Grade>& grades, const std::vector<mpq_class>& shifts) {
  if (grades.empty()) throw std::invalid_argument("critical_grid: empty grade list");
  const std::size_t n = grades.front().dim();
  for (const auto& g : grades)
    if (g.dim() != n) throw std::invalid_argument("critical_grid: dimension mismatch");

  std::vector<mpq_class> offsets{mpq_class(0)};
  for (const auto& s : shifts) offsets.push_back(s);
  for (std::size_t i = 0; i < shifts.size(); ++i)
    for (std::size_t j = i + 1; j < shifts.size(); ++j) offsets.push_back(shifts[i] + shifts[j]);

  Grid grid;
  grid.axes.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::set<mpq_class> vals;
    for (const auto& g : grades)
      for (const auto& off : offsets) vals.insert(g.coords[i] - off);
    grid.axes[i].assign(vals.begin(), vals.end());
  }
  return grid;
}

}  // namespace persres
