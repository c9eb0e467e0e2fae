#pragma once

#include <cstddef>
#include <map>
#include <vector>

#include "persres/field.hpp"

namespace persres {

// A point of the grading poset (R^n, <=) with exact rational coordinates.
struct Grade {
  Vec coords;

  Grade() = default;
  explicit Grade(Vec c) : coords(std::move(c)) {}

  std::size_t dim() const { return coords.size(); }
  // a - eps * (1,...,1); this is the grade of F_a[eps].
  Grade shifted(const mpq_class& eps) const;
  bool operator==(const Grade&) const = default;
};

bool leq(const Grade& a, const Grade& b);       // product order; throws on dim mismatch
bool lex_less(const Grade& a, const Grade& b);  // total order used for maps and sweeps
Grade join(const Grade& a, const Grade& b);

struct GradeLess {
  bool operator()(const Grade& a, const Grade& b) const { return lex_less(a, b); }
};

// Finite product grid: the evaluation lattice for finitely presented modules.
struct Grid {
  std::vector<Vec> axes;  // per-axis strictly increasing values

  std::size_t dim() const { return axes.size(); }
  std::size_t point_count() const;
  std::vector<Grade> points() const;  // lexicographic order, a linear extension of <=
  bool contains(const Grade& g) const;
};

// Per-axis values: every coordinate of every grade, also offset by every
// shift and by every sum of two shifts (an F_a[s] generator sits at a - s).
Grid critical_grid(const std::vector<Grade>& grades, const std::vector<mpq_class>& shifts);

}  // namespace persres
