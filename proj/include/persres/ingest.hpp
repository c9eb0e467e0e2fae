#pragma once

#include <cstdint>
#include <vector>

#include "persres/presentation.hpp"

namespace persres {

struct Simplex {
  std::vector<int> vertices;  // sorted ascending, distinct
  Grade grade;                // R^2, rational
  bool operator==(const Simplex&) const = default;
};

// Finite simplicial complex with monotone R^2 grades under the sublevel-set
// convention: every sublevel set is a subcomplex.
struct Bifiltration {
  std::vector<Simplex> simplices;

  // Sorts simplices canonically (dimension, then vertex lex) and checks face
  // closure and monotonicity; throws std::invalid_argument on violation.
  void canonicalize_and_validate();

  std::size_t max_dimension() const;
  std::vector<const Simplex*> simplices_of_dim(std::size_t d) const;
  std::vector<Grade> all_grades() const;
};

// Free chain module in dimension d (one generator per d-simplex at its
// grade) and the boundary map C_d -> C_{d-1} over the given field.
FreeModule chain_module(const Bifiltration& k, std::size_t d);
GradedMatrix boundary_map(const Bifiltration& k, std::size_t d, Field f);

// Finite presentation of H_i of the sublevel filtration, minimized.
Presentation homology_presentation(const Bifiltration& k, std::size_t i, Field f);

// Seeded grade perturbation with sup-norm <= delta, re-monotonized by taking
// joins over faces. Offsets are delta * t/16 for t in [-16, 16] drawn from
// the raw mt19937_64 stream, so outputs are reproducible across platforms.
Bifiltration perturb(const Bifiltration& k, const mpq_class& delta, std::uint64_t seed);

}  // namespace persres
