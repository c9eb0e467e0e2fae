#pragma once

#include <functional>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "persres/freemod.hpp"

namespace persres {

// Finitely presented persistence module: the cokernel of a grade-admissible
// matrix rel : R -> G from a free module of relations to a free module of
// generators.
struct Presentation {
  GradedMatrix rel;

  explicit Presentation(GradedMatrix r) : rel(std::move(r)) {}
  // Presentation with no relations (a free module).
  static Presentation free_module(Field f, const FreeModule& gens);

  const FreeModule& generators() const { return rel.target; }
  const FreeModule& relations() const { return rel.source; }
  const Field& field() const { return rel.field(); }
  std::size_t ambient_dim() const { return rel.target.ambient_dim; }

  Presentation shifted(const mpq_class& eps) const { return Presentation(rel.shifted(eps)); }
  Presentation to_field(Field f) const;
  std::vector<Grade> all_grades() const;
  bool operator==(const Presentation&) const = default;
};

// Value of a presentation at a grade: the quotient of the span of alive
// generators by the span of alive relation columns. The quotient basis is
// the set of alive generator indices away from the relation span's pivots,
// so basis element j is the class of generator basis[j].
struct Evaluation {
  Grade point;
  std::vector<std::size_t> alive;  // generator indices alive at the point
  std::vector<std::size_t> basis;  // generator indices forming the quotient basis
  EchelonSpan relation_span;       // echelon over alive coordinates

  std::size_t dim() const { return basis.size(); }
  // Full generator-coordinate vector -> quotient coordinates.
  Vec reduce(const Vec& full) const;
};

Evaluation evaluate(const Presentation& p, const Grade& s);

// Matrix of the structure map M(s <= t) between the evaluation bases.
Matrix structure_map(const Presentation& p, const Grade& s, const Grade& t);

// Morphism of finitely presented modules, stored as one image vector per
// source generator in the target's evaluation basis at that generator's
// grade. Well-definedness means every source relation maps to zero.
struct FPMorphism {
  Presentation source;
  Presentation target;
  std::vector<Vec> gen_images;

  FPMorphism(Presentation src, Presentation tgt, std::vector<Vec> images);

  const Field& field() const { return source.field(); }
  bool is_well_defined() const;
  // Matrix of the induced map between evaluation bases at s.
  Matrix evaluate_at(const Grade& s) const;
  FPMorphism shifted(const mpq_class& eps) const;
  bool operator==(const FPMorphism&) const = default;

  static FPMorphism identity(const Presentation& p);
  static FPMorphism zero(const Presentation& src, const Presentation& tgt);
};

FPMorphism compose(const FPMorphism& g, const FPMorphism& f);
FPMorphism add(const FPMorphism& a, const FPMorphism& b);
FPMorphism sub(const FPMorphism& a, const FPMorphism& b);

// The smoothing morphism s_eps : P -> P[eps]; requires eps >= 0.
FPMorphism smoothing_fp(const Presentation& p, const mpq_class& eps);
Presentation shift_presentation(const Presentation& p, const mpq_class& eps);

// Basis of the vector space Hom(P, Q) of module morphisms.
std::vector<FPMorphism> hom_space(const Presentation& p, const Presentation& q);

// Minimization result: the minimal presentation plus the isomorphisms
// relating it to the input (to_input : minimal -> input and back).
struct Minimized {
  Presentation minimal;
  FPMorphism to_input;
  FPMorphism from_input;
};

Minimized minimize_full(const Presentation& p);
Presentation minimize(const Presentation& p);

// Minimal generators of ker(phi) for a map of free modules: the free module
// of syzygies and its inclusion, with compose(phi, incl) = 0.
std::pair<FreeModule, GradedMatrix> kernel_presentation(const GradedMatrix& phi);

// Minimal generators of the submodule { v : subspace_at(s) } of a free
// module, swept over a grid in lexicographic order. subspace_at receives the
// grid point and the alive column indices and returns spanning vectors in
// full coordinates. Shared by kernel_presentation, minimize and ingest.
std::vector<std::pair<Grade, Vec>> sweep_minimal_generators(
    Field f, const FreeModule& ambient, const Grid& grid,
    const std::function<std::vector<Vec>(const Grade&, const std::vector<std::size_t>&)>& subspace_at);

}  // namespace persres
