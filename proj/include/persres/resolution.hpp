#pragma once

#include <map>

#include "persres/complexes.hpp"
#include "persres/presentation.hpp"

namespace persres {

// Minimal free resolution ... -> F^-2 -> F^-1 -> F^0 -> 0 of coker(rel),
// computed by grid linear algebra: minimize, then repeated syzygy sweeps.
// Deterministic, so resolve(P[eps]) equals resolve(P)[eps] entrywise.
FreeChainComplex minimal_free_resolution(const Presentation& p);

// Graded Betti number: xi of the degree (-i) term of the minimal resolution.
std::map<Grade, std::size_t, GradeLess> betti(const Presentation& p, std::size_t i);

// Every differential entry between equal-grade generators vanishes.
bool resolution_is_minimal(const FreeChainComplex& x);

// Grid-pointwise exactness in negative degrees plus agreement of the
// degree-0 cokernel with p (dimensions and structure-map ranks over the
// joint grid).
bool verify_resolution(const Presentation& p, const FreeChainComplex& x);

enum class LiftStyle { free_vars_zero, free_vars_one };

// Chain map lifting f to the given resolutions of its source and target.
// The degree-0 terms must match the canonical minimal resolutions (as
// produced by minimal_free_resolution, possibly shifted); inconsistency
// signals a broken precondition.
ChainMap lift_resolution(const FPMorphism& f, const FreeChainComplex& px,
                         const FreeChainComplex& py,
                         LiftStyle style = LiftStyle::free_vars_zero);

// Degree-0 cokernel morphism induced by a chain map between resolutions of
// src_p and tgt_p, transported back to the given presentations.
FPMorphism induced_degree0(const ChainMap& phi, const Presentation& src_p, const Presentation& tgt_p);

}  // namespace persres
