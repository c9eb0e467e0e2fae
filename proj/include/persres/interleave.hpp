#pragma once

#include <optional>
#include <string>
#include <vector>

#include "persres/resolution.hpp"

namespace persres {

enum class Level { module, homotopy, derived };
std::string level_name(Level level);
Level parse_level(const std::string& name);

// Witness data for an eps-interleaving at one of the three levels. Module
// certificates carry the two morphisms; homotopy/derived certificates carry
// chain maps between minimal free resolutions plus the two homotopies
// witnessing the hexagon up to homotopy.
struct InterleavingCertificate {
  Level level = Level::module;
  mpq_class epsilon;
  Field field;
  std::optional<FPMorphism> forward;
  std::optional<FPMorphism> backward;
  std::optional<ChainMap> chain_forward;
  std::optional<ChainMap> chain_backward;
  std::optional<Homotopy> homotopy_forward;
  std::optional<Homotopy> homotopy_backward;
};

enum class SearchStatus { found, none, budget_exhausted };

struct SearchResult {
  SearchStatus status = SearchStatus::none;
  std::optional<InterleavingCertificate> certificate;
  unsigned long long candidates_tried = 0;
};

// Exact hexagon check: g[eps] o f = s_2eps and f[eps] o g = s_2eps.
bool verify_module_interleaving(const FPMorphism& f, const FPMorphism& g, const mpq_class& eps);

// Enumerates f over hom_space(M, N[eps]) coefficients in the search field
// (lexicographic); for each f the hexagon conditions are linear in g and are
// solved exactly. A none is conclusive over the search field only.
SearchResult search_module_interleaving(const Presentation& m, const Presentation& n,
                                        const mpq_class& eps, Field search_field,
                                        unsigned long long budget);

// Hexagon up to chain homotopy, decided by the nullhomotopy solver.
std::optional<std::pair<Homotopy, Homotopy>> verify_homotopy_interleaving(const ChainMap& phi,
                                                                          const ChainMap& psi,
                                                                          const mpq_class& eps);

// phi enumerated over chain_map_space(X, Y[eps]); for fixed phi the
// conditions on (psi, h, h') are jointly linear and solved in one pass.
SearchResult search_homotopy_interleaving(const FreeChainComplex& x, const FreeChainComplex& y,
                                          const mpq_class& eps, Field search_field,
                                          unsigned long long budget);

// Derived-level decisions via projective replacement: resolve both modules
// minimally and decide at the homotopy level.
SearchResult derived_interleaving_search(const Presentation& m, const Presentation& n,
                                         const mpq_class& eps, Field search_field,
                                         unsigned long long budget);
std::optional<std::pair<Homotopy, Homotopy>> derived_interleaving_verify(const ChainMap& phi,
                                                                         const ChainMap& psi,
                                                                         const mpq_class& eps);

// Sound necessary condition: s_2eps^M factors through N(.+eps), so
// rank M(s <= s+2eps) <= dim N(s+eps) on the joint grid, and symmetrically.
// True means an eps-interleaving is impossible.
bool rank_obstruction(const Presentation& m, const Presentation& n, const mpq_class& eps);

struct BracketEvidence {
  mpq_class epsilon;
  std::string kind;  // "rank-obstruction" | "certificate" | "search-none" | "budget-exhausted"
  std::string detail;
};

// Verified interleaving-distance bracket, never a bare number.
struct DistanceBracket {
  Level level = Level::module;
  Field field;
  mpq_class lower;                  // d >= lower (certified by obstructions / conclusive nones)
  std::optional<mpq_class> upper;   // nullopt = no certificate found (bracket open above)
  std::optional<InterleavingCertificate> witness;
  std::vector<BracketEvidence> evidence;
};

// Candidate epsilons are {0} and all |u-v|, |u-v|/2 over joint grid
// coordinates; obstructions at candidates and gap midpoints raise the lower
// bound, certificates set the upper bound.
DistanceBracket estimate_distance(const Presentation& m, const Presentation& n, Level level,
                                  Field search_field, unsigned long long budget);
std::vector<mpq_class> candidate_epsilons(const Presentation& m, const Presentation& n);

struct IsometryRow {
  mpq_class epsilon;
  SearchStatus module_status;
  SearchStatus homotopy_status;
  SearchStatus derived_status;
  bool agree = false;
};

struct IsometryReport {
  Field field;
  std::vector<IsometryRow> rows;
  bool all_agree = true;
};

// Per epsilon: module-level existence <=> homotopy-level existence on the
// minimal resolutions <=> derived-level existence; a violation indicates an
// implementation bug, never an expected outcome.
IsometryReport isometry_check(const Presentation& m, const Presentation& n,
                              const std::vector<mpq_class>& eps_list, Field search_field,
                              unsigned long long budget);

}  // namespace persres
