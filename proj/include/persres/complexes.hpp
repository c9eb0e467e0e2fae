#pragma once

#include <map>
#include <optional>
#include <vector>

#include "persres/freemod.hpp"

namespace persres {

// Bounded chain complex of free modules with cohomological indexing: the
// differential in degree j maps term j to term j+1, and resolutions live in
// degrees <= 0. Absent degrees are zero.
struct FreeChainComplex {
  std::size_t ambient_dim = 0;
  Field field;
  std::map<int, FreeModule> terms;       // nonzero terms only
  std::map<int, GradedMatrix> diffs;     // key j: term j -> term j+1

  FreeChainComplex(std::size_t n, Field f) : ambient_dim(n), field(f), empty_(n, {}) {}

  bool has_term(int j) const { return terms.count(j) != 0; }
  const FreeModule& term(int j) const;  // empty module when absent
  FreeModule term_or_empty(int j) const;
  GradedMatrix diff_or_zero(int j) const;  // zero map term j -> term j+1

  int min_degree() const;  // 0 when empty
  int max_degree() const;

  void set_term(int j, FreeModule m);
  void set_diff(int j, GradedMatrix d);

  FreeChainComplex shifted(const mpq_class& eps) const;
  bool validate() const;  // d o d = 0 degreewise (admissibility holds by construction)
  bool operator==(const FreeChainComplex& o) const {
    return ambient_dim == o.ambient_dim && field == o.field && terms == o.terms && diffs == o.diffs;
  }

 private:
  FreeModule empty_;
};

FreeChainComplex direct_sum(const FreeChainComplex& a, const FreeChainComplex& b);
FreeChainComplex shift_complex(const FreeChainComplex& x, const mpq_class& eps);

// Chain map: degreewise graded matrices commuting with the differentials.
struct ChainMap {
  FreeChainComplex source;
  FreeChainComplex target;
  std::map<int, GradedMatrix> comps;  // absent degrees are zero maps

  ChainMap(FreeChainComplex src, FreeChainComplex tgt) : source(std::move(src)), target(std::move(tgt)) {}

  GradedMatrix comp_or_zero(int j) const;
  bool is_valid() const;  // commutes with differentials degreewise
  ChainMap shifted(const mpq_class& eps) const;
  bool operator==(const ChainMap&) const = default;

  static ChainMap zero(const FreeChainComplex& src, const FreeChainComplex& tgt);
  static ChainMap identity(const FreeChainComplex& x);
};

ChainMap compose(const ChainMap& g, const ChainMap& f);
ChainMap add(const ChainMap& a, const ChainMap& b);
ChainMap sub(const ChainMap& a, const ChainMap& b);

// The degreewise smoothing chain morphism s_eps : X -> X[eps]; eps >= 0.
ChainMap smoothing_chain_map(const FreeChainComplex& x, const mpq_class& eps);

// Degree-lowering homotopy data h^i : X^i -> Y^{i-1}.
struct Homotopy {
  std::map<int, GradedMatrix> comps;
  bool operator==(const Homotopy&) const = default;
};

// Exact decision: solves phi^i = d_Y^{i-1} h^i + h^{i+1} d_X^i in the
// admissible entries of h and returns a witness homotopy, or nullopt.
std::optional<Homotopy> is_nullhomotopic(const ChainMap& phi);

// Re-check a homotopy witness entrywise against the identity above.
bool homotopy_witnesses(const ChainMap& phi, const Homotopy& h);

// Basis of the space of chain maps X -> Y.
std::vector<ChainMap> chain_map_space(const FreeChainComplex& x, const FreeChainComplex& y);

}  // namespace persres
