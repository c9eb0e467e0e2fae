#pragma once

#include <map>
#include <vector>

#include "persres/field.hpp"
#include "persres/grading.hpp"

namespace persres {

// Free persistence module: ordered generator grades (the order fixes the
// basis, so equalities of morphisms are entrywise matrix equalities).
struct FreeModule {
  std::size_t ambient_dim = 0;
  std::vector<Grade> gens;

  FreeModule() = default;
  FreeModule(std::size_t n, std::vector<Grade> g);

  std::size_t rank() const { return gens.size(); }
  std::map<Grade, std::size_t, GradeLess> xi() const;
  FreeModule shifted(const mpq_class& eps) const;
  FreeModule direct_sum(const FreeModule& other) const;
  // evaluate_free: indices of generators with grade <= s, ascending.
  std::vector<std::size_t> alive(const Grade& s) const;
  std::vector<Grade> grades() const { return gens; }
  bool operator==(const FreeModule&) const = default;
};

// Grade-admissible scalar matrix between free modules. Rows are indexed by
// target generators, columns by source generators; a nonzero entry (i, j)
// requires grade(target_i) <= grade(source_j).
struct GradedMatrix {
  FreeModule source;
  FreeModule target;
  Matrix entries;

  GradedMatrix(FreeModule src, FreeModule tgt, Matrix m);

  const Field& field() const { return entries.field(); }
  GradedMatrix shifted(const mpq_class& eps) const;
  // Submatrix of entries between generators alive at s (rows and columns of
  // the evaluated linear map F(s) -> G(s) in the alive bases).
  Matrix evaluate(const Grade& s) const;
  bool operator==(const GradedMatrix&) const = default;

  static GradedMatrix zero(Field f, const FreeModule& src, const FreeModule& tgt);
  static GradedMatrix identity(Field f, const FreeModule& m);
};

bool is_admissible(const FreeModule& target, const FreeModule& source, const Matrix& entries);

GradedMatrix compose(const GradedMatrix& g, const GradedMatrix& f);  // g after f
GradedMatrix add(const GradedMatrix& a, const GradedMatrix& b);
GradedMatrix sub(const GradedMatrix& a, const GradedMatrix& b);

// The smoothing s_eps : F -> F[eps], identity entries; requires eps >= 0.
GradedMatrix smoothing_free(Field f, const FreeModule& m, const mpq_class& eps);

}  // namespace persres
