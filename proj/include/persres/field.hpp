#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace persres {

using Vec = std::vector<mpq_class>;

// Arithmetic context. p == 0 selects exact rationals, p > 0 the prime field
// GF(p). Rational values are kept canonical by GMP (lowest terms, positive
// denominator); GF(p) values are integral residues in [0, p). A computation
// never mixes contexts: every container carries its Field and binary
// operations require equal fields.
struct Field {
  unsigned long p = 0;

  static Field rationals() { return Field{0}; }
  static Field gf(unsigned long prime);  // throws unless prime is prime
  static Field parse_name(const std::string& name);  // "rational" | "gf:7"

  bool is_rational() const { return p == 0; }
  bool operator==(const Field&) const = default;

  std::string name() const;

  mpq_class normalize(const mpq_class& v) const;
  mpq_class add(const mpq_class& a, const mpq_class& b) const;
  mpq_class sub(const mpq_class& a, const mpq_class& b) const;
  mpq_class mul(const mpq_class& a, const mpq_class& b) const;
  mpq_class neg(const mpq_class& a) const;
  mpq_class inv(const mpq_class& a) const;  // throws on zero
  mpq_class div(const mpq_class& a, const mpq_class& b) const;
  bool is_zero(const mpq_class& v) const { return sgn(v) == 0; }
  bool is_one(const mpq_class& v) const { return v == 1; }
  mpq_class from_long(long k) const { return normalize(mpq_class(k)); }

  // "p/q" or "p"; for GF(p) the value is mapped via num * den^-1 mod p.
  mpq_class parse(const std::string& s) const;
  std::string format(const mpq_class& v) const;
  // Map an exact rational into this field (num * den^-1 for GF(p)).
  mpq_class convert(const mpq_class& v) const;
};

// Dense row-major matrix over a Field. Zero-dimensional shapes are legal.
class Matrix {
 public:
  Matrix(Field f, std::size_t rows, std::size_t cols)
      : field_(f), rows_(rows), cols_(cols), a_(rows * cols, mpq_class(0)) {}

  static Matrix identity(Field f, std::size_t n);
  static Matrix from_rows(Field f, std::size_t cols, const std::vector<Vec>& rows);
  static Matrix from_cols(Field f, std::size_t rows, const std::vector<Vec>& cols);

  const Field& field() const { return field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  const mpq_class& at(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }
  void set(std::size_t i, std::size_t j, const mpq_class& v) { a_[i * cols_ + j] = field_.normalize(v); }

  Vec row(std::size_t i) const;
  Vec col(std::size_t j) const;
  Matrix transposed() const;
  Matrix submatrix(const std::vector<std::size_t>& row_idx,
                   const std::vector<std::size_t>& col_idx) const;
  Matrix cols_selected(const std::vector<std::size_t>& col_idx) const;

  bool is_zero() const;
  bool operator==(const Matrix& o) const {
    return field_ == o.field_ && rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
  }

 private:
  Field field_;
  std::size_t rows_, cols_;
  std::vector<mpq_class> a_;
};

Matrix mul(const Matrix& a, const Matrix& b);
Matrix add(const Matrix& a, const Matrix& b);
Matrix sub(const Matrix& a, const Matrix& b);
Vec matvec(const Matrix& m, const Vec& x);  // m * x

struct RrefResult {
  Matrix reduced;
  std::vector<std::size_t> pivots;  // strictly increasing pivot columns
  std::size_t rank = 0;
};

// Reduced row echelon form with deterministic (leftmost nonzero, topmost row)
// pivoting.
RrefResult rref(const Matrix& m);
std::size_t rank(const Matrix& m);

// Basis of the right null space, one vector per free column in ascending
// order; v[free] = 1, v[pivot_k] = -R[k][free].
std::vector<Vec> kernel_basis(const Matrix& m);

// Particular solution of m x = b with free variables set to zero, or nullopt
// when inconsistent.
std::optional<Vec> solve(const Matrix& m, const Vec& b);

// Incremental canonical row echelon accumulator over a fixed width; the
// reduce() result only depends on the accumulated span, not insertion order.
class EchelonSpan {
 public:
  EchelonSpan(Field f, std::size_t width) : field_(f), width_(width) {}

  std::size_t dim() const { return rows_.size(); }
  std::size_t width() const { return width_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }

  Vec reduce(Vec v) const;
  bool contains(const Vec& v) const;
  bool insert(Vec v);  // returns true when the span grew

 private:
  Field field_;
  std::size_t width_;
  std::vector<Vec> rows_;            // kept in rref form
  std::vector<std::size_t> pivots_;  // sorted, parallel to rows_
};

// Vector helpers used across the solvers.
Vec zero_vec(std::size_t n);
bool vec_is_zero(const Vec& v);
Vec vec_sub(const Field& f, const Vec& a, const Vec& b);
Vec vec_scale(const Field& f, const mpq_class& c, const Vec& v);

}  // namespace persres
