#include "persres/field.hpp"

#include <sstream>
#include <stdexcept>

namespace persres {

namespace {

bool is_prime(unsigned long n) {
  if (n < 2) return false;
  for (unsigned long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

}  // namespace

Field Field::gf(unsigned long prime) {
  if (!is_prime(prime)) throw std::invalid_argument("gf: modulus is not prime");
  return Field{prime};
}

Field Field::parse_name(const std::string& name) {
  if (name == "rational") return rationals();
  if (name.rfind("gf:", 0) == 0) {
    unsigned long p = std::stoul(name.substr(3));
    return gf(p);
  }
  throw std::invalid_argument("unknown field: " + name);
}

std::string Field::name() const {
  if (is_rational()) return "rational";
  return "gf:" + std::to_string(p);
}

mpq_class Field::normalize(const mpq_class& v) const {
  if (is_rational()) {
    mpq_class r = v;
    r.canonicalize();
    return r;
  }
  // GF(p) values are integers; reduce the numerator into [0, p).
  mpz_class num = v.get_num();
  if (v.get_den() != 1) throw std::invalid_argument("GF(p) value with nontrivial denominator");
  mpz_class r;
  mpz_class m(static_cast<unsigned long>(p));
  mpz_fdiv_r(r.get_mpz_t(), num.get_mpz_t(), m.get_mpz_t());
  return mpq_class(r);
}

mpq_class Field::add(const mpq_class& a, const mpq_class& b) const { return normalize(a + b); }
mpq_class Field::sub(const mpq_class& a, const mpq_class& b) const { return normalize(a - b); }
mpq_class Field::mul(const mpq_class& a, const mpq_class& b) const { return normalize(a * b); }
mpq_class Field::neg(const mpq_class& a) const { return normalize(-a); }

mpq_class Field::inv(const mpq_class& a) const {
  if (is_zero(a)) throw std::domain_error("inverse of zero");
  if (is_rational()) return 1 / a;
  mpz_class r, m(static_cast<unsigned long>(p));
  if (mpz_invert(r.get_mpz_t(), a.get_num().get_mpz_t(), m.get_mpz_t()) == 0)
    throw std::domain_error("not invertible mod p");
  return mpq_class(r);
}

mpq_class Field::div(const mpq_class& a, const mpq_class& b) const { return mul(a, inv(b)); }

mpq_class Field::parse(const std::string& s) const {
  mpq_class q;
  if (q.set_str(s, 10) != 0) throw std::invalid_argument("bad scalar: " + s);
  if (q.get_den() == 0) throw std::invalid_argument("zero denominator: " + s);
  q.canonicalize();
  if (is_rational()) return q;
  // Map a rational literal into GF(p) via num * den^-1.
  mpq_class num(q.get_num()), den(q.get_den());
  return mul(normalize(num), inv(normalize(den)));
}

std::string Field::format(const mpq_class& v) const {
  return v.get_str();
}

mpq_class Field::convert(const mpq_class& v) const {
  if (is_rational()) return v;
  mpq_class num(v.get_num()), den(v.get_den());
  return mul(normalize(num), inv(normalize(den)));
}

Matrix Matrix::identity(Field f, std::size_t n) {
  Matrix m(f, n, n);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i, 1);
  return m;
}

Matrix Matrix::from_rows(Field f, std::size_t cols, const std::vector<Vec>& rows) {
  Matrix m(f, rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw std::invalid_argument("from_rows: ragged row");
    for (std::size_t j = 0; j < cols; ++j) m.set(i, j, rows[i][j]);
  }
  return m;
}

Matrix Matrix::from_cols(Field f, std::size_t rows, const std::vector<Vec>& cols) {
  Matrix m(f, rows, cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) {
    if (cols[j].size() != rows) throw std::invalid_argument("from_cols: ragged column");
    for (std::size_t i = 0; i < rows; ++i) m.set(i, j, cols[j][i]);
  }
  return m;
}

Vec Matrix::row(std::size_t i) const {
  Vec r(cols_);
  for (std::size_t j = 0; j < cols_; ++j) r[j] = at(i, j);
  return r;
}

Vec Matrix::col(std::size_t j) const {
  Vec c(rows_);
  for (std::size_t i = 0; i < rows_; ++i) c[i] = at(i, j);
  return c;
}

Matrix Matrix::transposed() const {
  Matrix t(field_, cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t.set(j, i, at(i, j));
  return t;
}

Matrix Matrix::submatrix(const std::vector<std::size_t>& row_idx,
                         const std::vector<std::size_t>& col_idx) const {
  Matrix m(field_, row_idx.size(), col_idx.size());
  for (std::size_t i = 0; i < row_idx.size(); ++i)
    for (std::size_t j = 0; j < col_idx.size(); ++j) m.set(i, j, at(row_idx[i], col_idx[j]));
  return m;
}

Matrix Matrix::cols_selected(const std::vector<std::size_t>& col_idx) const {
  std::vector<std::size_t> all_rows(rows_);
  for (std::size_t i = 0; i < rows_; ++i) all_rows[i] = i;
  return submatrix(all_rows, col_idx);
}

bool Matrix::is_zero() const {
  for (const auto& v : a_)
    if (sgn(v) != 0) return false;
  return true;
}

Matrix mul(const Matrix& a, const Matrix& b) {
  if (a.field() != b.field()) throw std::invalid_argument("mul: field mismatch");
  if (a.cols() != b.rows()) throw std::invalid_argument("mul: shape mismatch");
  Matrix c(a.field(), a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) {
      mpq_class acc(0);
      for (std::size_t k = 0; k < a.cols(); ++k) acc += a.at(i, k) * b.at(k, j);
      c.set(i, j, acc);
    }
  return c;
}

Matrix add(const Matrix& a, const Matrix& b) {
  if (a.field() != b.field() || a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument("add: shape/field mismatch");
  Matrix c(a.field(), a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c.set(i, j, a.at(i, j) + b.at(i, j));
  return c;
}

Matrix sub(const Matrix& a, const Matrix& b) {
  if (a.field() != b.field() || a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument("sub: shape/field mismatch");
  Matrix c(a.field(), a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c.set(i, j, a.at(i, j) - b.at(i, j));
  return c;
}

Vec matvec(const Matrix& m, const Vec& x) {
  if (x.size() != m.cols()) throw std::invalid_argument("apply: length mismatch");
  Vec y(m.rows(), mpq_class(0));
  for (std::size_t i = 0; i < m.rows(); ++i) {
    mpq_class acc(0);
    for (std::size_t j = 0; j < m.cols(); ++j) acc += m.at(i, j) * x[j];
    y[i] = m.field().normalize(acc);
  }
  return y;
}

RrefResult rref(const Matrix& m) {
  const Field& f = m.field();
  std::vector<Vec> rows(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) rows[i] = m.row(i);

  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t sel = r;
    while (sel < m.rows() && f.is_zero(rows[sel][c])) ++sel;
    if (sel == m.rows()) continue;
    std::swap(rows[r], rows[sel]);
    mpq_class piv_inv = f.inv(rows[r][c]);
    for (std::size_t j = c; j < m.cols(); ++j) rows[r][j] = f.mul(rows[r][j], piv_inv);
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || f.is_zero(rows[i][c])) continue;
      mpq_class factor = rows[i][c];
      for (std::size_t j = c; j < m.cols(); ++j)
        rows[i][j] = f.sub(rows[i][j], f.mul(factor, rows[r][j]));
    }
    pivots.push_back(c);
    ++r;
  }
  Matrix reduced = Matrix::from_rows(f, m.cols(), rows);
  return RrefResult{std::move(reduced), std::move(pivots), r};
}

std::size_t rank(const Matrix& m) { return rref(m).rank; }

std::vector<Vec> kernel_basis(const Matrix& m) {
  RrefResult r = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (std::size_t p : r.pivots) is_pivot[p] = true;
  std::vector<Vec> basis;
  for (std::size_t j = 0; j < m.cols(); ++j) {
    if (is_pivot[j]) continue;
    Vec v(m.cols(), mpq_class(0));
    v[j] = m.field().normalize(mpq_class(1));
    for (std::size_t k = 0; k < r.pivots.size(); ++k)
      v[r.pivots[k]] = m.field().neg(r.reduced.at(k, j));
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<Vec> solve(const Matrix& m, const Vec& b) {
  if (b.size() != m.rows()) throw std::invalid_argument("solve: rhs length mismatch");
  Matrix aug(m.field(), m.rows(), m.cols() + 1);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) aug.set(i, j, m.at(i, j));
    aug.set(i, m.cols(), b[i]);
  }
  RrefResult r = rref(aug);
  for (std::size_t p : r.pivots)
    if (p == m.cols()) return std::nullopt;
  Vec x(m.cols(), mpq_class(0));
  for (std::size_t k = 0; k < r.pivots.size(); ++k) x[r.pivots[k]] = r.reduced.at(k, m.cols());
  return x;
}

Vec EchelonSpan::reduce(Vec v) const {
  if (v.size() != width_) throw std::invalid_argument("EchelonSpan: width mismatch");
  for (std::size_t k = 0; k < rows_.size(); ++k) {
    const mpq_class& c = v[pivots_[k]];
    if (field_.is_zero(c)) continue;
    mpq_class factor = c;
    for (std::size_t j = 0; j < width_; ++j)
      v[j] = field_.sub(v[j], field_.mul(factor, rows_[k][j]));
  }
  return v;
}

bool EchelonSpan::contains(const Vec& v) const { return vec_is_zero(reduce(v)); }

bool EchelonSpan::insert(Vec v) {
  v = reduce(std::move(v));
  std::size_t lead = width_;
  for (std::size_t j = 0; j < width_; ++j)
    if (!field_.is_zero(v[j])) {
      lead = j;
      break;
    }
  if (lead == width_) return false;
  mpq_class inv = field_.inv(v[lead]);
  for (std::size_t j = 0; j < width_; ++j) v[j] = field_.mul(v[j], inv);
  // Back-eliminate to keep the accumulated rows in rref form.
  for (std::size_t k = 0; k < rows_.size(); ++k) {
    const mpq_class& c = rows_[k][lead];
    if (field_.is_zero(c)) continue;
    mpq_class factor = c;
    for (std::size_t j = 0; j < width_; ++j)
      rows_[k][j] = field_.sub(rows_[k][j], field_.mul(factor, v[j]));
  }
  std::size_t pos = 0;
  while (pos < pivots_.size() && pivots_[pos] < lead) ++pos;
  rows_.insert(rows_.begin() + pos, std::move(v));
  pivots_.insert(pivots_.begin() + pos, lead);
  return true;
}

Vec zero_vec(std::size_t n) { return Vec(n, mpq_class(0)); }

bool vec_is_zero(const Vec& v) {
  for (const auto& c : v)
    if (sgn(c) != 0) return false;
  return true;
}

Vec vec_sub(const Field& f, const Vec& a, const Vec& b) {
  if (a.size() != b.size()) throw std::invalid_argument("vec_sub: length mismatch");
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = f.sub(a[i], b[i]);
  return r;
}

Vec vec_scale(const Field& f, const mpq_class& c, const Vec& v) {
  Vec r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) r[i] = f.mul(c, v[i]);
  return r;
}

}  // namespace persres
