#include "selpar/exact_linalg.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

#include "selpar/error.hpp"

namespace selpar {

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// ---------------------------------------------------------------- IntMatrix

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<Int>>& rows, std::size_t cols) {
  if (!rows.empty()) cols = rows.front().size();
  IntMatrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw input_error("ragged integer matrix");
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

std::vector<Int> IntMatrix::row(std::size_t i) const {
  return {data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_};
}

void IntMatrix::append_row(const std::vector<Int>& r) {
  if (rows_ == 0 && data_.empty()) cols_ = r.size();
  if (r.size() != cols_) throw input_error("row length mismatch");
  data_.insert(data_.end(), r.begin(), r.end());
  ++rows_;
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

bool IntMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const Int& x) { return x == 0; });
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols_ != b.rows_) throw input_error("integer matrix shape mismatch");
  IntMatrix c(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Int& x = a(i, k);
      if (x == 0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += x * b(k, j);
    }
  return c;
}

namespace {

void swap_rows(IntMatrix& m, std::size_t a, std::size_t b) {
  for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(a, j), m(b, j));
}

// rows (a, b) <- (s*a + t*b, u*a + v*b)
void combine_rows(IntMatrix& m, std::size_t a, std::size_t b, const Int& s, const Int& t,
                  const Int& u, const Int& v) {
  for (std::size_t j = 0; j < m.cols(); ++j) {
    Int x = m(a, j), y = m(b, j);
    m(a, j) = s * x + t * y;
    m(b, j) = u * x + v * y;
  }
}

void add_row_multiple(IntMatrix& m, std::size_t dst, std::size_t src, const Int& k) {
  for (std::size_t j = 0; j < m.cols(); ++j) m(dst, j) += k * m(src, j);
}

}  // namespace

HermiteForm hermite_form(const IntMatrix& m) {
  IntMatrix h = m;
  IntMatrix u = IntMatrix::identity(m.rows());
  std::size_t r = 0;
  for (std::size_t col = 0; col < h.cols() && r < h.rows(); ++col) {
    for (std::size_t i = r + 1; i < h.rows(); ++i) {
      if (h(i, col) == 0) continue;
      if (h(r, col) == 0) {
        swap_rows(h, r, i);
        swap_rows(u, r, i);
        continue;
      }
      Int g, s, t;
      mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), h(r, col).get_mpz_t(),
                 h(i, col).get_mpz_t());
      Int a = h(r, col) / g, b = h(i, col) / g;
      combine_rows(h, r, i, s, t, -b, a);
      combine_rows(u, r, i, s, t, -b, a);
    }
    if (h(r, col) == 0) continue;
    if (h(r, col) < 0) {
      for (std::size_t j = 0; j < h.cols(); ++j) h(r, j) = -h(r, j);
      for (std::size_t j = 0; j < u.cols(); ++j) u(r, j) = -u(r, j);
    }
    for (std::size_t i = 0; i < r; ++i) {
      Int q;
      mpz_fdiv_q(q.get_mpz_t(), h(i, col).get_mpz_t(), h(r, col).get_mpz_t());
      if (q == 0) continue;
      add_row_multiple(h, i, r, -q);
      add_row_multiple(u, i, r, -q);
    }
    ++r;
  }
  return {std::move(h), std::move(u)};
}

namespace {

bool row_is_zero(const IntMatrix& m, std::size_t i) {
  for (std::size_t j = 0; j < m.cols(); ++j)
    if (m(i, j) != 0) return false;
  return true;
}

}  // namespace

std::size_t int_rank(const IntMatrix& m) { return lattice_basis(m).rows(); }

IntMatrix lattice_basis(const IntMatrix& gens) {
  auto hf = hermite_form(gens);
  IntMatrix out(0, gens.cols());
  for (std::size_t i = 0; i < hf.h.rows(); ++i)
    if (!row_is_zero(hf.h, i)) out.append_row(hf.h.row(i));
  return out;
}

IntMatrix left_kernel(const IntMatrix& m) {
  auto hf = hermite_form(m);
  IntMatrix k(0, m.rows());
  for (std::size_t i = 0; i < hf.h.rows(); ++i)
    if (row_is_zero(hf.h, i)) k.append_row(hf.u.row(i));
  return lattice_basis(k);
}

IntMatrix saturate(const IntMatrix& gens) {
  const std::size_t n = gens.cols();
  if (gens.rows() == 0) return IntMatrix(0, n);
  IntMatrix perp = left_kernel(gens.transpose());
  if (perp.rows() == 0) return IntMatrix::identity(n);
  return left_kernel(perp.transpose());
}

std::optional<std::vector<Int>> express_in_basis(const IntMatrix& basis, std::vector<Int> v) {
  if (v.size() != basis.cols()) throw input_error("vector length mismatch");
  std::vector<Int> c(basis.rows());
  for (std::size_t i = 0; i < basis.rows(); ++i) {
    std::size_t piv = 0;
    while (piv < basis.cols() && basis(i, piv) == 0) ++piv;
    if (piv == basis.cols()) continue;
    if (v[piv] == 0) continue;
    if (!mpz_divisible_p(v[piv].get_mpz_t(), basis(i, piv).get_mpz_t())) return std::nullopt;
    c[i] = v[piv] / basis(i, piv);
    for (std::size_t j = 0; j < basis.cols(); ++j) v[j] -= c[i] * basis(i, j);
  }
  for (const auto& x : v)
    if (x != 0) return std::nullopt;
  return c;
}

std::vector<Int> smith_diagonal(const IntMatrix& m) {
  IntMatrix a = m;
  const std::size_t rows = a.rows(), cols = a.cols();
  const std::size_t len = std::min(rows, cols);
  std::vector<Int> diag;
  for (std::size_t t = 0; t < len; ++t) {
    for (;;) {
      // smallest nonzero entry in the trailing block
      std::size_t pi = rows, pj = cols;
      for (std::size_t i = t; i < rows; ++i)
        for (std::size_t j = t; j < cols; ++j)
          if (a(i, j) != 0 && (pi == rows || abs(a(i, j)) < abs(a(pi, pj)))) {
            pi = i;
            pj = j;
          }
      if (pi == rows) {
        diag.resize(len, 0);
        return diag;
      }
      swap_rows(a, t, pi);
      for (std::size_t i = 0; i < rows; ++i) std::swap(a(i, t), a(i, pj));
      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        Int q;
        mpz_fdiv_q(q.get_mpz_t(), a(i, t).get_mpz_t(), a(t, t).get_mpz_t());
        if (q != 0) add_row_multiple(a, i, t, -q);
        if (a(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        Int q;
        mpz_fdiv_q(q.get_mpz_t(), a(t, j).get_mpz_t(), a(t, t).get_mpz_t());
        if (q != 0)
          for (std::size_t i = 0; i < rows; ++i) a(i, j) -= q * a(i, t);
        if (a(t, j) != 0) clean = false;
      }
      if (!clean) continue;
      // pivot must divide the rest of the block
      bool divides = true;
      for (std::size_t i = t + 1; i < rows && divides; ++i)
        for (std::size_t j = t + 1; j < cols; ++j)
          if (!mpz_divisible_p(a(i, j).get_mpz_t(), a(t, t).get_mpz_t())) {
            add_row_multiple(a, t, i, 1);
            divides = false;
            break;
          }
      if (divides) break;
    }
    diag.push_back(abs(a(t, t)));
  }
  return diag;
}

Int abs_det(const IntMatrix& square) {
  if (square.rows() != square.cols()) throw input_error("determinant of a non-square matrix");
  auto hf = hermite_form(square);
  Int d = 1;
  for (std::size_t i = 0; i < square.rows(); ++i) d *= hf.h(i, i);
  return abs(d);
}

// ---------------------------------------------------------------- Modulus

Modulus::Modulus(std::int64_t p, int e) : p_(p), e_(e), q_(1) {
  if (p == 2 || !is_prime(p)) throw hypothesis_error("modulus prime must be an odd prime, got " + std::to_string(p));
  if (e < 1) throw input_error("modulus exponent must be positive");
  for (int i = 0; i < e; ++i) {
    q_ *= p;
    if (q_ >= (std::int64_t{1} << 31)) throw input_error("modulus p^e exceeds 2^31");
  }
}

std::int64_t Modulus::reduce(const Int& x) const {
  Int r;
  mpz_fdiv_r_ui(r.get_mpz_t(), x.get_mpz_t(), static_cast<unsigned long>(q_));
  return r.get_si();
}

int Modulus::valuation(std::int64_t x) const noexcept {
  if (x == 0) return e_;
  int v = 0;
  while (x % p_ == 0) {
    x /= p_;
    ++v;
  }
  return v;
}

std::int64_t Modulus::power(int k) const {
  if (k < 0 || k > e_) throw input_error("p-power outside [0, e]");
  std::int64_t r = 1;
  for (int i = 0; i < k; ++i) r *= p_;
  return r;
}

namespace {

// s*a + t*b = g
std::int64_t xgcd(std::int64_t a, std::int64_t b, std::int64_t& s, std::int64_t& t) {
  std::int64_t s0 = 1, s1 = 0, t0 = 0, t1 = 1;
  while (b != 0) {
    std::int64_t q = a / b;
    std::tie(a, b) = std::make_pair(b, a - q * b);
    std::tie(s0, s1) = std::make_pair(s1, s0 - q * s1);
    std::tie(t0, t1) = std::make_pair(t1, t0 - q * t1);
  }
  s = s0;
  t = t0;
  return a;
}

}  // namespace

std::int64_t Modulus::inverse(std::int64_t unit) const {
  std::int64_t s, t;
  if (xgcd(reduce(unit), q_, s, t) != 1) throw input_error("inverse of a non-unit");
  return reduce(s);
}

// ---------------------------------------------------------------- ResidueMatrix

ResidueMatrix ResidueMatrix::from_rows(Modulus mod, const std::vector<Vec>& rows, std::size_t cols) {
  if (!rows.empty()) cols = rows.front().size();
  ResidueMatrix m(mod, rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw input_error("ragged residue matrix");
    for (std::size_t j = 0; j < cols; ++j) m.set(i, j, rows[i][j]);
  }
  return m;
}

ResidueMatrix ResidueMatrix::identity(Modulus mod, std::size_t n) {
  ResidueMatrix m(mod, n, n);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i, 1);
  return m;
}

Vec ResidueMatrix::row(std::size_t i) const {
  auto r = row_view(i);
  return {r.begin(), r.end()};
}

std::vector<Vec> ResidueMatrix::to_rows() const {
  std::vector<Vec> out;
  for (std::size_t i = 0; i < rows_; ++i) out.push_back(row(i));
  return out;
}

void ResidueMatrix::append_row(std::span<const std::int64_t> r) {
  if (r.size() != cols_) throw input_error("row length mismatch");
  for (auto x : r) data_.push_back(mod_.reduce(x));
  ++rows_;
}

ResidueMatrix ResidueMatrix::transpose() const {
  ResidueMatrix t(mod_, cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t.data_[j * rows_ + i] = (*this)(i, j);
  return t;
}

ResidueMatrix ResidueMatrix::scaled(std::int64_t k) const {
  ResidueMatrix out = *this;
  k = mod_.reduce(k);
  for (auto& x : out.data_) x = mod_.mul(x, k);
  return out;
}

ResidueMatrix ResidueMatrix::select_rows(const std::vector<std::size_t>& idx) const {
  ResidueMatrix out(mod_, 0, cols_);
  for (auto i : idx) out.append_row(row_view(i));
  return out;
}

ResidueMatrix ResidueMatrix::column_range(std::size_t begin, std::size_t end) const {
  ResidueMatrix out(mod_, rows_, end - begin);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = begin; j < end; ++j) out.data_[i * (end - begin) + j - begin] = (*this)(i, j);
  return out;
}

ResidueMatrix ResidueMatrix::with_modulus(Modulus mod) const {
  ResidueMatrix out(mod, rows_, cols_);
  for (std::size_t k = 0; k < data_.size(); ++k) out.data_[k] = mod.reduce(data_[k]);
  return out;
}

bool ResidueMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](std::int64_t x) { return x == 0; });
}

ResidueMatrix operator*(const ResidueMatrix& a, const ResidueMatrix& b) {
  if (!(a.mod_ == b.mod_)) throw input_error("modulus mismatch");
  if (a.cols_ != b.rows_) throw input_error("residue matrix shape mismatch");
  const auto q = a.mod_.value();
  ResidueMatrix c(a.mod_, a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      auto x = a(i, k);
      if (x == 0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) {
        auto& dst = c.data_[i * b.cols_ + j];
        dst = (dst + x * b(k, j)) % q;
      }
    }
  return c;
}

ResidueMatrix operator+(const ResidueMatrix& a, const ResidueMatrix& b) {
  if (!(a.mod_ == b.mod_) || a.rows_ != b.rows_ || a.cols_ != b.cols_)
    throw input_error("residue matrix sum mismatch");
  ResidueMatrix c = a;
  for (std::size_t k = 0; k < c.data_.size(); ++k) c.data_[k] = a.mod_.add(a.data_[k], b.data_[k]);
  return c;
}

ResidueMatrix operator-(const ResidueMatrix& a, const ResidueMatrix& b) {
  if (!(a.mod_ == b.mod_) || a.rows_ != b.rows_ || a.cols_ != b.cols_)
    throw input_error("residue matrix difference mismatch");
  ResidueMatrix c = a;
  for (std::size_t k = 0; k < c.data_.size(); ++k) c.data_[k] = a.mod_.sub(a.data_[k], b.data_[k]);
  return c;
}

ResidueMatrix vstack(const ResidueMatrix& a, const ResidueMatrix& b) {
  if (!(a.modulus() == b.modulus()) || a.cols() != b.cols()) throw input_error("vstack mismatch");
  ResidueMatrix out = a;
  for (std::size_t i = 0; i < b.rows(); ++i) out.append_row(b.row_view(i));
  return out;
}

ResidueMatrix hstack(const ResidueMatrix& a, const ResidueMatrix& b) {
  if (!(a.modulus() == b.modulus()) || a.rows() != b.rows()) throw input_error("hstack mismatch");
  ResidueMatrix out(a.modulus(), a.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) out.set(i, j, a(i, j));
    for (std::size_t j = 0; j < b.cols(); ++j) out.set(i, a.cols() + j, b(i, j));
  }
  return out;
}

Vec vec_times(std::span<const std::int64_t> v, const ResidueMatrix& m) {
  if (v.size() != m.rows()) throw input_error("vector/matrix shape mismatch");
  const auto q = m.modulus().value();
  Vec out(m.cols(), 0);
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (v[k] == 0) continue;
    for (std::size_t j = 0; j < m.cols(); ++j) out[j] = (out[j] + v[k] * m(k, j)) % q;
  }
  return out;
}

ResidueMatrix matrix_power(const ResidueMatrix& m, std::uint64_t k) {
  ResidueMatrix result = ResidueMatrix::identity(m.modulus(), m.rows());
  ResidueMatrix base = m;
  while (k) {
    if (k & 1) result = result * base;
    k >>= 1;
    if (k) base = base * base;
  }
  return result;
}

// ---------------------------------------------------------------- Howell form

namespace {

using Rows = std::vector<Vec>;

bool vec_is_zero(const Vec& v) {
  return std::all_of(v.begin(), v.end(), [](std::int64_t x) { return x == 0; });
}

// Echelon rows with pivots p^k, entries above pivots reduced, and the
// annihilator of every row absorbed by the rows below it.
Rows howell_rows(Rows a, const Modulus& mod, std::size_t ncols) {
  const std::int64_t q = mod.value();
  std::size_t r = 0;
  for (std::size_t col = 0; col < ncols; ++col) {
    for (std::size_t i = r; i < a.size(); ++i) {
      if (a[i][col] == 0 || i == r) continue;
      if (a[r][col] == 0) {
        std::swap(a[r], a[i]);
        continue;
      }
      std::int64_t s, t;
      const std::int64_t x = a[r][col], y = a[i][col];
      const std::int64_t g = xgcd(x, y, s, t);
      const std::int64_t u = mod.reduce(-(y / g)), v = x / g;
      s = mod.reduce(s);
      t = mod.reduce(t);
      for (std::size_t j = col; j < ncols; ++j) {
        const std::int64_t rj = a[r][j], ij = a[i][j];
        a[r][j] = (s * rj + t * ij) % q;
        a[i][j] = (u * rj + v * ij) % q;
      }
    }
    if (r >= a.size() || a[r][col] == 0) continue;
    const int k = mod.valuation(a[r][col]);
    const std::int64_t pk = mod.power(k);
    const std::int64_t unit = mod.inverse(a[r][col] / pk);
    for (std::size_t j = col; j < ncols; ++j) a[r][j] = mod.mul(a[r][j], unit);
    for (std::size_t i = 0; i < r; ++i) {
      const std::int64_t f = a[i][col] / pk;
      if (f == 0) continue;
      for (std::size_t j = col; j < ncols; ++j) a[i][j] = mod.sub(a[i][j], f * a[r][j] % q);
    }
    if (k > 0) {
      Vec ann(ncols, 0);
      const std::int64_t scale = mod.power(mod.e() - k);
      for (std::size_t j = col + 1; j < ncols; ++j) ann[j] = mod.mul(a[r][j], scale);
      if (!vec_is_zero(ann)) a.push_back(std::move(ann));
    }
    ++r;
  }
  a.resize(std::min(r, a.size()));
  return a;
}

Rows rows_of(const ResidueMatrix& m) { return m.to_rows(); }

std::size_t pivot_of(const Vec& row) {
  std::size_t j = 0;
  while (j < row.size() && row[j] == 0) ++j;
  return j;
}

// Greedy reduction of v against Howell rows restricted to columns < ncols.
// Returns false if v does not reduce to zero.
bool reduce_against(const Rows& h, const Modulus& mod, std::size_t ncols, Vec& v, Vec* coeffs) {
  for (std::size_t i = 0; i < h.size(); ++i) {
    const std::size_t c = pivot_of(h[i]);
    if (c >= ncols) continue;
    if (v[c] == 0) continue;
    const std::int64_t pk = h[i][c];
    if (v[c] % pk != 0) return false;
    const std::int64_t f = v[c] / pk;
    for (std::size_t j = 0; j < h[i].size(); ++j) {
      if (j < ncols)
        v[j] = mod.sub(v[j], f * h[i][j] % mod.value());
      else if (coeffs)
        (*coeffs)[j - ncols] = mod.add((*coeffs)[j - ncols], f * h[i][j] % mod.value());
    }
  }
  for (std::size_t j = 0; j < ncols; ++j)
    if (v[j] != 0) return false;
  return true;
}

}  // namespace

ResidueMatrix howell_form(const ResidueMatrix& m) {
  auto h = howell_rows(rows_of(m), m.modulus(), m.cols());
  return ResidueMatrix::from_rows(m.modulus(), h, m.cols());
}

std::optional<ResidueMatrix> solve_linear(const ResidueMatrix& a, const ResidueMatrix& b) {
  if (!(a.modulus() == b.modulus())) throw input_error("solve_linear: modulus mismatch");
  if (a.cols() != b.cols()) throw input_error("solve_linear: shape mismatch");
  const auto& mod = a.modulus();
  const std::size_t n = a.cols(), r = a.rows();
  auto aug = hstack(a, ResidueMatrix::identity(mod, r));
  auto h = howell_rows(rows_of(aug), mod, n + r);
  ResidueMatrix x(mod, b.rows(), r);
  for (std::size_t i = 0; i < b.rows(); ++i) {
    Vec v = b.row(i);
    Vec coeffs(r, 0);
    v.resize(n);
    if (!reduce_against(h, mod, n, v, &coeffs)) return std::nullopt;
    for (std::size_t j = 0; j < r; ++j) x.set(i, j, coeffs[j]);
  }
  return x;
}

ResidueMatrix kernel(const ResidueMatrix& m) {
  const auto& mod = m.modulus();
  const std::size_t n = m.cols(), r = m.rows();
  auto aug = hstack(m, ResidueMatrix::identity(mod, r));
  auto h = howell_rows(rows_of(aug), mod, n + r);
  Rows k;
  for (const auto& row : h)
    if (pivot_of(row) >= n) k.emplace_back(row.begin() + static_cast<std::ptrdiff_t>(n), row.end());
  return ResidueMatrix::from_rows(mod, howell_rows(std::move(k), mod, r), r);
}

std::optional<ResidueMatrix> inverse(const ResidueMatrix& square) {
  if (square.rows() != square.cols()) throw input_error("inverse of a non-square matrix");
  return solve_linear(square, ResidueMatrix::identity(square.modulus(), square.rows()));
}

int span_log_order(const ResidueMatrix& howell) {
  const auto& mod = howell.modulus();
  int total = 0;
  for (std::size_t i = 0; i < howell.rows(); ++i) {
    auto row = howell.row_view(i);
    std::size_t c = 0;
    while (c < row.size() && row[c] == 0) ++c;
    if (c == row.size()) continue;
    total += mod.e() - mod.valuation(row[c]);
  }
  return total;
}

bool span_contains(const ResidueMatrix& howell, std::span<const std::int64_t> v) {
  Vec w(v.begin(), v.end());
  for (auto& x : w) x = howell.modulus().reduce(x);
  return reduce_against(rows_of(howell), howell.modulus(), howell.cols(), w, nullptr);
}

bool span_contains_all(const ResidueMatrix& howell, const ResidueMatrix& rows) {
  auto h = rows_of(howell);
  for (std::size_t i = 0; i < rows.rows(); ++i) {
    Vec w = rows.row(i);
    if (!reduce_against(h, howell.modulus(), howell.cols(), w, nullptr)) return false;
  }
  return true;
}

ResidueMatrix span_sum(const ResidueMatrix& a, const ResidueMatrix& b) {
  return howell_form(vstack(a, b));
}

ResidueMatrix span_intersection(const ResidueMatrix& a, const ResidueMatrix& b) {
  auto k = kernel(vstack(a, b));
  return howell_form(k.column_range(0, a.rows()) * a);
}

std::size_t rank_mod_p(const ResidueMatrix& m) {
  Modulus fp(m.modulus().p(), 1);
  return howell_form(m.with_modulus(fp)).rows();
}

std::string to_string(const ResidueMatrix& m) {
  std::ostringstream out;
  out << '[';
  for (std::size_t i = 0; i < m.rows(); ++i) {
    out << (i ? ",[" : "[");
    for (std::size_t j = 0; j < m.cols(); ++j) out << (j ? "," : "") << m(i, j);
    out << ']';
  }
  out << ']';
  return out.str();
}

}  // namespace selpar
