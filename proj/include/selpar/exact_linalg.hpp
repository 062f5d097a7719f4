#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace selpar {

using Int = mpz_class;
using Rational = mpq_class;

bool is_prime(std::int64_t n);

class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static IntMatrix from_rows(const std::vector<std::vector<Int>>& rows, std::size_t cols = 0);
  static IntMatrix identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  Int& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Int& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::vector<Int> row(std::size_t i) const;
  void append_row(const std::vector<Int>& r);
  IntMatrix transpose() const;
  bool is_zero() const;

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
  friend bool operator==(const IntMatrix& a, const IntMatrix& b) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Int> data_;
};

struct HermiteForm {
  IntMatrix h;
  IntMatrix u;
};

// Row Hermite form: h = u*m, u unimodular, zero rows last.
HermiteForm hermite_form(const IntMatrix& m);

std::size_t int_rank(const IntMatrix& m);
// Nonzero rows of the Hermite form.
IntMatrix lattice_basis(const IntMatrix& gens);
// Basis (Hermite form) of {v in Z^rows : v*m = 0}.
IntMatrix left_kernel(const IntMatrix& m);
// (Q-span of the rows) intersected with Z^n.
IntMatrix saturate(const IntMatrix& gens);
// Coefficients c with c*basis = v, basis in Hermite form.
std::optional<std::vector<Int>> express_in_basis(const IntMatrix& basis, std::vector<Int> v);
// Diagonal of the Smith form, min(rows, cols) entries, non-negative.
std::vector<Int> smith_diagonal(const IntMatrix& m);
Int abs_det(const IntMatrix& square);

class Modulus {
 public:
  Modulus() = default;
  Modulus(std::int64_t p, int e);

  std::int64_t p() const noexcept { return p_; }
  int e() const noexcept { return e_; }
  std::int64_t value() const noexcept { return q_; }

  std::int64_t reduce(std::int64_t x) const noexcept {
    x %= q_;
    return x < 0 ? x + q_ : x;
  }
  std::int64_t reduce(const Int& x) const;
  std::int64_t mul(std::int64_t a, std::int64_t b) const noexcept { return (a * b) % q_; }
  std::int64_t add(std::int64_t a, std::int64_t b) const noexcept { return (a + b) % q_; }
  std::int64_t sub(std::int64_t a, std::int64_t b) const noexcept { return reduce(a - b); }
  // v_p(x) for x in [0, q); e for zero.
  int valuation(std::int64_t x) const noexcept;
  std::int64_t power(int k) const;
  std::int64_t inverse(std::int64_t unit) const;

  friend bool operator==(const Modulus& a, const Modulus& b) { return a.q_ == b.q_ && a.p_ == b.p_; }

 private:
  std::int64_t p_ = 3;
  int e_ = 1;
  std::int64_t q_ = 3;
};

using Vec = std::vector<std::int64_t>;

class ResidueMatrix {
 public:
  ResidueMatrix() = default;
  ResidueMatrix(Modulus mod, std::size_t rows, std::size_t cols)
      : mod_(mod), rows_(rows), cols_(cols), data_(rows * cols, 0) {}

  static ResidueMatrix from_rows(Modulus mod, const std::vector<Vec>& rows, std::size_t cols);
  static ResidueMatrix identity(Modulus mod, std::size_t n);

  const Modulus& modulus() const noexcept { return mod_; }
  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::int64_t operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  void set(std::size_t i, std::size_t j, std::int64_t v) { data_[i * cols_ + j] = mod_.reduce(v); }

  std::span<const std::int64_t> row_view(std::size_t i) const {
    return {data_.data() + i * cols_, cols_};
  }
  Vec row(std::size_t i) const;
  std::vector<Vec> to_rows() const;
  void append_row(std::span<const std::int64_t> r);

  ResidueMatrix transpose() const;
  ResidueMatrix scaled(std::int64_t k) const;
  ResidueMatrix select_rows(const std::vector<std::size_t>& idx) const;
  ResidueMatrix column_range(std::size_t begin, std::size_t end) const;
  // Same residues reinterpreted in another modulus.
  ResidueMatrix with_modulus(Modulus mod) const;
  bool is_zero() const;

  friend ResidueMatrix operator*(const ResidueMatrix& a, const ResidueMatrix& b);
  friend ResidueMatrix operator+(const ResidueMatrix& a, const ResidueMatrix& b);
  friend ResidueMatrix operator-(const ResidueMatrix& a, const ResidueMatrix& b);
  friend bool operator==(const ResidueMatrix& a, const ResidueMatrix& b) = default;

 private:
  Modulus mod_;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::int64_t> data_;
};

ResidueMatrix vstack(const ResidueMatrix& a, const ResidueMatrix& b);
ResidueMatrix hstack(const ResidueMatrix& a, const ResidueMatrix& b);
Vec vec_times(std::span<const std::int64_t> v, const ResidueMatrix& m);
ResidueMatrix matrix_power(const ResidueMatrix& m, std::uint64_t k);

// Howell form with zero rows removed.
ResidueMatrix howell_form(const ResidueMatrix& m);
// x with x*a = b.
std::optional<ResidueMatrix> solve_linear(const ResidueMatrix& a, const ResidueMatrix& b);
// Howell generators of {x : x*m = 0}.
ResidueMatrix kernel(const ResidueMatrix& m);
std::optional<ResidueMatrix> inverse(const ResidueMatrix& square);

// Submodule arithmetic on Howell-form generator matrices of (Z/p^e)^n.
int span_log_order(const ResidueMatrix& howell);
bool span_contains(const ResidueMatrix& howell, std::span<const std::int64_t> v);
bool span_contains_all(const ResidueMatrix& howell, const ResidueMatrix& rows);
ResidueMatrix span_sum(const ResidueMatrix& a, const ResidueMatrix& b);
ResidueMatrix span_intersection(const ResidueMatrix& a, const ResidueMatrix& b);
// Rank over Z/p (rows of the echelon form).
std::size_t rank_mod_p(const ResidueMatrix& m);

std::string to_string(const ResidueMatrix& m);

}  // namespace selpar
