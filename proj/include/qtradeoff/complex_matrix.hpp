#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace qtradeoff {

using Complex = std::complex<double>;

/// Dense complex matrix, row-major.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static ComplexMatrix identity(std::size_t n);
  static ComplexMatrix diagonal(std::span<const Complex> entries);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Complex& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Complex& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<const Complex> data() const { return data_; }

  ComplexMatrix adjoint() const;
  Complex trace() const;

  /// Largest absolute entry.
  double max_abs() const;

  ComplexMatrix& operator+=(const ComplexMatrix& o);
  ComplexMatrix& operator-=(const ComplexMatrix& o);
  ComplexMatrix& operator*=(Complex s);

  friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
  friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
  friend ComplexMatrix operator*(ComplexMatrix a, Complex s) { return a *= s; }
  friend ComplexMatrix operator*(Complex s, ComplexMatrix a) { return a *= s; }
  friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);

  std::vector<Complex> apply(std::span<const Complex> v) const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> data_;
};

/// max_ij |a_ij - b_ij|; matrices must have equal shape.
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

/// ||U^dagger U - 1||_max < tol.
bool is_unitary(const ComplexMatrix& u, double tol);

/// ||H - H^dagger||_max <= tol.
bool is_hermitian(const ComplexMatrix& h, double tol);

/// Tr(a * b) without forming the product.
Complex trace_of_product(const ComplexMatrix& a, const ComplexMatrix& b);

Complex inner_product(std::span<const Complex> a, std::span<const Complex> b);

}  // namespace qtradeoff
