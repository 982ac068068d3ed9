#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace sqkd {

using Complex = std::complex<double>;
using ComplexVector = std::vector<Complex>;

// Dense row-major complex matrix. Every matrix in this library is tiny
// (at most 64 x 64), so storage is a flat vector and products are naive.
class ComplexMatrix {
 public:
  static constexpr std::size_t kMaxDim = 64;

  ComplexMatrix() : rows_(0), cols_(0) {}
  ComplexMatrix(std::size_t rows, std::size_t cols);
  ComplexMatrix(std::size_t rows, std::size_t cols, std::initializer_list<Complex> entries);

  static ComplexMatrix identity(std::size_t n);
  static ComplexMatrix from_columns(std::span<const ComplexVector> columns);
  // |v><w|
  static ComplexMatrix outer(std::span<const Complex> v, std::span<const Complex> w);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Complex& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Complex& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  ComplexVector column(std::size_t c) const;
  ComplexMatrix adjoint() const;
  Complex trace() const;

  // Largest |M[i][j] - conj(M[j][i])|; square matrices only.
  double hermitian_asymmetry() const;

  ComplexMatrix& operator+=(const ComplexMatrix& other);
  ComplexMatrix& operator*=(Complex scale);

  friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
  friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
  friend ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b);
  friend ComplexMatrix operator*(Complex s, ComplexMatrix m) { return m *= s; }
  friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

 private:
  std::size_t rows_;
  std::size_t cols_;
  ComplexVector data_;
};

// M v
ComplexVector matvec(const ComplexMatrix& m, std::span<const Complex> v);

// <a|b>, conjugate-linear in the first argument.
Complex inner(std::span<const Complex> a, std::span<const Complex> b);
double norm_squared(std::span<const Complex> v);

// Elementwise max |a - b|.
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

// Non-negative weights. Entries in [-1e-12, 0) are clamped to zero; anything
// more negative is a DomainError naming the index. A normalized distribution
// must sum to 1 within 1e-9; sub-normalized lists are allowed otherwise.
class ProbDist {
 public:
  enum class Kind { kNormalized, kUnnormalized };

  static constexpr double kNegativeDust = 1e-12;
  static constexpr double kSumTolerance = 1e-9;

  explicit ProbDist(std::vector<double> weights, Kind kind = Kind::kUnnormalized);
  ProbDist(std::initializer_list<double> weights, Kind kind = Kind::kUnnormalized)
      : ProbDist(std::vector<double>(weights), kind) {}

  std::span<const double> weights() const { return weights_; }
  std::size_t size() const { return weights_.size(); }
  double sum() const;
  Kind kind() const { return kind_; }

 private:
  std::vector<double> weights_;
  Kind kind_;
};

// -sum w log2 w with 0 log 0 = 0.
double shannon_entropy(const ProbDist& dist);
double shannon_entropy(std::span<const double> weights);

// Binary entropy h(x) = H(x, 1-x).
double binary_entropy(double x);

struct EigenSystem {
  std::vector<double> values;  // descending
  ComplexMatrix vectors;       // column k belongs to values[k]
};

// Cyclic complex Jacobi. Throws DomainError when the input is not square or
// not Hermitian within 1e-12 (message carries the asymmetry).
EigenSystem hermitian_eigensystem(const ComplexMatrix& m);
std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m);

// Entropy of the spectrum in bits. Requires a Hermitian, trace-one matrix;
// eigenvalues below -1e-8 raise PositivityError, smaller negative dust is
// dropped.
double von_neumann_entropy(const ComplexMatrix& rho);

}  // namespace sqkd
