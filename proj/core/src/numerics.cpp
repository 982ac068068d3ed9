#include "sqkd/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <string>

#include "sqkd/errors.hpp"

namespace sqkd {

namespace {

constexpr double kHermitianTolerance = 1e-12;
constexpr double kJacobiOffDiagonal = 1e-14;
constexpr int kMaxJacobiSweeps = 100;

void check_dims(std::size_t rows, std::size_t cols) {
  if (rows == 0 || cols == 0 || rows > ComplexMatrix::kMaxDim || cols > ComplexMatrix::kMaxDim) {
    std::ostringstream msg;
    msg << "matrix dimension " << rows << "x" << cols << " outside [1, "
        << ComplexMatrix::kMaxDim << "]";
    throw DomainError(msg.str());
  }
}

double off_diagonal_norm(const ComplexMatrix& a) {
  double sum = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (i != j) sum += std::norm(a(i, j));
    }
  }
  return std::sqrt(sum);
}

double frobenius_norm(const ComplexMatrix& a) {
  double sum = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) sum += std::norm(a(i, j));
  }
  return std::sqrt(sum);
}

}  // namespace

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {
  check_dims(rows, cols);
}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols,
                             std::initializer_list<Complex> entries)
    : ComplexMatrix(rows, cols) {
  if (entries.size() != rows * cols) {
    throw DomainError("initializer size does not match matrix shape");
  }
  std::copy(entries.begin(), entries.end(), data_.begin());
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::from_columns(std::span<const ComplexVector> columns) {
  if (columns.empty()) throw DomainError("from_columns: no columns");
  ComplexMatrix m(columns.front().size(), columns.size());
  for (std::size_t c = 0; c < columns.size(); ++c) {
    if (columns[c].size() != m.rows()) throw DomainError("from_columns: ragged columns");
    for (std::size_t r = 0; r < m.rows(); ++r) m(r, c) = columns[c][r];
  }
  return m;
}

ComplexMatrix ComplexMatrix::outer(std::span<const Complex> v, std::span<const Complex> w) {
  ComplexMatrix m(v.size(), w.size());
  for (std::size_t r = 0; r < v.size(); ++r) {
    for (std::size_t c = 0; c < w.size(); ++c) m(r, c) = v[r] * std::conj(w[c]);
  }
  return m;
}

ComplexVector ComplexMatrix::column(std::size_t c) const {
  ComplexVector v(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
  return v;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix m(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) m(c, r) = std::conj((*this)(r, c));
  }
  return m;
}

Complex ComplexMatrix::trace() const {
  Complex t = 0.0;
  for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
  return t;
}

double ComplexMatrix::hermitian_asymmetry() const {
  if (rows_ != cols_) throw DomainError("hermitian_asymmetry: matrix is not square");
  double worst = 0.0;
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = i; j < cols_; ++j) {
      worst = std::max(worst, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
    }
  }
  return worst;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& other) {
  if (rows_ != other.rows_ || cols_ != other.cols_) throw DomainError("matrix sum: shape mismatch");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += other.data_[k];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex scale) {
  for (auto& x : data_) x *= scale;
  return *this;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols_ != b.rows_) throw DomainError("matrix product: shape mismatch");
  ComplexMatrix out(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i) {
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Complex aik = a(i, k);
      if (aik == Complex{}) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) += aik * b(k, j);
    }
  }
  return out;
}

ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw DomainError("matrix difference: shape mismatch");
  ComplexMatrix out = a;
  for (std::size_t k = 0; k < out.data_.size(); ++k) out.data_[k] -= b.data_[k];
  return out;
}

ComplexVector matvec(const ComplexMatrix& m, std::span<const Complex> v) {
  if (v.size() != m.cols()) throw DomainError("apply: vector length does not match matrix");
  ComplexVector out(m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Complex acc = 0.0;
    for (std::size_t c = 0; c < m.cols(); ++c) acc += m(r, c) * v[c];
    out[r] = acc;
  }
  return out;
}

Complex inner(std::span<const Complex> a, std::span<const Complex> b) {
  if (a.size() != b.size()) throw DomainError("inner product: length mismatch");
  Complex acc = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) acc += std::conj(a[k]) * b[k];
  return acc;
}

double norm_squared(std::span<const Complex> v) {
  double acc = 0.0;
  for (const auto& x : v) acc += std::norm(x);
  return acc;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw DomainError("max_abs_diff: shape mismatch");
  double worst = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) worst = std::max(worst, std::abs(a(i, j) - b(i, j)));
  }
  return worst;
}

// ---------------------------------------------------------------------------

ProbDist::ProbDist(std::vector<double> weights, Kind kind) : weights_(std::move(weights)), kind_(kind) {
  for (std::size_t i = 0; i < weights_.size(); ++i) {
    double& w = weights_[i];
    if (!std::isfinite(w)) {
      throw DomainError("probability weight " + std::to_string(i) + " is not finite");
    }
    if (w < -kNegativeDust) {
      std::ostringstream msg;
      msg << "probability weight " << i << " is negative (" << w << ")";
      throw DomainError(msg.str());
    }
    if (w < 0.0) w = 0.0;
  }
  if (kind_ == Kind::kNormalized && std::abs(sum() - 1.0) > kSumTolerance) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "distribution flagged normalized sums to " << sum();
    throw DomainError(msg.str());
  }
}

double ProbDist::sum() const { return std::accumulate(weights_.begin(), weights_.end(), 0.0); }

double shannon_entropy(const ProbDist& dist) {
  double h = 0.0;
  for (double w : dist.weights()) {
    if (w > 0.0) h -= w * std::log2(w);
  }
  return h;
}

double shannon_entropy(std::span<const double> weights) {
  return shannon_entropy(ProbDist(std::vector<double>(weights.begin(), weights.end())));
}

double binary_entropy(double x) { return shannon_entropy(ProbDist{x, 1.0 - x}); }

// ---------------------------------------------------------------------------

EigenSystem hermitian_eigensystem(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) throw DomainError("hermitian_eigensystem: matrix is not square");
  const double asym = m.hermitian_asymmetry();
  if (asym > kHermitianTolerance) {
    std::ostringstream msg;
    msg << "matrix is not Hermitian (max asymmetry " << asym << ")";
    throw DomainError(msg.str());
  }

  const std::size_t n = m.rows();
  ComplexMatrix a = m;
  ComplexMatrix v = ComplexMatrix::identity(n);
  for (std::size_t i = 0; i < n; ++i) a(i, i) = a(i, i).real();

  const double threshold = kJacobiOffDiagonal * std::max(1.0, frobenius_norm(a));
  for (int sweep = 0; sweep < kMaxJacobiSweeps && off_diagonal_norm(a) > threshold; ++sweep) {
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double r = std::abs(a(p, q));
        if (r == 0.0) continue;
        // Phase q so the (p,q) entry becomes the real number r, then apply
        // the real symmetric Jacobi rotation that annihilates it.
        const Complex phase = std::conj(a(p, q)) / r;  // e^{-i arg a_pq}
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const double theta = (aqq - app) / (2.0 * r);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;

        // 2x2 block of J = diag(1, phase) * [[c, s], [-s, c]].
        const Complex jpp = c;
        const Complex jpq = s;
        const Complex jqp = -s * phase;
        const Complex jqq = c * phase;

        for (std::size_t k = 0; k < n; ++k) {  // A <- A J
          const Complex akp = a(k, p);
          const Complex akq = a(k, q);
          a(k, p) = akp * jpp + akq * jqp;
          a(k, q) = akp * jpq + akq * jqq;
        }
        for (std::size_t k = 0; k < n; ++k) {  // A <- J^dagger A
          const Complex apk = a(p, k);
          const Complex aqk = a(q, k);
          a(p, k) = std::conj(jpp) * apk + std::conj(jqp) * aqk;
          a(q, k) = std::conj(jpq) * apk + std::conj(jqq) * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();

        for (std::size_t k = 0; k < n; ++k) {  // V <- V J
          const Complex vkp = v(k, p);
          const Complex vkq = v(k, q);
          v(k, p) = vkp * jpp + vkq * jqp;
          v(k, q) = vkp * jpq + vkq * jqq;
        }
      }
    }
  }
  if (off_diagonal_norm(a) > threshold) {
    throw NumericFailure("Jacobi eigensolver did not converge");
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return a(i, i).real() > a(j, j).real(); });

  EigenSystem out{std::vector<double>(n), ComplexMatrix(n, n)};
  for (std::size_t k = 0; k < n; ++k) {
    out.values[k] = a(order[k], order[k]).real();
    for (std::size_t r = 0; r < n; ++r) out.vectors(r, k) = v(r, order[k]);
  }
  return out;
}

std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m) {
  return hermitian_eigensystem(m).values;
}

double von_neumann_entropy(const ComplexMatrix& rho) {
  const Complex tr = rho.trace();
  if (std::abs(tr.real() - 1.0) > ProbDist::kSumTolerance || std::abs(tr.imag()) > ProbDist::kSumTolerance) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "density matrix trace is " << tr.real() << ", expected 1";
    throw DomainError(msg.str());
  }
  std::vector<double> spectrum = hermitian_eigenvalues(rho);
  for (double& lambda : spectrum) {
    if (lambda < -1e-8) {
      std::ostringstream msg;
      msg << "density matrix has negative eigenvalue " << lambda;
      throw PositivityError(msg.str());
    }
    if (lambda < 0.0) lambda = 0.0;
  }
  return shannon_entropy(ProbDist(std::move(spectrum)));
}

}  // namespace sqkd
