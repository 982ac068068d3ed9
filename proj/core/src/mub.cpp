#include "sqkd/mub.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "sqkd/errors.hpp"

namespace sqkd {

namespace {

Basis make_basis(int dim, BasisLabel label, double scale, const std::vector<std::vector<Complex>>& kets) {
  std::vector<ComplexVector> columns;
  columns.reserve(kets.size());
  for (const auto& ket : kets) {
    ComplexVector v(ket.size());
    for (std::size_t i = 0; i < ket.size(); ++i) v[i] = scale * ket[i];
    columns.push_back(std::move(v));
  }
  return Basis{dim, label, ComplexMatrix::from_columns(columns)};
}

Basis computational(int dim) {
  return Basis{dim, BasisLabel::kComp, ComplexMatrix::identity(static_cast<std::size_t>(dim))};
}

}  // namespace

std::string_view to_string(BasisLabel label) {
  switch (label) {
    case BasisLabel::kComp: return "COMP";
    case BasisLabel::kX: return "X";
    case BasisLabel::kY: return "Y";
    case BasisLabel::kZ: return "Z";
    case BasisLabel::kA: return "A";
    case BasisLabel::kB: return "B";
    case BasisLabel::kC: return "C";
    case BasisLabel::kD: return "D";
  }
  return "?";
}

const Basis& MubFamily::at(BasisLabel label) const {
  auto it = std::find_if(bases.begin(), bases.end(), [&](const Basis& b) { return b.label == label; });
  if (it == bases.end()) throw DomainError("basis " + std::string(to_string(label)) + " not in family");
  return *it;
}

MubFamily MubFamily::prefix(int n) const {
  if (n < 1 || n > static_cast<int>(bases.size())) {
    throw DomainError("requested " + std::to_string(n) + " bases from a family of " +
                      std::to_string(bases.size()));
  }
  return MubFamily{dim, std::vector<Basis>(bases.begin(), bases.begin() + n)};
}

MubFamily qutrit_mubs() {
  const Complex eta = std::polar(1.0, 2.0 * std::numbers::pi / 3.0);
  const Complex etac = std::conj(eta);
  const double s = 1.0 / std::sqrt(3.0);

  MubFamily family{3, {}};
  family.bases.push_back(computational(3));
  family.bases.push_back(make_basis(3, BasisLabel::kX, s,
                                    {{1.0, 1.0, 1.0},
                                     {1.0, eta, etac},
                                     {1.0, etac, eta}}));
  family.bases.push_back(make_basis(3, BasisLabel::kY, s,
                                    {{eta, 1.0, 1.0},
                                     {1.0, eta, 1.0},
                                     {1.0, 1.0, eta}}));
  family.bases.push_back(make_basis(3, BasisLabel::kZ, s,
                                    {{etac, 1.0, 1.0},
                                     {1.0, etac, 1.0},
                                     {1.0, 1.0, etac}}));
  return family;
}

MubFamily ququart_mubs() {
  const Complex i{0.0, 1.0};
  MubFamily family{4, {}};
  family.bases.push_back(computational(4));
  family.bases.push_back(make_basis(4, BasisLabel::kA, 0.5,
                                    {{1.0, 1.0, 1.0, 1.0},
                                     {1.0, 1.0, -1.0, -1.0},
                                     {1.0, -1.0, -1.0, 1.0},
                                     {1.0, -1.0, 1.0, -1.0}}));
  family.bases.push_back(make_basis(4, BasisLabel::kB, 0.5,
                                    {{1.0, -1.0, -i, -i},
                                     {1.0, -1.0, i, i},
                                     {1.0, 1.0, i, -i},
                                     {1.0, 1.0, -i, i}}));
  family.bases.push_back(make_basis(4, BasisLabel::kC, 0.5,
                                    {{1.0, -i, -i, -1.0},
                                     {1.0, -i, i, 1.0},
                                     {1.0, i, i, -1.0},
                                     {1.0, i, -i, 1.0}}));
  family.bases.push_back(make_basis(4, BasisLabel::kD, 0.5,
                                    {{1.0, -i, -1.0, -i},
                                     {1.0, -i, 1.0, i},
                                     {1.0, i, -1.0, i},
                                     {1.0, i, 1.0, -i}}));
  return family;
}

MubFamily mubs_for_dim(int d) {
  if (d == 3) return qutrit_mubs();
  if (d == 4) return ququart_mubs();
  throw DomainError("no MUB family for dimension " + std::to_string(d));
}

double verify_unbiased(const Basis& b1, const Basis& b2) {
  if (b1.dim != b2.dim) {
    throw DomainError("verify_unbiased: dimension mismatch (" + std::to_string(b1.dim) + " vs " +
                      std::to_string(b2.dim) + ")");
  }
  const double target = 1.0 / std::sqrt(static_cast<double>(b1.dim));
  double worst = 0.0;
  for (int a = 0; a < b1.dim; ++a) {
    const ComplexVector v = b1.vector(a);
    for (int b = 0; b < b2.dim; ++b) {
      worst = std::max(worst, std::abs(std::abs(inner(v, b2.vector(b))) - target));
    }
  }
  return worst;
}

double orthonormality_deviation(const Basis& b) {
  double worst = 0.0;
  for (int i = 0; i < b.dim; ++i) {
    for (int j = 0; j < b.dim; ++j) {
      const Complex expected = (i == j) ? 1.0 : 0.0;
      worst = std::max(worst, std::abs(inner(b.vector(i), b.vector(j)) - expected));
    }
  }
  return worst;
}

std::vector<std::vector<double>> deviation_matrix(const MubFamily& family) {
  const std::size_t n = family.bases.size();
  std::vector<std::vector<double>> out(n, std::vector<double>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) out[i][j] = verify_unbiased(family.bases[i], family.bases[j]);
  }
  return out;
}

}  // namespace sqkd
