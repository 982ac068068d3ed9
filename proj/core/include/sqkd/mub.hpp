#pragma once

#include <string_view>
#include <vector>

#include "sqkd/numerics.hpp"

namespace sqkd {

enum class BasisLabel { kComp, kX, kY, kZ, kA, kB, kC, kD };

std::string_view to_string(BasisLabel label);

// d orthonormal vectors stored as the columns of a d x d matrix, in the
// reference order and phase so that outcome k of basis K is the state K_k.
struct Basis {
  int dim;
  BasisLabel label;
  ComplexMatrix vectors;

  ComplexVector vector(int k) const { return vectors.column(static_cast<std::size_t>(k)); }
};

// Ordered family, computational basis first.
struct MubFamily {
  int dim;
  std::vector<Basis> bases;

  const Basis& at(BasisLabel label) const;
  // The first n bases; the protocol with n MUBs uses exactly these.
  MubFamily prefix(int n) const;
};

// {COMP, X, Y, Z} with eta = exp(2 pi i / 3).
MubFamily qutrit_mubs();
// {COMP, A, B, C, D}; all coefficients are +-1/2 or +-i/2.
MubFamily ququart_mubs();

// qutrit_mubs() for d = 3, ququart_mubs() for d = 4.
MubFamily mubs_for_dim(int d);

// max over v in b1, w in b2 of ||<v|w>| - 1/sqrt(d)|.
double verify_unbiased(const Basis& b1, const Basis& b2);

// max |<v_i|v_j> - delta_ij|.
double orthonormality_deviation(const Basis& b);

// Unbiasedness deviation for every ordered pair of bases, row-major.
std::vector<std::vector<double>> deviation_matrix(const MubFamily& family);

}  // namespace sqkd
