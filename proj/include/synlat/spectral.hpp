#pragma once

#include <utility>
#include <vector>

#include "synlat/types.hpp"

namespace synlat {

namespace detail {
// Rescale to unit 2-norm with the largest-magnitude component (first on
// ties) rotated to the positive real axis. Divides by the max magnitude
// before squaring so strongly graded vectors cannot overflow.
void normalize_gauge(ComplexVector& v);
}  // namespace detail

struct EigenPair {
  int k = 0;
  Complex energy{0.0, 0.0};
  ComplexVector vector;        // unit 2-norm, largest component real positive
  bool ill_conditioned = false;  // set within relative distance 1e-6 of delta = gamma
  int degeneracy = 1;            // n at the coalescence point
};

// Closed-form spectrum E_k = (N - 2k) sqrt(gamma^2 - delta^2) - N big_gamma,
// k = 0..N, principal square root. Ordered by k, so E_0 carries the largest
// real part (or largest positive imaginary part past the degeneracy).
std::vector<Complex> eigenvalues(const DimerParams& p);

// Right eigenvector of the moment matrix for index k. The moment matrix is
// the symmetric-subspace restriction of an N-fold Kronecker sum of its
// first-order block, so the mode is the symmetrized tensor power of the two
// first-order eigenvectors (1, -t/gamma) and (1, s/gamma) with
// s = alpha - i delta, t = alpha + i delta, alpha = sqrt(gamma^2 - delta^2):
//   psi_k(i) = sum_a C(i, a) C(N-i, k-a) (s/gamma)^a (-t/gamma)^(i-a).
// Exactly at delta = gamma the coalesced vector is returned instead.
EigenPair analytic_eigenvector(const DimerParams& p, int k);

std::vector<EigenPair> all_eigenvectors(const DimerParams& p);

// The k = 0 and k = N boundary modes. Components are geometric,
// (-t/gamma)^j and (s/gamma)^j, with unit-modulus ratios below the
// degeneracy and reciprocal real growth factors above it.
std::pair<EigenPair, EigenPair> edge_modes(const DimerParams& p);

// Coalesced eigenvector at the order-n exceptional point delta = gamma:
// components proportional to (-i)^j, all of equal magnitude.
EigenPair ep_eigenvector(const DimerParams& p);

// First-order non-Hermitian block [[delta - i G, -i gamma], [-i gamma, -delta - i G]].
DenseMatrix effective_hamiltonian(const DimerParams& p);

struct Z2Result {
  int nu = 0;          // sign of the eigenvalue product, +/-1 when defined
  bool applicable = false;  // n = 2k with k odd, away from the degeneracy
  bool at_exceptional_point = false;
};

// Z2 invariant nu = sgn det of the undamped moment matrix, computed from the
// analytic eigenvalue product. Distinguishes the phases only for even n with
// n/2 odd. Requires big_gamma = 0.
Z2Result z2_invariant(const DimerParams& p);

}  // namespace synlat
