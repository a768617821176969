#pragma once

#include "synlat/types.hpp"

namespace synlat {

// Evolution matrix M of the order-N field moments, d/dt A = M A, with
// A_j = <a1^(N-j) a2^j>. Tridiagonal, n = N + 1:
//   M[j][j]   = -i (N - 2j) delta - N big_gamma
//   M[j][j-1] = -j gamma
//   M[j][j+1] = -(N - j) gamma
TridiagMatrix build_moment_matrix(const DimerParams& p);

// Moment evolution matrix of the general (gain-loss) dimer:
//   L[j][j]   = i [(N - j) omega1 + j omega2]
//   L[j][j-1] = j kappa2
//   L[j][j+1] = (N - j) kappa1
TridiagMatrix build_general_moment_matrix(const GeneralDimerParams& p);

// Antidiagonal parity, P[j][k] = 1 iff j + k = n - 1. Involutory.
DenseMatrix build_parity(int n);

// Chiral symmetry for even n: antidiagonal with entries
// chi[p][n-1-p] = (-1)^(p+1) i. Unitary, squares to identity.
// Throws std::invalid_argument for odd n.
DenseMatrix build_chiral(int n);

// True iff P conj(M) P == M entrywise within tol (max norm).
bool check_pt_invariance(const TridiagMatrix& m, double tol);

// True iff chi M chi^dag == -M entrywise within tol (max norm).
// Requires even n.
bool check_chirality(const TridiagMatrix& m, double tol);

// N-fold Kronecker sum of a 2x2 first-order matrix, restricted to the
// (N+1)-dimensional symmetric subspace spanned by the uniform indicator
// vectors over strings of fixed weight. Equals the moment matrix when fed
// the first-order (N = 1) moment matrix of the same parameters.
DenseMatrix kron_sum_construct(const DenseMatrix& first_order, int order);

}  // namespace synlat
