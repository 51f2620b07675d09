#pragma once

#include "wfock/types.hpp"

namespace wfock {

// Kronecker product with big-endian index convention:
// (A ⊗ B)(i*bn + k, j*bm + l) = A(i,j) B(k,l).
CMat kron(const CMat& a, const CMat& b);

// Operator (spectral) norm.
double op_norm(const CMat& a);

// ||A - A*||, zero for hermitian matrices.
double hermitian_residual(const CMat& a);

// Smallest eigenvalue of the hermitian part (A + A*)/2.
double min_eig_hermitian(const CMat& a);

// PSD square root via hermitian eigendecomposition. Eigenvalues in
// [-neg_tol*scale, 0) are clamped to zero; anything below that throws.
CMat psd_sqrt(const CMat& a, double neg_tol = 1e-10);

// Thin Q factor of a full-column-rank matrix, with each column's phase
// fixed so its largest-magnitude entry is real positive (deterministic
// frames independent of QR sign choices).
CMat orthonormal_columns(const CMat& a);

void fix_column_phases(CMat& a);

// Orthonormal basis of the numerical column space (SVD, relative cut).
CMat orthonormal_range(const CMat& a, double tol = 1e-10);

Index numerical_rank(const CMat& a, double tol = 1e-8);

// Column-stacking vectorization and its inverse.
CVec vec(const CMat& a);
CMat unvec(const CVec& v, Index rows, Index cols);

// Matrix of the map a -> l * a * r^* on column-stacked vectorizations.
CMat sandwich_matrix(const CMat& l, const CMat& r);

// Choi matrix sum_pq E_pq ⊗ Psi(E_pq) of a map given as an m^2 x m^2
// matrix acting on vec(a).
CMat choi_matrix(const CMat& map_matrix, Index m);

}  // namespace wfock
