#pragma once

// Spectral differential operators on the periodic grid.
//
// Derivatives use i*k multipliers with the Nyquist mode zeroed, and the
// Laplacian is the sum of the squared first-derivative multipliers, so
// identities such as curl(perp_grad f) == laplacian(f) hold to round-off.
// Every pointwise product goes through `product` (or a helper built on it),
// which truncates to the 2/3 mask afterwards.

#include "oddflow/field.hpp"

namespace oddflow {

Spectrum fft_forward(const ScalarField& f);
ScalarField fft_inverse(const Spectrum& s);

/// Spectral derivative along axis 0 (x) or 1 (y).
Spectrum derivative(const Spectrum& s, int axis);
ScalarField partial(const ScalarField& f, int axis);

/// Projection onto the retained (2/3-rule) modes.
ScalarField dealias(const ScalarField& f);
VectorField dealias(const VectorField& v);
bool is_dealiased(const ScalarField& f, double tol = 1e-13);

/// Dealiased pointwise products.
ScalarField product(const ScalarField& a, const ScalarField& b);
VectorField product(const ScalarField& a, const VectorField& v);
ScalarField dot(const VectorField& a, const VectorField& b);
/// (a . grad) f
ScalarField advect(const VectorField& a, const ScalarField& f);
/// (a . grad) v, component i = a_j d_j v_i
VectorField advect(const VectorField& a, const VectorField& v);

VectorField grad(const ScalarField& f);
/// (-d2 f, d1 f)
VectorField perp_grad(const ScalarField& f);
ScalarField divergence(const VectorField& v);
/// d1 v2 - d2 v1
ScalarField curl2d(const VectorField& v);
ScalarField laplacian(const ScalarField& f);
/// Zero-mean solution of laplacian(g) = f; modes with a vanishing multiplier are set to zero.
ScalarField inverse_laplacian(const ScalarField& f);

/// grad v with entry (j, i) = d_j v_i (columns are grad v_1, grad v_2).
MatrixField jacobian_T(const VectorField& v);
/// D v with entry (i, j) = d_j v_i.
MatrixField jacobian(const VectorField& v);
/// grad-perp v with entry (j, i) = (perp_grad v_i)_j.
MatrixField perp_jacobian_T(const VectorField& v);
/// Entry (i, j) = d_i d_j f.
MatrixField hessian(const ScalarField& f);

/// div(weight * M) row-wise: component i = sum_j d_j (weight * M(j, i)); products dealiased.
VectorField matrix_divergence(const MatrixField& m, const ScalarField& weight);
VectorField matrix_divergence(const MatrixField& m);

/// Leray projection v - grad inverse_laplacian(div v).
VectorField leray_project(const VectorField& v);

/// sum_ij (grad a)(i, j) (grad b)(j, i) = sum_ij d_i a_j d_j b_i for gradients given by jacobian_T; dealiased.
ScalarField double_contraction(const MatrixField& grad_a, const MatrixField& grad_b);

}  // namespace oddflow
