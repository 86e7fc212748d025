#pragma once

#include <Eigen/Dense>
#include <string>

#include "grd/common.hpp"

namespace grd {

using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// How a spectral norm was obtained, recorded in reports.
struct SpectralMeta {
    std::string method;  // "hermitian_eig" or "power_iteration"
    int dimension = 0;
    int iterations = 0;
};

/// Operator (spectral) norm. Dense Hermitian eigensolve of M'M up to 512
/// columns, power iteration with tolerance 1e-10 and cap 1e5 above that.
double spectral_norm(const Matrix& m, SpectralMeta* meta = nullptr);

/// Largest eigenvalue of a Hermitian matrix (input is symmetrized first to
/// absorb roundoff).
double hermitian_top_eigenvalue(const Matrix& h);

double hermitian_min_eigenvalue(const Matrix& h);

/// Positive-semidefinite square root via eigendecomposition; eigenvalues
/// below zero are clamped.
Matrix hermitian_sqrt(const Matrix& h);

Matrix random_matrix(int rows, int cols, RngStream& rng);

/// Random positive-semidefinite matrix g*g, normalized to unit spectral norm
/// when nonzero.
Matrix random_psd(int n, RngStream& rng);

}  // namespace grd
