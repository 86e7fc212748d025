#include "grd/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

namespace grd {

double spectral_norm(const Matrix& m, SpectralMeta* meta) {
    if (m.size() == 0) {
        if (meta) *meta = {"empty", 0, 0};
        return 0.0;
    }
    const Matrix gram = m.adjoint() * m;
    const int n = static_cast<int>(gram.rows());
    if (n <= 512) {
        Eigen::SelfAdjointEigenSolver<Matrix> es(gram, Eigen::EigenvaluesOnly);
        double top = es.eigenvalues().maxCoeff();
        if (meta) *meta = {"hermitian_eig", n, 0};
        return std::sqrt(std::max(0.0, top));
    }
    // Power iteration on the Gram matrix. Deterministic start vector.
    Vector v = Vector::Ones(n);
    v.normalize();
    double lambda = 0.0;
    int it = 0;
    const int cap = 100000;
    for (; it < cap; ++it) {
        Vector w = gram * v;
        double nw = w.norm();
        if (nw == 0.0) {
            lambda = 0.0;
            break;
        }
        w /= nw;
        double next = std::real(w.dot(gram * w));
        if (std::abs(next - lambda) <= 1e-10 * std::max(1.0, std::abs(next))) {
            lambda = next;
            v = w;
            ++it;
            break;
        }
        lambda = next;
        v = w;
    }
    if (meta) *meta = {"power_iteration", n, it};
    return std::sqrt(std::max(0.0, lambda));
}

double hermitian_top_eigenvalue(const Matrix& h) {
    if (h.size() == 0) return 0.0;
    Matrix s = 0.5 * (h + h.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix> es(s, Eigen::EigenvaluesOnly);
    return es.eigenvalues().maxCoeff();
}

double hermitian_min_eigenvalue(const Matrix& h) {
    if (h.size() == 0) return 0.0;
    Matrix s = 0.5 * (h + h.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix> es(s, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

Matrix hermitian_sqrt(const Matrix& h) {
    Matrix s = 0.5 * (h + h.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix> es(s);
    Eigen::VectorXd ev = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    return es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint();
}

Matrix random_matrix(int rows, int cols, RngStream& rng) {
    Matrix m(rows, cols);
    for (int j = 0; j < cols; ++j)
        for (int i = 0; i < rows; ++i) m(i, j) = rng.cgaussian();
    return m;
}

Matrix random_psd(int n, RngStream& rng) {
    Matrix g = random_matrix(n, n, rng);
    Matrix p = g.adjoint() * g;
    double nrm = spectral_norm(p);
    if (nrm > 0) p /= nrm;
    return p;
}

}  // namespace grd
