#include "gdd/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "gdd/error.hpp"

namespace gdd::graph {

namespace {

constexpr double kOffDiagonalTolerance = 1e-11;
constexpr int kMaxSweeps = 100;

double max_off_diagonal(const Matrix& a) {
    double m = 0.0;
    for (Eigen::Index j = 0; j < a.cols(); ++j)
        for (Eigen::Index i = 0; i < j; ++i) m = std::max(m, std::abs(a(i, j)));
    return m;
}

// One Jacobi rotation annihilating a(p, q); a stays symmetric.
void rotate(Matrix& a, Matrix& v, Eigen::Index p, Eigen::Index q) {
    const double apq = a(p, q);
    const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
    const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
    const double c = 1.0 / std::sqrt(t * t + 1.0);
    const double s = t * c;

    const Eigen::Index n = a.rows();
    for (Eigen::Index k = 0; k < n; ++k) {
        if (k == p || k == q) continue;
        const double akp = a(k, p);
        const double akq = a(k, q);
        a(k, p) = a(p, k) = c * akp - s * akq;
        a(k, q) = a(q, k) = s * akp + c * akq;
    }
    a(p, p) -= t * apq;
    a(q, q) += t * apq;
    a(p, q) = a(q, p) = 0.0;

    for (Eigen::Index k = 0; k < n; ++k) {
        const double vkp = v(k, p);
        const double vkq = v(k, q);
        v(k, p) = c * vkp - s * vkq;
        v(k, q) = s * vkp + c * vkq;
    }
}

}  // namespace

Spectrum eig_sym(const Matrix& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("eig_sym: matrix must be square");
    const Eigen::Index n = m.rows();
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = i + 1; j < n; ++j)
            if (std::abs(m(i, j) - m(j, i)) > 1e-10)
                throw std::invalid_argument("eig_sym: matrix is not symmetric");

    Matrix a = 0.5 * (m + m.transpose());
    Matrix v = Matrix::Identity(n, n);
    const double tol = std::max(kOffDiagonalTolerance, 1e-14 * a.cwiseAbs().maxCoeff());

    int sweep = 0;
    while (max_off_diagonal(a) >= tol) {
        if (++sweep > kMaxSweeps)
            throw NumericalError("eig_sym: Jacobi iteration did not converge in " +
                                 std::to_string(kMaxSweeps) + " sweeps");
        for (Eigen::Index p = 0; p < n; ++p)
            for (Eigen::Index q = p + 1; q < n; ++q)
                if (a(p, q) != 0.0) rotate(a, v, p, q);
    }

    std::vector<Eigen::Index> order(n);
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    std::stable_sort(order.begin(), order.end(),
                     [&a](Eigen::Index x, Eigen::Index y) { return a(x, x) < a(y, y); });

    Spectrum spec;
    spec.eigenvalues.resize(n);
    spec.eigenvectors.resize(n, n);
    for (Eigen::Index k = 0; k < n; ++k) {
        spec.eigenvalues(k) = a(order[k], order[k]);
        Vector col = v.col(order[k]);
        Eigen::Index arg = 0;
        for (Eigen::Index i = 1; i < n; ++i)
            if (std::abs(col(i)) > std::abs(col(arg)) + 1e-12) arg = i;
        if (col(arg) < 0.0) col = -col;
        spec.eigenvectors.col(k) = col;
    }
    return spec;
}

Spectrum graph_spectrum(const Graph& g, ShiftOperator shift) {
    return eig_sym(shift == ShiftOperator::laplacian ? laplacian(g) : g.adjacency());
}

Vector gft(const Spectrum& spec, const Vector& x) {
    if (x.size() != spec.size())
        throw std::invalid_argument("gft: signal length does not match spectrum size");
    return spec.eigenvectors.transpose() * x;
}

Vector igft(const Spectrum& spec, const Vector& xt) {
    if (xt.size() != spec.size())
        throw std::invalid_argument("igft: coefficient length does not match spectrum size");
    return spec.eigenvectors * xt;
}

BandlimitedFit bandlimited_fit(const Spectrum& spec, const Vector& x, int bandwidth) {
    if (bandwidth < 1 || bandwidth > spec.size())
        throw std::invalid_argument("bandlimited_fit: bandwidth must lie in [1, n]");
    if (x.size() != spec.size())
        throw std::invalid_argument("bandlimited_fit: signal length does not match spectrum size");
    const auto basis = spec.eigenvectors.leftCols(bandwidth);
    BandlimitedFit out;
    out.coeffs = basis.transpose() * x;
    out.estimate = basis * out.coeffs;
    return out;
}

}  // namespace gdd::graph
