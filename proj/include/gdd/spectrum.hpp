#pragma once

#include "gdd/graph.hpp"

namespace gdd::graph {

/// Eigendecomposition of a symmetric graph-shift operator.
/// Eigenvalues ascend; eigenvectors are the orthonormal columns.
struct Spectrum {
    Vector eigenvalues;
    Matrix eigenvectors;

    int size() const noexcept { return static_cast<int>(eigenvalues.size()); }
};

enum class ShiftOperator { laplacian, adjacency };

/// Cyclic Jacobi eigensolver for dense symmetric matrices.
///
/// Sweeps rotate every off-diagonal pair in row order until the largest
/// off-diagonal magnitude drops below max(1e-11, 1e-14 max|m_ij|).
/// Each eigenvector is sign-normalised so that its largest-magnitude entry
/// (first one on ties) is positive, which makes the output deterministic.
/// Throws std::invalid_argument if m is not symmetric within 1e-10.
Spectrum eig_sym(const Matrix& m);

Spectrum graph_spectrum(const Graph& g, ShiftOperator shift = ShiftOperator::laplacian);

/// Graph Fourier transform V^T x.
Vector gft(const Spectrum& spec, const Vector& x);
/// Inverse transform V x~.
Vector igft(const Spectrum& spec, const Vector& xt);

struct BandlimitedFit {
    Vector coeffs;    ///< length-K active frequency components
    Vector estimate;  ///< V_K coeffs
};

/// Least-squares projection onto the first K eigenvectors.
BandlimitedFit bandlimited_fit(const Spectrum& spec, const Vector& x, int bandwidth);

}  // namespace gdd::graph
