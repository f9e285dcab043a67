#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "placenet/graph.hpp"

namespace placenet {

struct SpectralOptions {
    double tolerance = 1e-8;          // absolute, on the eigenvalue
    std::size_t max_iterations = 10000;  // Laplacian mat-vecs
    std::size_t max_basis = 128;      // Lanczos vectors kept before restart
};

// Second-smallest eigenvalue of the combinatorial Laplacian of g itself
// (no component extraction). 0 for graphs with fewer than two nodes or more
// than one component. Throws NumericalError when the iteration cap is hit.
double laplacian_lambda2(const Graph& g, const SpectralOptions& opts = {});

// λ2 of the Laplacian of g's largest connected component.
double algebraic_connectivity(const Graph& g, const SpectralOptions& opts = {});

// Eigen-decomposition of a symmetric tridiagonal matrix (implicit QL).
// diag has n entries, offdiag n-1. Eigenvalues come back ascending. When
// rows is non-empty, only those rows of the eigenvector matrix are
// accumulated: vectors[r * n + k] is component rows[r] of eigenvector k.
struct TridiagonalEigen {
    std::vector<double> values;
    std::vector<double> vectors;
};
TridiagonalEigen tridiagonal_eigen(std::span<const double> diag, std::span<const double> offdiag,
                                   std::span<const std::size_t> rows);

}  // namespace placenet
