#include "placenet/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "placenet/error.hpp"
#include "placenet/rng.hpp"
#include "placenet/simd/kernels.hpp"

namespace placenet {

TridiagonalEigen tridiagonal_eigen(std::span<const double> diag, std::span<const double> offdiag,
                                   std::span<const std::size_t> rows) {
    const std::size_t n = diag.size();
    std::vector<double> d(diag.begin(), diag.end());
    std::vector<double> e(n, 0.0);
    std::copy(offdiag.begin(), offdiag.end(), e.begin());

    const std::size_t nr = rows.size();
    std::vector<double> z(nr * n, 0.0);
    for (std::size_t r = 0; r < nr; ++r) z[r * n + rows[r]] = 1.0;

    for (std::size_t l = 0; l < n; ++l) {
        std::size_t iter = 0;
        for (;;) {
            std::size_t m = l;
            for (; m + 1 < n; ++m) {
                const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
                if (std::abs(e[m]) <= std::numeric_limits<double>::epsilon() * dd) break;
            }
            if (m == l) break;
            if (++iter > 60) throw NumericalError("tridiagonal QL did not converge", std::abs(e[l]));

            double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            double r = std::hypot(g, 1.0);
            g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
            double s = 1.0, c = 1.0, p = 0.0;
            std::size_t i = m;
            bool underflow = false;
            while (i-- > l) {
                double f = s * e[i];
                const double b = c * e[i];
                r = std::hypot(f, g);
                e[i + 1] = r;
                if (r == 0.0) {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                for (std::size_t k = 0; k < nr; ++k) {
                    double* zr = z.data() + k * n;
                    f = zr[i + 1];
                    zr[i + 1] = s * zr[i] + c * f;
                    zr[i] = c * zr[i] - s * f;
                }
            }
            if (underflow) continue;
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return d[a] < d[b]; });
    TridiagonalEigen out;
    out.values.resize(n);
    out.vectors.resize(nr * n);
    for (std::size_t k = 0; k < n; ++k) {
        out.values[k] = d[order[k]];
        for (std::size_t r = 0; r < nr; ++r) out.vectors[r * n + k] = z[r * n + order[k]];
    }
    return out;
}

namespace {

class Laplacian {
public:
    explicit Laplacian(const Graph& g) : g_(g) {}

    void apply(std::span<const double> x, std::span<double> y) const noexcept {
        for (Vertex v = 0; v < g_.num_nodes(); ++v) {
            double acc = static_cast<double>(g_.degree(v)) * x[v];
            for (Vertex w : g_.neighbors(v)) acc -= x[w];
            y[v] = acc;
        }
    }

private:
    const Graph& g_;
};

void remove_mean(std::span<double> x) {
    const double mean = simd::sum(x) / static_cast<double>(x.size());
    for (double& v : x) v -= mean;
}

// Orthogonalizes w against the constant vector and basis[0..count), twice.
void orthogonalize(std::span<double> w, const std::vector<double>& basis, std::size_t count, std::size_t n) {
    for (int pass = 0; pass < 2; ++pass) {
        remove_mean(w);
        for (std::size_t i = 0; i < count; ++i) {
            const std::span<const double> q(basis.data() + i * n, n);
            simd::axpy(-simd::dot(q, w), q, w);
        }
    }
}

// Fills w with a random unit vector orthogonal to ones and the current basis.
// Returns false when no such direction survives (basis spans the complement).
bool random_start(std::span<double> w, const std::vector<double>& basis, std::size_t count, std::size_t n,
                  Rng& rng) {
    for (int attempt = 0; attempt < 4; ++attempt) {
        for (double& v : w) v = rng.uniform01() - 0.5;
        orthogonalize(w, basis, count, n);
        const double norm = std::sqrt(simd::dot(w, w));
        if (norm > 1e-8) {
            simd::scale(1.0 / norm, w);
            return true;
        }
    }
    return false;
}

}  // namespace

// Lanczos with full reorthogonalization on the orthogonal complement of the
// all-ones vector, where the smallest Laplacian eigenvalue is λ2. Exhausting
// the complement gives exact Ritz values; otherwise the smallest Ritz pair is
// accepted once its residual falls below tolerance, restarting from the
// current Ritz vector when the basis fills.
double laplacian_lambda2(const Graph& g, const SpectralOptions& opts) {
    const std::size_t n = g.num_nodes();
    if (n < 2) return 0.0;
    if (connected_components(g).count() > 1) return 0.0;

    const Laplacian lap(g);
    const std::size_t space = n - 1;
    const std::size_t max_basis = std::max<std::size_t>(2, std::min(space, opts.max_basis));

    std::vector<double> basis(max_basis * n);
    std::vector<double> w(n);
    std::vector<double> alpha, beta;
    Rng rng(derive_seed(0x1a2c05ULL, {n, g.num_edges()}));

    std::span<double> q0(basis.data(), n);
    if (!random_start(q0, basis, 0, n, rng)) return 0.0;

    std::size_t matvecs = 0;
    double last_residual = std::numeric_limits<double>::infinity();
    double theta = 0.0;

    for (;;) {
        std::size_t count = 1;  // vectors in basis
        alpha.clear();
        beta.clear();
        for (;;) {
            const std::span<const double> q(basis.data() + (count - 1) * n, n);
            lap.apply(q, w);
            ++matvecs;
            alpha.push_back(simd::dot(q, w));
            orthogonalize(w, basis, count, n);
            const double b = std::sqrt(simd::dot(w, w));

            const std::size_t m = alpha.size();
            const std::size_t last = m - 1;
            const auto eig = tridiagonal_eigen(alpha, beta, std::span<const std::size_t>(&last, 1));
            theta = eig.values.front();
            last_residual = std::abs(b * eig.vectors.front());

            const bool exhausted = count == space;
            if (exhausted || last_residual < opts.tolerance) return std::max(theta, 0.0);
            if (matvecs >= opts.max_iterations)
                throw NumericalError("Lanczos iteration cap reached for algebraic connectivity", last_residual);
            if (count == max_basis) break;

            std::span<double> next(basis.data() + count * n, n);
            if (b > 1e-10 * std::max(1.0, std::abs(alpha.back()))) {
                std::copy(w.begin(), w.end(), next.begin());
                simd::scale(1.0 / b, next);
                beta.push_back(b);
            } else {
                // Invariant subspace found; continue in a fresh direction.
                if (!random_start(next, basis, count, n, rng)) return std::max(theta, 0.0);
                beta.push_back(0.0);
            }
            ++count;
        }

        // Restart from the smallest Ritz vector.
        std::vector<std::size_t> all(alpha.size());
        std::iota(all.begin(), all.end(), 0);
        const auto eig = tridiagonal_eigen(alpha, beta, all);
        const std::size_t m = alpha.size();
        std::fill(w.begin(), w.end(), 0.0);
        for (std::size_t i = 0; i < m; ++i)
            simd::axpy(eig.vectors[i * m], std::span<const double>(basis.data() + i * n, n), w);
        remove_mean(w);
        const double norm = std::sqrt(simd::dot(w, w));
        std::copy(w.begin(), w.end(), q0.begin());
        simd::scale(1.0 / norm, q0);
    }
}

double algebraic_connectivity(const Graph& g, const SpectralOptions& opts) {
    const Graph lcc = largest_connected_component(g);
    return laplacian_lambda2(lcc, opts);
}

}  // namespace placenet
