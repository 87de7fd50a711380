#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <cstdint>

#include "symdisc/errors.hpp"

namespace symdisc {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

// Deterministic random source.  splitmix64 underneath, Box-Muller on top, so
// seeded results are identical across platforms and standard-library builds.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // uniform in [0, 1), 53-bit resolution
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u = 0.0;
        while (u == 0.0) u = uniform();
        double v = uniform();
        double r = std::sqrt(-2.0 * std::log(u));
        double a = 2.0 * M_PI * v;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

    cplx normal_cplx() {
        double re = normal();
        double im = normal();
        return cplx(re, im);
    }

    // Derive an independent deterministic seed for a sub-computation.
    static std::uint64_t mix(std::uint64_t seed, std::uint64_t salt) {
        Rng r(seed ^ (0x632be59bd9b4e019ull * (salt + 1)));
        return r.next_u64();
    }

private:
    std::uint64_t state_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

inline Matrix random_hermitian(int dim, Rng& rng) {
    Matrix h(dim, dim);
    for (int i = 0; i < dim; ++i) {
        h(i, i) = cplx(rng.normal(), 0.0);
        for (int j = i + 1; j < dim; ++j) {
            cplx z = 0.5 * rng.normal_cplx();
            h(i, j) = z;
            h(j, i) = std::conj(z);
        }
    }
    return h;
}

inline Matrix random_complex(int rows, int cols, Rng& rng) {
    Matrix m(rows, cols);
    for (int j = 0; j < cols; ++j)
        for (int i = 0; i < rows; ++i) m(i, j) = rng.normal_cplx();
    return m;
}

inline Vector random_unit_vector(int dim, Rng& rng) {
    Vector v(dim);
    for (int i = 0; i < dim; ++i) v(i) = rng.normal_cplx();
    double n = v.norm();
    if (n == 0.0) return random_unit_vector(dim, rng);  // measure zero
    return v / n;
}

inline double unitarity_error(const Matrix& u) {
    return (u * u.adjoint() - Matrix::Identity(u.rows(), u.cols())).norm();
}

// Unitary factor of the polar decomposition m = U P.  Requires m square and
// well conditioned relative to rel_tol (callers redraw otherwise).
inline Matrix polar_unitary(const Matrix& m, double rel_tol = 1e-8) {
    Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& s = svd.singularValues();
    if (s.size() == 0 || s(s.size() - 1) < rel_tol * s(0))
        throw DecompositionFailed("polar decomposition of a nearly singular matrix");
    return svd.matrixU() * svd.matrixV().adjoint();
}

struct OrthoBasis {
    Matrix basis;  // orthonormal columns spanning the column space
    int rank = 0;
};

inline OrthoBasis orthonormal_column_span(const Matrix& m, double rel_tol = 1e-8) {
    Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeThinU);
    const auto& s = svd.singularValues();
    int rank = 0;
    double cut = (s.size() > 0 ? s(0) : 0.0) * rel_tol;
    for (int i = 0; i < s.size(); ++i)
        if (s(i) > cut) ++rank;
    OrthoBasis out;
    out.rank = rank;
    out.basis = svd.matrixU().leftCols(rank);
    return out;
}

// (pseudo-)inverse square root of a positive semidefinite Hermitian matrix
inline Matrix hermitian_sqrt_pinv(const Matrix& m, double rel_tol = 1e-12) {
    Eigen::SelfAdjointEigenSolver<Matrix> es((m + m.adjoint()) * 0.5);
    if (es.info() != Eigen::Success)
        throw DecompositionFailed("eigendecomposition did not converge");
    RealVector lam = es.eigenvalues();
    double top = lam.size() > 0 ? lam(lam.size() - 1) : 0.0;
    Vector inv(lam.size());
    for (int i = 0; i < lam.size(); ++i)
        inv(i) = (lam(i) > rel_tol * top && lam(i) > 0.0)
                     ? cplx(1.0 / std::sqrt(lam(i)), 0.0)
                     : cplx(0.0, 0.0);
    return es.eigenvectors() * inv.asDiagonal() * es.eigenvectors().adjoint();
}

// Round to a fixed number of significant decimal digits (used by reports so
// serialized numbers are reproducible byte for byte).
inline double round_sig(double x, int digits) {
    if (x == 0.0 || !std::isfinite(x)) return x == 0.0 ? 0.0 : x;
    double mag = std::floor(std::log10(std::fabs(x)));
    double factor = std::pow(10.0, digits - 1 - mag);
    return std::round(x * factor) / factor;
}

}  // namespace symdisc
