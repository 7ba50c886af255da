// Complex linear algebra on small dimensions: orthonormalization, basis
// extension, SVD, Haar sampling, and basis-transport unitaries. Everything
// here is a pure function of its inputs; dimensions stay small (d <= 64).
#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace aeset {

using Complex = std::complex<double>;
using Vec = Eigen::VectorXcd;
using Mat = Eigen::MatrixXcd;

// Default tolerances used across the library.
inline constexpr double kUnitaryTol = 1e-10;
inline constexpr double kRankTol = 1e-9;

inline double max_abs(const Mat& m) { return m.cwiseAbs().maxCoeff(); }

inline bool is_unitary(const Mat& u, double tol = kUnitaryTol) {
    if (u.rows() != u.cols() || u.rows() == 0) return false;
    Mat gram = u.adjoint() * u;
    gram -= Mat::Identity(u.rows(), u.cols());
    return max_abs(gram) < tol;
}

// A square matrix validated to satisfy ||U^dag U - I||_max < tol.
class Unitary {
public:
    explicit Unitary(Mat m, double tol = kUnitaryTol) : m_(std::move(m)) {
        if (!is_unitary(m_, tol))
            throw std::invalid_argument("Unitary: matrix fails the unitarity check");
    }

    const Mat& matrix() const { return m_; }
    int dim() const { return static_cast<int>(m_.rows()); }
    Vec apply(const Vec& v) const { return m_ * v; }

private:
    Mat m_;
};

struct GramSchmidtResult {
    std::vector<Vec> span;        // orthonormal, spans the input family
    int rank = 0;                 // = span.size()
    std::vector<Vec> completion;  // span + completion is an orthonormal basis of C^d
};

namespace detail {

// Subtracts the components of v along the (orthonormal) family twice;
// a single pass is not enough to reach 1e-14 Gram residuals.
inline Vec project_out(Vec v, const std::vector<Vec>& family) {
    for (int pass = 0; pass < 2; ++pass)
        for (const Vec& u : family) v -= u * u.dot(v);
    return v;
}

}  // namespace detail

// Modified Gram-Schmidt with basis extension. A vector is dropped when its
// residual norm after projection is below tol * (1 + ||input||).
inline GramSchmidtResult gram_schmidt_extend(const std::vector<Vec>& vectors, int d,
                                             double tol = kRankTol) {
    if (d <= 0) throw std::invalid_argument("gram_schmidt_extend: d must be positive");
    if (tol <= 0) throw std::invalid_argument("gram_schmidt_extend: tol must be positive");
    for (const Vec& v : vectors)
        if (v.size() != d)
            throw std::invalid_argument("gram_schmidt_extend: dimension mismatch among inputs");

    GramSchmidtResult out;
    std::vector<Vec> kept;
    for (const Vec& v : vectors) {
        Vec r = detail::project_out(v, kept);
        double nrm = r.norm();
        if (nrm < tol * (1.0 + v.norm())) continue;  // linearly dependent
        out.span.push_back(r / nrm);
        kept.push_back(out.span.back());
    }
    out.rank = static_cast<int>(out.span.size());

    for (int k = 0; k < d && static_cast<int>(kept.size()) < d; ++k) {
        Vec e = Vec::Zero(d);
        e(k) = 1.0;
        Vec r = detail::project_out(e, kept);
        double nrm = r.norm();
        if (nrm < tol * 2.0) continue;
        out.completion.push_back(r / nrm);
        kept.push_back(out.completion.back());
    }
    if (static_cast<int>(kept.size()) != d)
        throw std::runtime_error("gram_schmidt_extend: failed to complete the basis");
    return out;
}

// Haar-distributed random unitary: QR of a standard complex Gaussian matrix
// with the R-diagonal phases pushed into Q. Deterministic for a fixed seed.
inline Unitary haar_unitary(int d, std::uint64_t seed) {
    if (d <= 0) throw std::invalid_argument("haar_unitary: d must be positive");
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    Mat a(d, d);
    for (int r = 0; r < d; ++r)
        for (int c = 0; c < d; ++c) {
            double re = gauss(rng), im = gauss(rng);
            a(r, c) = Complex(re, im) / std::sqrt(2.0);
        }
    Eigen::HouseholderQR<Mat> qr(a);
    Mat q = qr.householderQ();
    Mat r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int k = 0; k < d; ++k) {
        Complex rkk = r(k, k);
        Complex phase = (std::abs(rkk) > 0.0) ? rkk / std::abs(rkk) : Complex(1.0, 0.0);
        q.col(k) *= phase;
    }
    return Unitary(std::move(q), 1e-12);
}

struct Svd {
    Mat left;                    // orthonormal columns
    Eigen::VectorXd singulars;   // descending
    Mat right;                   // orthonormal columns; M = left * diag * right^dag
};

inline Svd svd_small(const Mat& m) {
    if (m.rows() == 0 || m.cols() == 0)
        throw std::invalid_argument("svd_small: empty matrix");
    Eigen::JacobiSVD<Mat> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
    return Svd{svd.matrixU(), svd.singularValues(), svd.matrixV()};
}

namespace detail {

inline Mat columns(const std::vector<Vec>& basis) {
    if (basis.empty()) throw std::invalid_argument("empty basis");
    const auto d = basis.front().size();
    Mat m(d, static_cast<Eigen::Index>(basis.size()));
    for (std::size_t i = 0; i < basis.size(); ++i) {
        if (basis[i].size() != d) throw std::invalid_argument("basis dimension mismatch");
        m.col(static_cast<Eigen::Index>(i)) = basis[i];
    }
    return m;
}

}  // namespace detail

// The unitary sending from[i] to to[i]. Both lists must be orthonormal bases
// of the same C^d (checked to tol).
inline Unitary basis_transport_unitary(const std::vector<Vec>& from, const std::vector<Vec>& to,
                                       double tol = kUnitaryTol) {
    if (from.size() != to.size())
        throw std::invalid_argument("basis_transport_unitary: length mismatch");
    Mat f = detail::columns(from);
    Mat t = detail::columns(to);
    if (f.rows() != t.rows() || f.rows() != f.cols())
        throw std::invalid_argument("basis_transport_unitary: inputs are not full bases of C^d");
    if (!is_unitary(f, tol) || !is_unitary(t, tol))
        throw std::invalid_argument("basis_transport_unitary: input basis is not orthonormal");
    return Unitary(t * f.adjoint(), 10 * tol);
}

// splitmix64; used to derive independent per-restart seeds.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace aeset
