// Bipartite structure of pure states: reshaping to the (d1, d2) amplitude
// matrix, Schmidt decomposition, product detection via the product defect
// 1 - sigma_1^2, numeric dimension of state families, and the per-index
// dimension check dim(S \ {psi_i}) >= d2 + 1.
#pragma once

#include "aeset/linalg.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace aeset {

// A state counts as product when its defect is below this (two orders of
// magnitude above the SVD noise floor).
inline constexpr double kProductThreshold = 1e-8;

struct Bipartition {
    int d1;
    int d2;

    Bipartition(int d1_, int d2_) : d1(d1_), d2(d2_) {
        if (d1 < 2 || d2 < 2)
            throw std::invalid_argument("Bipartition: both factors must be >= 2");
    }
    int dim() const { return d1 * d2; }
};

// Amplitude matrix of a state under the identification C^d = C^{d1} x C^{d2}:
// entry (s, t) is the amplitude of |s>|t>, i.e. state[s*d2 + t].
inline Mat reshape(const Vec& state, Bipartition bip) {
    if (state.size() != bip.dim())
        throw std::invalid_argument("reshape: state dimension does not equal d1*d2");
    Mat m(bip.d1, bip.d2);
    for (int s = 0; s < bip.d1; ++s)
        for (int t = 0; t < bip.d2; ++t) m(s, t) = state(s * bip.d2 + t);
    return m;
}

struct SchmidtDecomposition {
    Eigen::VectorXd coefficients;  // nonnegative, descending, length min(d1,d2)
    std::vector<Vec> left;         // orthonormal, dim d1
    std::vector<Vec> right;        // orthonormal, dim d2

    Vec reconstruct() const {
        const int d1 = static_cast<int>(left.front().size());
        const int d2 = static_cast<int>(right.front().size());
        Vec out = Vec::Zero(d1 * d2);
        for (int k = 0; k < coefficients.size(); ++k)
            for (int s = 0; s < d1; ++s)
                for (int t = 0; t < d2; ++t)
                    out(s * d2 + t) += coefficients(k) * left[k](s) * right[k](t);
        return out;
    }
};

// state = sum_k c_k left_k (x) right_k with descending c_k >= 0.
inline SchmidtDecomposition schmidt(const Vec& state, Bipartition bip) {
    Svd svd = svd_small(reshape(state, bip));
    SchmidtDecomposition out;
    out.coefficients = svd.singulars;
    for (int k = 0; k < svd.singulars.size(); ++k) {
        out.left.push_back(svd.left.col(k));
        // M = U S V^dag, so the B-side Schmidt vectors are conj(V) columns.
        out.right.push_back(svd.right.col(k).conjugate());
    }
    return out;
}

namespace detail {

// Largest eigenvalue of a small Hermitian PSD matrix.
inline double hermitian_max_eig(const Mat& g) {
    if (g.rows() == 1) return g(0, 0).real();
    if (g.rows() == 2) {
        double half_tr = 0.5 * (g(0, 0).real() + g(1, 1).real());
        double det = g(0, 0).real() * g(1, 1).real() - std::norm(g(0, 1));
        double disc = std::max(half_tr * half_tr - det, 0.0);
        return half_tr + std::sqrt(disc);
    }
    Eigen::SelfAdjointEigenSolver<Mat> es(g, Eigen::EigenvaluesOnly);
    return es.eigenvalues().maxCoeff();
}

// 1 - sigma_1^2 of an amplitude matrix, normalized by its Frobenius norm.
inline double defect_of_matrix(const Mat& m) {
    Mat gram = (m.rows() <= m.cols()) ? Mat(m * m.adjoint()) : Mat(m.adjoint() * m);
    double trace = gram.trace().real();
    if (trace <= 0.0) throw std::invalid_argument("product_defect: zero state");
    double top = hermitian_max_eig(gram);
    return std::clamp(1.0 - top / trace, 0.0, 1.0);
}

}  // namespace detail

// 1 - (largest Schmidt coefficient)^2. Zero exactly on product states,
// invariant under local unitaries and global phase/scale.
inline double product_defect(const Vec& state, Bipartition bip) {
    return detail::defect_of_matrix(reshape(state, bip));
}

// Number of singular values of the stacked family exceeding
// tol * (largest singular value).
inline int numeric_rank(const std::vector<Vec>& states, double tol = kRankTol) {
    if (states.empty()) throw std::invalid_argument("numeric_rank: empty state list");
    if (tol <= 0) throw std::invalid_argument("numeric_rank: tol must be positive");
    Mat m = detail::columns(states);
    Eigen::JacobiSVD<Mat> svd(m);
    const auto& sv = svd.singularValues();
    double top = sv.size() ? sv(0) : 0.0;
    if (top == 0.0) return 0;
    int rank = 0;
    for (int i = 0; i < sv.size(); ++i)
        if (sv(i) > tol * top) ++rank;
    return rank;
}

// A list of normalized pure states of a common dimension. Inputs are
// normalized at construction; zero vectors are rejected.
class StateSet {
public:
    explicit StateSet(std::vector<Vec> states, std::vector<std::string> labels = {})
        : states_(std::move(states)), labels_(std::move(labels)) {
        if (states_.empty()) throw std::invalid_argument("StateSet: empty");
        const auto d = states_.front().size();
        for (auto& s : states_) {
            if (s.size() != d) throw std::invalid_argument("StateSet: mixed dimensions");
            double nrm = s.norm();
            if (nrm < 1e-14) throw std::invalid_argument("StateSet: zero vector");
            s /= nrm;
        }
        if (labels_.empty())
            for (std::size_t i = 0; i < states_.size(); ++i)
                labels_.push_back("psi" + std::to_string(i + 1));
        if (labels_.size() != states_.size())
            throw std::invalid_argument("StateSet: label count mismatch");
    }

    int dim() const { return static_cast<int>(states_.front().size()); }
    int size() const { return static_cast<int>(states_.size()); }
    const Vec& state(int i) const { return states_.at(static_cast<std::size_t>(i)); }
    const std::vector<Vec>& states() const { return states_; }
    const std::vector<std::string>& labels() const { return labels_; }

    StateSet transformed(const Mat& u) const {
        std::vector<Vec> out;
        out.reserve(states_.size());
        for (const Vec& s : states_) out.push_back(u * s);
        return StateSet(std::move(out), labels_);
    }

private:
    std::vector<Vec> states_;
    std::vector<std::string> labels_;
};

struct Prop1Report {
    struct Entry {
        int index;  // 0-based
        int dim;    // numeric rank of S \ {psi_index}
        bool pass;  // dim >= d2 + 1
    };
    std::vector<Entry> per_index;
    int d2 = 0;
    bool pass = false;  // all entries pass

    // First failing index, or -1. A failure is a candidate for the
    // product-mapping witness construction.
    int first_failure() const {
        for (const auto& e : per_index)
            if (!e.pass) return e.index;
        return -1;
    }
};

// For each i, reports dim(S \ {psi_i}) and whether it is >= d2 + 1; the whole
// check passes iff every index passes.
inline Prop1Report prop1_check(const StateSet& set, Bipartition bip, double tol = kRankTol) {
    if (set.size() < 2) throw std::invalid_argument("prop1_check: need at least 2 states");
    if (set.dim() != bip.dim())
        throw std::invalid_argument("prop1_check: state dimension does not match bipartition");
    Prop1Report report;
    report.d2 = bip.d2;
    report.pass = true;
    for (int i = 0; i < set.size(); ++i) {
        std::vector<Vec> rest;
        rest.reserve(static_cast<std::size_t>(set.size()) - 1);
        for (int j = 0; j < set.size(); ++j)
            if (j != i) rest.push_back(set.state(j));
        int r = numeric_rank(rest, tol);
        bool ok = r >= bip.d2 + 1;
        report.per_index.push_back({i, r, ok});
        report.pass = report.pass && ok;
    }
    return report;
}

}  // namespace aeset
