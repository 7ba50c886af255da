// State-set constructions and the two constructive unitaries: the embedding
// that sends a partitioned family to product form, and the witness unitary
// built from a low-dimension index. Index arguments are 0-based here; the
// command-line layer converts from 1-based labels.
#pragma once

#include "aeset/entanglement.hpp"
#include "aeset/linalg.hpp"
#include "aeset/poly_families.hpp"

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace aeset {

namespace detail {

inline bool is_composite(int d) {
    for (int q = 2; q * q <= d; ++q)
        if (d % q == 0) return true;
    return false;
}

// Orthonormal basis columns for C^d; empty input means computational.
inline Mat resolve_basis(int d, const std::vector<Vec>& basis) {
    if (basis.empty()) return Mat::Identity(d, d);
    Mat m = columns(basis);
    if (m.rows() != d || !is_unitary(m))
        throw std::invalid_argument("basis: need d orthonormal vectors of dimension d");
    return m;
}

}  // namespace detail

struct Theorem1Premise {
    bool holds;
    double lambda_star;  // max_i |b_i|^2 / (2 |a_i|^2); holds iff < 1
};

// Any lambda in [lambda_star, 1) then satisfies lambda |a_i|^2 >= |b_i|^2 / 2
// for every i, with strict inequality available below 1.
inline Theorem1Premise theorem1_premise(const std::vector<Complex>& a,
                                        const std::vector<Complex>& b) {
    if (a.empty() || a.size() != b.size())
        throw std::invalid_argument("theorem1_premise: need equal nonempty coefficient lists");
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        double a2 = std::norm(a[i]);
        if (a2 == 0.0)
            throw std::invalid_argument("theorem1_premise: a_i = 0 makes the premise unsatisfiable");
        worst = std::max(worst, std::norm(b[i]) / (2.0 * a2));
    }
    return {worst < 1.0, worst};
}

struct Theorem1Params {
    int d;                    // non-prime, >= 4
    std::vector<Complex> a;   // length d-1, for states 2..d
    std::vector<Complex> b;   // length d-1, all nonzero
    std::vector<Vec> basis;   // optional; empty = computational
};

// phi_1 = xi_1, phi_i = a_i xi_1 + b_i xi_i (i = 2..d). Coefficient pairs
// are rescaled to |a_i|^2 + |b_i|^2 = 1 first.
inline StateSet theorem1_set(const Theorem1Params& params) {
    if (params.d < 4 || !detail::is_composite(params.d))
        throw std::invalid_argument("theorem1_set: d must be non-prime and >= 4");
    if (params.a.size() != static_cast<std::size_t>(params.d - 1) ||
        params.b.size() != params.a.size())
        throw std::invalid_argument("theorem1_set: coefficient lists must have length d-1");

    std::vector<Complex> a = params.a, b = params.b;
    for (std::size_t i = 0; i < a.size(); ++i) {
        double n2 = std::norm(a[i]) + std::norm(b[i]);
        if (n2 == 0.0) throw std::invalid_argument("theorem1_set: zero coefficient pair");
        double s = 1.0 / std::sqrt(n2);
        a[i] *= s;
        b[i] *= s;
        if (std::norm(b[i]) < 1e-24)
            throw std::invalid_argument("theorem1_set: b_i must be nonzero");
    }
    Theorem1Premise premise = theorem1_premise(a, b);
    if (!premise.holds)
        throw std::invalid_argument("theorem1_set: premise fails, lambda_star = " +
                                    std::to_string(premise.lambda_star));

    Mat xi = detail::resolve_basis(params.d, params.basis);
    std::vector<Vec> states;
    std::vector<std::string> labels;
    states.push_back(xi.col(0));
    labels.push_back("phi1");
    for (int i = 2; i <= params.d; ++i) {
        states.push_back(a[i - 2] * xi.col(0) + b[i - 2] * xi.col(i - 1));
        labels.push_back("phi" + std::to_string(i));
    }
    return StateSet(std::move(states), std::move(labels));
}

// The five-state family in C^4 at base p = 2:
// psi_1..3 = xi_1..3, psi_4 ~ sum x^(2^j) xi_j, psi_5 ~ sum x^(2*2^j) xi_j.
// At the finitely many excluded x the defining polynomial argument breaks
// down, so those points get a warning rather than a rejection.
inline StateSet example1_set(double x, const std::vector<Vec>& basis = {},
                             std::vector<std::string>* warnings = nullptr) {
    if (!(x > 0.0 && x < 1.0)) throw std::invalid_argument("example1_set: need 0 < x < 1");
    if (warnings) {
        for (double bad : excluded_values(2))
            if (std::abs(x - bad) <= 1e-9)
                warnings->push_back("x = " + std::to_string(x) +
                                    " is an excluded value; the entanglement argument fails there");
    }
    Mat xi = detail::resolve_basis(4, basis);
    std::vector<Vec> states;
    for (int i = 0; i < 3; ++i) states.push_back(xi.col(i));
    for (int c = 1; c <= 2; ++c) {
        Vec v = Vec::Zero(4);
        for (int j = 1; j <= 4; ++j) v += std::pow(x, c * std::pow(2.0, j)) * xi.col(j - 1);
        states.push_back(v);
    }
    return StateSet(std::move(states));
}

// The d+1 = 2n+1 state family: psi_1..d-1 = xi_1..d-1,
// psi_d ~ sum_j x^(p^j) xi_j, psi_{d+1} ~ sum_j x^(2 p^j) xi_j.
inline StateSet theorem2_set(int n, int p, double x, const std::vector<Vec>& basis = {},
                             std::vector<std::string>* warnings = nullptr) {
    if (n < 2) throw std::invalid_argument("theorem2_set: need n >= 2");
    if (p < 7) throw std::invalid_argument("theorem2_set: need p >= 7");
    if (!(x > 0.0 && x < 1.0)) throw std::invalid_argument("theorem2_set: need 0 < x < 1");
    if (p == 7 && warnings)
        warnings->push_back(
            "p = 7 is the boundary case; the non-vanishing lemma needs p >= 7 while the "
            "theorem statement asks for p > 7");
    const int d = 2 * n;
    Mat xi = detail::resolve_basis(d, basis);
    std::vector<Vec> states;
    for (int i = 0; i < d - 1; ++i) states.push_back(xi.col(i));
    for (int c = 1; c <= 2; ++c) {
        Vec v = Vec::Zero(d);
        for (int j = 1; j <= d; ++j) v += std::pow(x, c * std::pow(double(p), j)) * xi.col(j - 1);
        states.push_back(v);
    }
    return StateSet(std::move(states));
}

// A state family split into mutually orthogonal parts, each of bounded
// dimension; exactly the shape the embedding construction consumes.
struct PartitionedSet {
    std::vector<StateSet> parts;
    Bipartition bip;

    PartitionedSet(std::vector<StateSet> parts_, Bipartition bip_, double ortho_tol = 1e-10)
        : parts(std::move(parts_)), bip(bip_) {
        if (parts.empty()) throw std::invalid_argument("PartitionedSet: no parts");
        if (static_cast<int>(parts.size()) > bip.d1)
            throw std::invalid_argument("PartitionedSet: more parts than d1");
        for (const StateSet& part : parts) {
            if (part.dim() != bip.dim())
                throw std::invalid_argument("PartitionedSet: state dimension mismatch");
            if (numeric_rank(part.states()) > bip.d2)
                throw std::invalid_argument("PartitionedSet: part dimension exceeds d2");
        }
        for (std::size_t i = 0; i < parts.size(); ++i)
            for (std::size_t j = i + 1; j < parts.size(); ++j)
                for (const Vec& u : parts[i].states())
                    for (const Vec& v : parts[j].states())
                        if (std::abs(u.dot(v)) > ortho_tol)
                            throw std::invalid_argument(
                                "PartitionedSet: cross-part orthogonality violated");
    }

    int total_states() const {
        int n = 0;
        for (const StateSet& part : parts) n += part.size();
        return n;
    }
};

// The product-form embedding: orthonormalize each part into {xi_j^(i)},
// send xi_j^(i) to |i>|j>, and extend to a full unitary. Every input state
// then lands in |i> tensor (its coefficient vector).
inline Unitary prop2_embed_unitary(const PartitionedSet& pset) {
    const int d = pset.bip.dim();
    const int d2 = pset.bip.d2;

    std::vector<Vec> from, to;
    for (std::size_t i = 0; i < pset.parts.size(); ++i) {
        GramSchmidtResult gs = gram_schmidt_extend(pset.parts[i].states(), d);
        if (gs.rank > d2)
            throw std::invalid_argument("prop2_embed_unitary: part dimension exceeds d2");
        for (int j = 0; j < gs.rank; ++j) {
            from.push_back(gs.span[static_cast<std::size_t>(j)]);
            Vec target = Vec::Zero(d);
            target(static_cast<int>(i) * d2 + j) = 1.0;
            to.push_back(target);
        }
    }

    // Cross-part residuals sit at the orthogonality tolerance; one union
    // re-orthonormalization pushes the from-side to transport precision.
    GramSchmidtResult all = gram_schmidt_extend(from, d);
    if (all.rank != static_cast<int>(from.size()))
        throw std::runtime_error("prop2_embed_unitary: parts are not independent");
    std::vector<Vec> from_full = all.span;
    from_full.insert(from_full.end(), all.completion.begin(), all.completion.end());

    GramSchmidtResult to_ext = gram_schmidt_extend(to, d);
    std::vector<Vec> to_full = to_ext.span;
    to_full.insert(to_full.end(), to_ext.completion.begin(), to_ext.completion.end());

    return basis_transport_unitary(from_full, to_full);
}

// Witness unitary for a family whose dimension drops to d2 or below once
// state i is removed. With {xi_k} a basis of span(S \ psi_i) and
// psi_i = sum_k c_k xi_k + beta eta:
//   - every other state maps into |1> tensor C^d2 via xi_k -> |1>|k>;
//   - eta goes to |2>|1> when all c_k vanish, else to |2> N(sum c_k |k>),
//     which factors psi_i as (|1> + beta' |2>) tensor N(sum c_k |k>).
inline Unitary prop1_witness_unitary(const StateSet& set, int i, Bipartition bip,
                                     double tol = kRankTol) {
    if (set.dim() != bip.dim())
        throw std::invalid_argument("prop1_witness_unitary: dimension mismatch");
    if (i < 0 || i >= set.size())
        throw std::invalid_argument("prop1_witness_unitary: index out of range");

    const int d = bip.dim();
    std::vector<Vec> rest;
    for (int j = 0; j < set.size(); ++j)
        if (j != i) rest.push_back(set.state(j));
    if (numeric_rank(rest, tol) > bip.d2)
        throw std::invalid_argument(
            "prop1_witness_unitary: removed-state family exceeds dimension d2");

    GramSchmidtResult gs = gram_schmidt_extend(rest, d, tol);
    const int r = gs.rank;
    if (r > bip.d2)
        throw std::invalid_argument(
            "prop1_witness_unitary: removed-state family exceeds dimension d2");

    const Vec& psi = set.state(i);
    Vec coeffs(r);
    Vec residual = psi;
    for (int k = 0; k < r; ++k) {
        coeffs(k) = gs.span[static_cast<std::size_t>(k)].dot(psi);
        residual -= coeffs(k) * gs.span[static_cast<std::size_t>(k)];
    }
    double beta = residual.norm();

    std::vector<Vec> from = gs.span;
    std::vector<Vec> to;
    for (int k = 0; k < r; ++k) {
        Vec target = Vec::Zero(d);
        target(k) = 1.0;  // |1>|k>
        to.push_back(target);
    }

    if (beta > tol) {
        from.push_back(residual / beta);
        Vec target = Vec::Zero(d);
        if (coeffs.norm() <= tol) {
            target(bip.d2) = 1.0;  // |2>|1>
        } else {
            Vec bside = coeffs / coeffs.norm();
            for (int k = 0; k < r; ++k) target(bip.d2 + k) = bside(k);  // |2> N(c)
        }
        to.push_back(target);
    }

    GramSchmidtResult from_ext = gram_schmidt_extend(from, d, tol);
    if (from_ext.rank != static_cast<int>(from.size()))
        throw std::runtime_error("prop1_witness_unitary: degenerate construction basis");
    std::vector<Vec> from_full = from_ext.span;
    from_full.insert(from_full.end(), from_ext.completion.begin(), from_ext.completion.end());

    GramSchmidtResult to_ext = gram_schmidt_extend(to, d);
    std::vector<Vec> to_full = to_ext.span;
    to_full.insert(to_full.end(), to_ext.completion.begin(), to_ext.completion.end());

    return basis_transport_unitary(from_full, to_full);
}

}  // namespace aeset
