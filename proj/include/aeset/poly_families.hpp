// The obstruction-polynomial families. For index lists h, g and base p,
// with T_c(L) = sum_{a in L} X^(c * p^a), the family member is
//
//   f(X) = T3(h)^2 T2(g) T4(g) - T3(g)^2 T2(h) T4(h).
//
// Its positive roots in (0, 1) are exactly the points where the two
// normalized-overlap sides coincide (condition_gap below), which is what
// makes a candidate coefficient x fail to rule out a product mapping.
#pragma once

#include "aeset/root_isolation.hpp"
#include "aeset/sparse_poly.hpp"

#include <Eigen/Dense>
#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>
#include <vector>

namespace aeset {

struct IndexLists {
    std::vector<int> h;
    std::vector<int> g;
    int p;

    IndexLists(std::vector<int> h_, std::vector<int> g_, int p_)
        : h(std::move(h_)), g(std::move(g_)), p(p_) {
        if (h.empty() || h.size() != g.size())
            throw std::invalid_argument("IndexLists: h and g must be nonempty and equal length");
        if (p < 2) throw std::invalid_argument("IndexLists: p must be >= 2");
        std::set<int> all;
        for (int v : h) {
            if (v < 1) throw std::invalid_argument("IndexLists: indices must be positive");
            all.insert(v);
        }
        for (int v : g) {
            if (v < 1) throw std::invalid_argument("IndexLists: indices must be positive");
            all.insert(v);
        }
        if (all.size() != h.size() + g.size())
            throw std::invalid_argument("IndexLists: indices must be pairwise distinct");
    }

    std::size_t s() const { return h.size(); }
};

namespace detail {

// T_c(L) = sum over a in L of X^(c * p^a).
inline SparsePoly power_sum(int p, int c, const std::vector<int>& list) {
    SparsePoly out;
    for (int a : list) out.add_term(c * pow_mpz(p, a), 1);
    return out;
}

inline SparsePoly family_poly(const IndexLists& lists) {
    SparsePoly t3h = power_sum(lists.p, 3, lists.h);
    SparsePoly t3g = power_sum(lists.p, 3, lists.g);
    SparsePoly lhs = t3h * t3h * power_sum(lists.p, 2, lists.g) * power_sum(lists.p, 4, lists.g);
    SparsePoly rhs = t3g * t3g * power_sum(lists.p, 2, lists.h) * power_sum(lists.p, 4, lists.h);
    return lhs - rhs;
}

}  // namespace detail

// The four-index member written f_{ij|kl}: the (i,j) pair carries the
// degree-2 and degree-4 sums on the positive side. In list form this is the
// generic polynomial with h = {k, l} and g = {i, j}:
//   poly_f_pair(p, i, j, k, l) == poly_f_general({{k, l}, {i, j}, p}).
inline SparsePoly poly_f_pair(int p, int i, int j, int k, int l) {
    return detail::family_poly(IndexLists({k, l}, {i, j}, p));
}

// Arbitrary block sizes s >= 2; exponent uniqueness (hence the cancellation
// structure) needs p >= 7.
inline SparsePoly poly_f_general(const IndexLists& lists) {
    if (lists.s() < 2) throw std::invalid_argument("poly_f_general: need s >= 2");
    if (lists.p < 7) throw std::invalid_argument("poly_f_general: need p >= 7");
    return detail::family_poly(lists);
}

// Sorted union of the real roots of f_12|34, f_13|24, f_14|23 at base p,
// with duplicates merged at tolerance 1e-9.
inline std::vector<double> excluded_values(int p = 2) {
    std::vector<double> all;
    const int pairs[3][4] = {{1, 2, 3, 4}, {1, 3, 2, 4}, {1, 4, 2, 3}};
    for (const auto& q : pairs)
        for (const RealRoot& r : real_roots(poly_f_pair(p, q[0], q[1], q[2], q[3])))
            all.push_back(r.value);
    std::sort(all.begin(), all.end());
    std::vector<double> merged;
    for (double v : all)
        if (merged.empty() || v - merged.back() > 1e-9) merged.push_back(v);
    return merged;
}

// LHS - RHS of the overlap-equality condition at 0 < x < 1:
//   side(L) = (sum x^(3p^a))^2 / (sum x^(2p^a) * sum x^(4p^a)),  a in L,
// evaluated as side(h) - side(g). Zero exactly at roots of
// poly_f_general(lists); the sign matches eval_sign of that polynomial since
// the cleared denominators are positive on (0, 1).
inline double condition_gap(int p, double x, const IndexLists& lists) {
    if (!(x > 0.0 && x < 1.0)) throw std::invalid_argument("condition_gap: need 0 < x < 1");
    if (p != lists.p) throw std::invalid_argument("condition_gap: p disagrees with lists.p");

    // Each sum is factored by its smallest term so the ratio stays away from
    // 0/0 underflow even when exponents reach millions.
    auto side = [&](const std::vector<int>& list) {
        double pmin = std::pow(double(p), *std::min_element(list.begin(), list.end()));
        auto reduced_sum = [&](int c) {
            double s = 0.0;
            for (int a : list) s += std::pow(x, c * (std::pow(double(p), a) - pmin));
            return s;
        };
        double s3 = reduced_sum(3), s2 = reduced_sum(2), s4 = reduced_sum(4);
        return (s3 * s3) / (s2 * s4);
    };
    return side(lists.h) - side(lists.g);
}

// Whether a single unitary (plus phases) can map the normalized pair
// (u, v) onto (u2, v2): true iff the normalized overlaps agree within tol.
inline bool relatable(const Eigen::VectorXd& u, const Eigen::VectorXd& v,
                      const Eigen::VectorXd& u2, const Eigen::VectorXd& v2, double tol) {
    if (u.size() != v.size() || u2.size() != v2.size())
        throw std::invalid_argument("relatable: paired vectors must have equal length");
    double nu = u.norm(), nv = v.norm(), nu2 = u2.norm(), nv2 = v2.norm();
    if (nu == 0.0 || nv == 0.0 || nu2 == 0.0 || nv2 == 0.0)
        throw std::invalid_argument("relatable: zero vector");
    double o1 = std::abs(u.dot(v)) / (nu * nv);
    double o2 = std::abs(u2.dot(v2)) / (nu2 * nv2);
    return std::abs(o1 - o2) <= tol;
}

}  // namespace aeset
