// Certified real-root isolation for integer polynomials of moderate degree:
// strip the X^m factor, peel off roots at +-1 by exact evaluation, reduce to
// the squarefree part, then run Sturm bisection over exact rationals inside
// the Cauchy bound. Every reported root carries a rational interval that
// provably contains it and nothing else.
#pragma once

#include "aeset/sparse_poly.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <stdexcept>
#include <vector>

namespace aeset {

// Dense conversion refuses anything above this degree; the large-p families
// never go through root isolation.
inline constexpr long kMaxIsolationDegree = 10000;

struct RealRoot {
    double value;    // exact root when exact, else midpoint of [low, high]
    mpq_class low;   // certified enclosure: low <= root <= high
    mpq_class high;  // width < tol unless exact (then low == high)
    bool exact;
};

namespace detail {

// Dense form: coefficient of X^i at index i, no trailing zeros.
using Dense = std::vector<mpz_class>;

inline void trim(Dense& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

inline long deg(const Dense& p) { return static_cast<long>(p.size()) - 1; }

inline Dense to_dense(const SparsePoly& p) {
    const mpz_class& d = p.degree();
    if (d > kMaxIsolationDegree)
        throw std::domain_error("real_roots: degree exceeds the isolation guard");
    Dense out(static_cast<std::size_t>(d.get_ui()) + 1, mpz_class(0));
    for (const auto& [e, c] : p.terms()) out[e.get_ui()] = c;
    return out;
}

inline Dense derivative(const Dense& p) {
    Dense out;
    for (std::size_t i = 1; i < p.size(); ++i) out.push_back(mpz_class(i) * p[i]);
    trim(out);
    return out;
}

inline mpz_class content(const Dense& p) {
    mpz_class g = 0;
    for (const auto& c : p) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
        if (g == 1) break;
    }
    return g;
}

// Divides out the (positive) content; sign of the leading coefficient is kept.
inline Dense primitive(Dense p) {
    trim(p);
    mpz_class g = content(p);
    if (g > 1)
        for (auto& c : p) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
    return p;
}

inline int eval_sign_dense(const Dense& p, const mpq_class& x) {
    mpq_class acc = 0;
    for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + mpq_class(*it);
    return sgn(acc);
}

// Remainder of (lc(b)^t * a) / b where t is the number of reduction steps
// taken, sign-corrected so the effective multiplier is positive. Callers
// only use the result up to positive scaling (a primitive-part step follows).
inline Dense pseudo_rem_pos(const Dense& a, const Dense& b) {
    if (b.empty()) throw std::invalid_argument("pseudo_rem_pos: zero divisor");
    Dense r = a;
    trim(r);
    const mpz_class& lead = b.back();
    long steps = 0;
    while (!r.empty() && deg(r) >= deg(b)) {
        long shift = deg(r) - deg(b);
        mpz_class top = r.back();
        for (auto& c : r) c *= lead;
        for (std::size_t i = 0; i < b.size(); ++i)
            r[static_cast<std::size_t>(shift) + i] -= top * b[i];
        trim(r);
        ++steps;
    }
    if (lead < 0 && steps % 2 != 0)
        for (auto& c : r) c = -c;
    return r;
}

inline bool is_zero(const Dense& p) { return p.empty(); }

// Primitive polynomial gcd via the primitive pseudo-remainder sequence.
// Result is primitive with positive leading coefficient.
inline Dense gcd_primitive(Dense a, Dense b) {
    a = primitive(std::move(a));
    b = primitive(std::move(b));
    if (is_zero(a)) return b;
    if (is_zero(b)) return a;
    if (deg(a) < deg(b)) std::swap(a, b);
    while (true) {
        Dense r = pseudo_rem_pos(a, b);
        if (is_zero(r)) break;
        a = std::move(b);
        b = primitive(std::move(r));
    }
    if (!b.empty() && b.back() < 0)
        for (auto& c : b) c = -c;
    return b;
}

// Exact division; throws if b does not divide a over the integers.
inline Dense exact_div(const Dense& a, const Dense& b) {
    if (is_zero(b)) throw std::invalid_argument("exact_div: zero divisor");
    Dense r = a;
    trim(r);
    if (is_zero(r)) return {};
    if (deg(r) < deg(b)) throw std::runtime_error("exact_div: division is not exact");
    Dense q(static_cast<std::size_t>(deg(r) - deg(b)) + 1, mpz_class(0));
    const mpz_class& lead = b.back();
    while (!r.empty() && deg(r) >= deg(b)) {
        if (!mpz_divisible_p(r.back().get_mpz_t(), lead.get_mpz_t()))
            throw std::runtime_error("exact_div: division is not exact");
        mpz_class f;
        mpz_divexact(f.get_mpz_t(), r.back().get_mpz_t(), lead.get_mpz_t());
        long shift = deg(r) - deg(b);
        q[static_cast<std::size_t>(shift)] = f;
        for (std::size_t i = 0; i < b.size(); ++i)
            r[static_cast<std::size_t>(shift) + i] -= f * b[i];
        trim(r);
    }
    if (!is_zero(r)) throw std::runtime_error("exact_div: division is not exact");
    return q;
}

// Quotient by (X - r) for r in {1, -1}; remainder must vanish.
inline Dense divide_linear_unit(const Dense& p, int r) {
    if (p.size() < 2) throw std::invalid_argument("divide_linear_unit: degree too small");
    Dense q(p.size() - 1);
    mpz_class carry = 0;
    for (std::size_t i = p.size(); i-- > 1;) {
        carry = p[i] + r * carry;
        q[i - 1] = carry;
    }
    mpz_class rem = p[0] + r * carry;
    if (rem != 0) throw std::runtime_error("divide_linear_unit: nonzero remainder");
    trim(q);
    return q;
}

inline std::vector<Dense> sturm_chain(const Dense& squarefree) {
    std::vector<Dense> chain;
    chain.push_back(primitive(squarefree));
    Dense d = primitive(derivative(squarefree));
    if (is_zero(d)) return chain;
    chain.push_back(std::move(d));
    while (deg(chain.back()) > 0) {
        Dense r = pseudo_rem_pos(chain[chain.size() - 2], chain.back());
        if (is_zero(r)) break;
        r = primitive(std::move(r));
        for (auto& c : r) c = -c;
        chain.push_back(std::move(r));
    }
    return chain;
}

inline int sign_changes(const std::vector<Dense>& chain, const mpq_class& x) {
    int changes = 0, prev = 0;
    for (const Dense& p : chain) {
        int s = eval_sign_dense(p, x);
        if (s != 0) {
            if (prev != 0 && s != prev) ++changes;
            prev = s;
        }
    }
    return changes;
}

// Number of distinct roots in (a, b]; requires chain[0](a) != 0.
inline int count_roots(const std::vector<Dense>& chain, const mpq_class& a, const mpq_class& b) {
    return sign_changes(chain, a) - sign_changes(chain, b);
}

// Smallest-magnitude bound B with all real roots in (-B, B).
inline mpq_class cauchy_bound(const Dense& p) {
    mpz_class top = abs(p.back());
    mpz_class big = 0;
    for (std::size_t i = 0; i + 1 < p.size(); ++i) big = std::max(big, mpz_class(abs(p[i])));
    mpq_class b(big, top);
    b.canonicalize();
    return b + 1;
}

}  // namespace detail

// All distinct real roots of a nonzero polynomial, ascending, each bracketed
// by an exact rational interval of width < tol (width 0 for roots recognized
// exactly: 0, +-1, and any bisection midpoint that lands on a root).
inline std::vector<RealRoot> real_roots(const SparsePoly& poly, double tol = 1e-9) {
    if (poly.is_zero()) throw std::invalid_argument("real_roots: zero polynomial");
    if (tol <= 0) throw std::invalid_argument("real_roots: tol must be positive");

    std::vector<RealRoot> out;
    SparsePoly work = poly;

    if (work.min_exponent() > 0) {
        out.push_back({0.0, mpq_class(0), mpq_class(0), true});
        work = work.divided_by_power(work.min_exponent());
    }
    if (work.degree() == 0) return out;

    detail::Dense dense = detail::to_dense(work);
    for (int r : {1, -1}) {
        bool hit = false;
        while (detail::deg(dense) >= 1 && detail::eval_sign_dense(dense, mpq_class(r)) == 0) {
            dense = detail::divide_linear_unit(dense, r);
            hit = true;
        }
        if (hit) out.push_back({static_cast<double>(r), mpq_class(r), mpq_class(r), true});
    }

    if (detail::deg(dense) >= 1) {
        detail::Dense prim = detail::primitive(dense);
        detail::Dense g = detail::gcd_primitive(prim, detail::derivative(prim));
        detail::Dense sf = (detail::deg(g) > 0) ? detail::exact_div(prim, g) : prim;

        if (detail::deg(sf) >= 1) {
            auto chain = detail::sturm_chain(sf);
            mpq_class bound = detail::cauchy_bound(sf);

            struct Segment {
                mpq_class lo, hi;  // invariant: sf(lo) != 0, roots counted in (lo, hi]
                int count;
            };
            std::vector<Segment> stack;
            int total = detail::count_roots(chain, -bound, bound);
            if (total > 0) stack.push_back({-bound, bound, total});

            while (!stack.empty()) {
                Segment seg = std::move(stack.back());
                stack.pop_back();
                if (seg.count == 0) continue;

                if (seg.count == 1) {
                    if (detail::eval_sign_dense(sf, seg.hi) == 0) {
                        out.push_back({seg.hi.get_d(), seg.hi, seg.hi, true});
                        continue;
                    }
                    while (mpq_class(seg.hi - seg.lo).get_d() >= tol) {
                        mpq_class mid = (seg.lo + seg.hi) / 2;
                        int s = detail::eval_sign_dense(sf, mid);
                        if (s == 0) {
                            seg.lo = mid;
                            seg.hi = mid;
                            break;
                        }
                        if (detail::count_roots(chain, seg.lo, mid) == 1)
                            seg.hi = mid;
                        else
                            seg.lo = mid;
                    }
                    bool exact = seg.lo == seg.hi;
                    mpq_class mid = (seg.lo + seg.hi) / 2;
                    out.push_back({mid.get_d(), seg.lo, seg.hi, exact});
                    continue;
                }

                mpq_class mid = (seg.lo + seg.hi) / 2;
                if (detail::eval_sign_dense(sf, mid) != 0) {
                    int left = detail::count_roots(chain, seg.lo, mid);
                    stack.push_back({seg.lo, mid, left});
                    stack.push_back({mid, seg.hi, seg.count - left});
                    continue;
                }
                // The midpoint is itself a root: shrink a window around it
                // containing no other root, then recurse on the two sides.
                out.push_back({mid.get_d(), mid, mid, true});
                mpq_class w = (seg.hi - seg.lo) / 4;
                while (detail::eval_sign_dense(sf, mid - w) == 0 ||
                       detail::count_roots(chain, mid - w, mid + w) != 1)
                    w /= 2;
                stack.push_back({seg.lo, mid - w, detail::count_roots(chain, seg.lo, mid - w)});
                stack.push_back({mid + w, seg.hi, detail::count_roots(chain, mid + w, seg.hi)});
            }
        }
    }

    std::sort(out.begin(), out.end(),
              [](const RealRoot& a, const RealRoot& b) { return a.low < b.low; });
    return out;
}

}  // namespace aeset
