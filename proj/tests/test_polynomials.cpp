#include "aeset/poly_families.hpp"
#include "aeset/root_isolation.hpp"
#include "aeset/sparse_poly.hpp"

#include <catch2/catch_amalgamated.hpp>

#include "frozen_data.hpp"

#include <cmath>
#include <map>
#include <random>

using namespace aeset;

namespace {

// Independent expansion of the four-index polynomial over plain integers,
// written without reusing any SparsePoly machinery.
std::map<long, long> brute_force_pair(long p, int i, int j, int k, int l) {
    auto ipow = [](long b, int e) {
        long r = 1;
        while (e-- > 0) r *= b;
        return r;
    };
    auto pair_product = [&](int a, int b, int c, int d) {
        // (X^{3p^a}+X^{3p^b})^2 (X^{2p^c}+X^{2p^d}) (X^{4p^c}+X^{4p^d})
        std::map<long, long> out;
        long e3[2] = {3 * ipow(p, a), 3 * ipow(p, b)};
        long e2[2] = {2 * ipow(p, c), 2 * ipow(p, d)};
        long e4[2] = {4 * ipow(p, c), 4 * ipow(p, d)};
        for (long x : e3)
            for (long y : e3)
                for (long z : e2)
                    for (long w : e4) out[x + y + z + w] += 1;
        return out;
    };
    std::map<long, long> f = pair_product(k, l, i, j);
    for (const auto& [e, c] : pair_product(i, j, k, l)) f[e] -= c;
    std::erase_if(f, [](const auto& kv) { return kv.second == 0; });
    return f;
}

SparsePoly from_pairs(const std::vector<std::pair<long, long>>& terms) {
    SparsePoly p;
    for (const auto& [e, c] : terms) p.add_term(e, c);
    return p;
}

}  // namespace

TEST_CASE("SparsePoly arithmetic and invariants") {
    SparsePoly x1 = SparsePoly::from_terms({{1, 1}, {0, 1}});  // X + 1
    SparsePoly sq = x1 * x1;
    CHECK(sq.coeff(0) == 1);
    CHECK(sq.coeff(1) == 2);
    CHECK(sq.coeff(2) == 1);
    CHECK(sq.support_size() == 3);
    CHECK((sq - sq).is_zero());
    CHECK((x1 + (-x1)).is_zero());
    CHECK_THROWS_AS(SparsePoly::monomial(-1, 1), std::invalid_argument);
    CHECK(SparsePoly::monomial(5, 0).is_zero());
    CHECK_THROWS_AS(SparsePoly().degree(), std::invalid_argument);
    SparsePoly shifted = SparsePoly::from_terms({{3, 2}, {5, -1}});
    CHECK(shifted.divided_by_power(3).coeff(0) == 2);
    CHECK_THROWS_AS(shifted.divided_by_power(4), std::invalid_argument);
}

TEST_CASE("eval_sign handles rational points exactly") {
    SparsePoly p = SparsePoly::from_terms({{2, 1}, {0, -1}});  // X^2 - 1
    CHECK(eval_sign(p, mpq_class(1, 2)) == -1);
    CHECK(eval_sign(p, mpq_class(1)) == 0);
    CHECK(eval_sign(p, mpq_class(2)) == 1);
    CHECK(eval_sign(p, mpq_class(-3)) == 1);
    CHECK(eval_sign(p, mpq_class(0)) == -1);

    SparsePoly cube = SparsePoly::monomial(3, 1);
    CHECK(eval_sign(cube, mpq_class(-2)) == -1);
    CHECK(eval_sign(cube, mpq_class(0)) == 0);

    SparsePoly linear = SparsePoly::monomial(1, 1);  // X, odd min exponent
    CHECK(eval_sign(linear, mpq_class(-1, 3)) == -1);

    CHECK(eval_sign(SparsePoly(), mpq_class(7, 3)) == 0);
}

TEST_CASE("eval_sign agrees with floating point away from roots") {
    std::mt19937_64 rng(51);
    SparsePoly f = poly_f_pair(2, 1, 2, 3, 4);
    for (int t = 0; t < 40; ++t) {
        long num = 1 + static_cast<long>(rng() % 2000);
        mpq_class x(num, 1000);
        double xd = static_cast<double>(num) / 1000.0;
        double fd = eval_double(f, xd);
        if (std::abs(fd) > 1e-7) REQUIRE(eval_sign(f, x) == (fd > 0 ? 1 : -1));
    }
}

TEST_CASE("four-index polynomial matches an independent expansion") {
    std::mt19937_64 rng(53);
    for (int t = 0; t < 10; ++t) {
        int p = 2 + static_cast<int>(rng() % 3);
        int idx[4] = {1, 2, 3, 4};
        std::shuffle(idx, idx + 4, rng);
        SparsePoly lib = poly_f_pair(p, idx[0], idx[1], idx[2], idx[3]);
        auto brute = brute_force_pair(p, idx[0], idx[1], idx[2], idx[3]);
        REQUIRE(lib.support_size() == brute.size());
        for (const auto& [e, c] : brute) REQUIRE(lib.coeff(e) == c);
    }
}

TEST_CASE("published expansions agree up to one global sign") {
    for (const auto& pc : frozen::pair_cases()) {
        SparsePoly lib = poly_f_pair(2, pc.i, pc.j, pc.k, pc.l);
        SparsePoly printed = from_pairs(pc.printed);
        bool plus = lib == printed;
        bool minus = lib == -printed;
        INFO("pair " << pc.i << pc.j << "|" << pc.k << pc.l);
        REQUIRE((plus || minus));
    }
}

TEST_CASE("antisymmetry under swapping the index pairs") {
    SparsePoly a = poly_f_pair(2, 1, 2, 3, 4);
    SparsePoly b = poly_f_pair(2, 3, 4, 1, 2);
    CHECK((a + b).is_zero());
    CHECK(poly_f_pair(5, 2, 4, 1, 3) == -poly_f_pair(5, 1, 3, 2, 4));
}

TEST_CASE("universal roots at one, zero, and minus one") {
    std::mt19937_64 rng(57);
    for (int t = 0; t < 10; ++t) {
        int p = 2 + static_cast<int>(rng() % 8);
        int idx[4] = {1, 2, 3, 4};
        std::shuffle(idx, idx + 4, rng);
        SparsePoly f = poly_f_pair(p, idx[0], idx[1], idx[2], idx[3]);
        if (f.is_zero()) continue;
        REQUIRE(eval_sign(f, mpq_class(1)) == 0);
        REQUIRE(f.min_exponent() > 0);
        if (p % 2 == 0) REQUIRE(eval_sign(f, mpq_class(-1)) == 0);
    }
}

TEST_CASE("pair polynomial rejects invalid indices") {
    CHECK_THROWS_AS(poly_f_pair(2, 1, 1, 3, 4), std::invalid_argument);
    CHECK_THROWS_AS(poly_f_pair(1, 1, 2, 3, 4), std::invalid_argument);
    CHECK_THROWS_AS(poly_f_pair(2, 0, 1, 2, 3), std::invalid_argument);
}

TEST_CASE("general family reduces to the pair convention at s = 2") {
    SparsePoly gen = poly_f_general(IndexLists({3, 4}, {1, 2}, 7));
    SparsePoly pair = poly_f_pair(7, 1, 2, 3, 4);
    CHECK(gen == pair);
    CHECK_THROWS_AS(poly_f_general(IndexLists({1, 2}, {3, 4}, 2)), std::invalid_argument);
    CHECK_THROWS_AS(poly_f_general(IndexLists({1}, {2}, 7)), std::invalid_argument);
    CHECK_THROWS_AS(IndexLists({1, 2}, {2, 3}, 7), std::invalid_argument);
    CHECK_THROWS_AS(IndexLists({1, 2}, {3}, 7), std::invalid_argument);
}

TEST_CASE("diagonal monomials cancel in the general family") {
    IndexLists lists({1, 2}, {3, 4}, 7);
    SparsePoly f = poly_f_general(lists);
    REQUIRE_FALSE(f.is_zero());
    // 6*7^1 + 6*7^3 = 2100 is the (h=1, g=3) diagonal exponent.
    CHECK(f.coeff(2100) == 0);
    for (int a : lists.h)
        for (int b : lists.g) {
            mpz_class e = 6 * detail::pow_mpz(7, a) + 6 * detail::pow_mpz(7, b);
            REQUIRE(f.coeff(e) == 0);
        }
}

TEST_CASE("exactly s squared monomials coincide across the two products") {
    for (std::size_t s : {std::size_t(2), std::size_t(3)}) {
        std::vector<int> h, g;
        for (std::size_t i = 1; i <= s; ++i) h.push_back(static_cast<int>(i));
        for (std::size_t i = s + 1; i <= 2 * s; ++i) g.push_back(static_cast<int>(i));
        IndexLists lists(h, g, 7);
        SparsePoly t3h = detail::power_sum(7, 3, h), t3g = detail::power_sum(7, 3, g);
        SparsePoly lhs = t3h * t3h * detail::power_sum(7, 2, g) * detail::power_sum(7, 4, g);
        SparsePoly rhs = t3g * t3g * detail::power_sum(7, 2, h) * detail::power_sum(7, 4, h);
        std::size_t shared = 0;
        for (const auto& [e, c] : lhs.terms())
            if (rhs.coeff(e) != 0) ++shared;
        REQUIRE(shared == s * s);
        REQUIRE_FALSE(poly_f_general(lists).is_zero());
    }
}

TEST_CASE("real_roots on textbook polynomials") {
    auto cube = real_roots(SparsePoly::monomial(3, 5));
    REQUIRE(cube.size() == 1);
    CHECK(cube[0].value == 0.0);
    CHECK(cube[0].exact);

    auto pm1 = real_roots(SparsePoly::from_terms({{2, 1}, {0, -1}}));
    REQUIRE(pm1.size() == 2);
    CHECK(pm1[0].value == -1.0);
    CHECK(pm1[1].value == 1.0);
    CHECK(pm1[0].exact);
    CHECK(pm1[1].exact);

    CHECK_THROWS_AS(real_roots(SparsePoly()), std::invalid_argument);
    CHECK(real_roots(SparsePoly::constant(7)).empty());
}

TEST_CASE("real_roots collapses multiplicity to distinct roots") {
    // (X^2 - 2)^2 = X^4 - 4X^2 + 4
    SparsePoly p = SparsePoly::from_terms({{4, 1}, {2, -4}, {0, 4}});
    auto roots = real_roots(p, 1e-9);
    REQUIRE(roots.size() == 2);
    double s2 = std::sqrt(2.0);
    CHECK(roots[0].value == Catch::Approx(-s2).margin(1e-9));
    CHECK(roots[1].value == Catch::Approx(s2).margin(1e-9));
    for (const auto& r : roots) {
        CHECK_FALSE(r.exact);
        CHECK(mpq_class(r.high - r.low).get_d() < 1e-9);
        mpq_class lo2 = r.low * r.low, hi2 = r.high * r.high;
        // The enclosure straddles the true root: X^2 - 2 changes sign on it.
        CHECK(((lo2 - 2 < 0 && hi2 - 2 > 0) || (lo2 - 2 > 0 && hi2 - 2 < 0)));
    }
}

TEST_CASE("real_roots lands exactly on a rational midpoint root") {
    // (4X - 3)(X^2 - 2) = 4X^3 - 3X^2 - 8X + 6; bisection from the Cauchy
    // bound 3 reaches the midpoint 3/4 and must report it exactly.
    SparsePoly p = SparsePoly::from_terms({{3, 4}, {2, -3}, {1, -8}, {0, 6}});
    auto roots = real_roots(p, 1e-9);
    REQUIRE(roots.size() == 3);
    CHECK(roots[1].value == 0.75);
    CHECK(roots[1].exact);
    CHECK(roots[0].value == Catch::Approx(-std::sqrt(2.0)).margin(1e-9));
    CHECK(roots[2].value == Catch::Approx(std::sqrt(2.0)).margin(1e-9));
}

TEST_CASE("degree guard refuses huge dense conversions") {
    SparsePoly big = SparsePoly::from_terms({{20001, 1}, {1, -1}});
    CHECK_THROWS_AS(real_roots(big), std::domain_error);
}

TEST_CASE("published root table is reproduced") {
    for (const auto& pc : frozen::pair_cases()) {
        auto roots = real_roots(poly_f_pair(2, pc.i, pc.j, pc.k, pc.l), 1e-9);
        REQUIRE(roots.size() == pc.roots.size());
        for (std::size_t t = 0; t < roots.size(); ++t)
            REQUIRE(roots[t].value == Catch::Approx(pc.roots[t]).margin(1e-5));
    }
}

TEST_CASE("roots of the base pair family come in reciprocal pairs") {
    auto roots = real_roots(poly_f_pair(2, 1, 2, 3, 4), 1e-9);
    for (const auto& r : roots) {
        if (std::abs(r.value) < 0.5) continue;  // skip 0
        double recip = 1.0 / r.value;
        bool found = false;
        for (const auto& s : roots)
            if (std::abs(s.value - recip) < 1e-5) found = true;
        REQUIRE(found);
    }
    // Support is palindromic about (min+max)/2, the structural reason.
    SparsePoly f = poly_f_pair(2, 1, 2, 3, 4);
    mpz_class lo = f.min_exponent(), hi = f.degree();
    for (const auto& [e, c] : f.terms()) REQUIRE(f.coeff(hi - (e - lo)) == c);
}

TEST_CASE("excluded union has fifteen members") {
    auto vals = excluded_values(2);
    auto want = frozen::excluded_union();
    REQUIRE(vals.size() == want.size());
    for (std::size_t t = 0; t < vals.size(); ++t)
        REQUIRE(vals[t] == Catch::Approx(want[t]).margin(1e-5));
    CHECK(vals[7] == 0.0);   // exact entries survive the merge
    CHECK(vals[3] == -1.0);
    CHECK(vals[11] == 1.0);
}

TEST_CASE("condition gap vanishes at a published root and flips with the lists") {
    IndexLists lists({3, 4}, {1, 2}, 2);
    double root = 0.824127;
    CHECK(std::abs(condition_gap(2, root, lists)) < 1e-4);
    IndexLists swapped({1, 2}, {3, 4}, 2);
    double x = 0.5;
    CHECK(condition_gap(2, x, lists) == Catch::Approx(-condition_gap(2, x, swapped)));
    CHECK_THROWS_AS(condition_gap(2, 0.0, lists), std::invalid_argument);
    CHECK_THROWS_AS(condition_gap(2, 1.0, lists), std::invalid_argument);
    CHECK_THROWS_AS(condition_gap(3, 0.5, lists), std::invalid_argument);
}

TEST_CASE("condition gap sign matches the exact polynomial sign") {
    std::mt19937_64 rng(61);
    for (int t = 0; t < 60; ++t) {
        int p = 2 + static_cast<int>(rng() % 6);
        int idx[6] = {1, 2, 3, 4, 5, 6};
        std::shuffle(idx, idx + 6, rng);
        std::vector<int> h = {idx[0], idx[1]}, g = {idx[2], idx[3]};
        IndexLists lists(h, g, p);
        long num = 1 + static_cast<long>(rng() % 998);
        mpq_class xq(num, 1000);
        double xd = static_cast<double>(num) / 1000.0;
        double gap = condition_gap(p, xd, lists);
        if (std::abs(gap) < 1e-12) continue;
        int want = eval_sign(detail::family_poly(lists), xq);
        REQUIRE((gap > 0 ? 1 : -1) == want);
    }
}

TEST_CASE("condition gap survives huge exponents without NaN") {
    IndexLists lists({5, 6}, {1, 2}, 9);
    double gap = condition_gap(9, 0.9, lists);
    CHECK(std::isfinite(gap));
}

TEST_CASE("relatable compares normalized overlaps") {
    Eigen::VectorXd u(2), w(2);
    u << 1.0, 0.0;
    w << 0.0, 1.0;
    CHECK(relatable(u, u, w, w, 1e-12));
    CHECK_FALSE(relatable(u, w, u, u, 1e-6));
    CHECK_THROWS_AS(relatable(u, Eigen::VectorXd::Zero(2), u, w, 1e-6), std::invalid_argument);
    Eigen::VectorXd v3(3);
    v3 << 1.0, 0.0, 0.0;
    CHECK_THROWS_AS(relatable(u, v3, u, w, 1e-6), std::invalid_argument);
}

TEST_CASE("relatable holds between index pairs at a published root") {
    // At a root x of the 12|34 member, the normalized pairs
    // ([x^{p^k}, x^{p^l}], [x^{2p^k}, x^{2p^l}]) for {k,l} = {3,4} and {1,2}
    // have equal overlap; that equality is what the root encodes.
    double x = 0.824127;
    int p = 2;
    auto vec = [&](int c, int a, int b) {
        Eigen::VectorXd v(2);
        v << std::pow(x, c * std::pow(double(p), a)), std::pow(x, c * std::pow(double(p), b));
        return v;
    };
    CHECK(relatable(vec(1, 3, 4), vec(2, 3, 4), vec(1, 1, 2), vec(2, 1, 2), 1e-4));
    CHECK_FALSE(relatable(vec(1, 3, 4), vec(2, 3, 4), vec(1, 1, 2), vec(2, 1, 2), 1e-12));
}
