// Canonical form of orthonormal product bases of C^2 (x) C^n: a family of
// blocks {a_k (x) A_k, a_k-perp (x) A_k'} where each block's two B-side
// families span the same n_k-dimensional subspace and the subspaces sum
// directly to C^n. Generator, validator, and decomposer; the decomposer
// treats any violation of that structure as an error in its input rather
// than something to repair.
#pragma once

#include "aeset/entanglement.hpp"
#include "aeset/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace aeset {

// Two C^2 factors share a direction above this overlap, and are antipodal
// below its complement; the window between is a structural violation.
inline constexpr double kFengSameDirection = 1.0 - 1e-8;
inline constexpr double kFengAntipodal = 1e-8;

struct FengBlock {
    Vec a;                    // unit vector in C^2
    std::vector<Vec> A;       // n_k orthonormal vectors in C^n
    std::vector<Vec> Aprime;  // n_k orthonormal vectors spanning the same subspace
};

struct FengBasis {
    std::vector<FengBlock> blocks;

    int n() const {
        int total = 0;
        for (const FengBlock& b : blocks) total += static_cast<int>(b.A.size());
        return total;
    }
    std::vector<int> partition() const {
        std::vector<int> out;
        for (const FengBlock& b : blocks) out.push_back(static_cast<int>(b.A.size()));
        return out;
    }
};

// The orthogonal companion (-conj(a1), conj(a0)) of a unit vector in C^2.
inline Vec qubit_perp(const Vec& a) {
    if (a.size() != 2) throw std::invalid_argument("qubit_perp: need a C^2 vector");
    Vec p(2);
    p(0) = -std::conj(a(1));
    p(1) = std::conj(a(0));
    return p;
}

// The 2n product states a_k (x) u_i, a_k-perp (x) v_i, block by block.
inline StateSet feng_flatten(const FengBasis& fb) {
    if (fb.blocks.empty()) throw std::invalid_argument("feng_flatten: empty basis");
    const int n = fb.n();
    std::vector<Vec> states;
    std::vector<std::string> labels;
    for (std::size_t k = 0; k < fb.blocks.size(); ++k) {
        const FengBlock& blk = fb.blocks[k];
        Vec perp = qubit_perp(blk.a);
        auto emit = [&](const Vec& aside, const Vec& bside, const char* tag, std::size_t i) {
            if (bside.size() != n) throw std::invalid_argument("feng_flatten: ragged B side");
            Vec s(2 * n);
            for (int t = 0; t < n; ++t) {
                s(t) = aside(0) * bside(t);
                s(n + t) = aside(1) * bside(t);
            }
            states.push_back(std::move(s));
            labels.push_back("b" + std::to_string(k + 1) + tag + std::to_string(i + 1));
        };
        for (std::size_t i = 0; i < blk.A.size(); ++i) emit(blk.a, blk.A[i], "u", i);
        for (std::size_t i = 0; i < blk.Aprime.size(); ++i) emit(perp, blk.Aprime[i], "v", i);
    }
    return StateSet(std::move(states), std::move(labels));
}

struct FengReport {
    bool condition1 = true;  // each A_k orthonormal
    bool condition2 = true;  // each A_k' orthonormal
    bool condition3 = true;  // equal sizes and equal spans within a block
    bool condition4 = true;  // block subspaces mutually orthogonal and complete
    bool pairs_distinct = true;
    bool flattened_orthonormal = true;
    std::string detail;  // first failure, empty when pass

    bool pass() const {
        return condition1 && condition2 && condition3 && condition4 && pairs_distinct &&
               flattened_orthonormal;
    }
};

inline FengReport feng_validate(const FengBasis& fb, double tol = 1e-10) {
    if (fb.blocks.empty()) throw std::invalid_argument("feng_validate: empty basis");
    const int n = fb.n();
    FengReport rep;
    auto fail = [&](bool& flag, const std::string& why) {
        flag = false;
        if (rep.detail.empty()) rep.detail = why;
    };

    for (std::size_t k = 0; k < fb.blocks.size(); ++k) {
        const FengBlock& blk = fb.blocks[k];
        if (blk.a.size() != 2 || std::abs(blk.a.norm() - 1.0) > tol)
            throw std::invalid_argument("feng_validate: block a-vector is not a unit C^2 vector");
        for (const Vec& v : blk.A)
            if (v.size() != n) throw std::invalid_argument("feng_validate: ragged A family");
        for (const Vec& v : blk.Aprime)
            if (v.size() != n) throw std::invalid_argument("feng_validate: ragged Aprime family");

        std::string where = "block " + std::to_string(k + 1);
        if (blk.A.empty()) fail(rep.condition3, where + ": empty A family");
        auto orthonormal = [&](const std::vector<Vec>& fam) {
            Mat g = detail::columns(fam).adjoint() * detail::columns(fam);
            g -= Mat::Identity(g.rows(), g.cols());
            return max_abs(g) <= tol;
        };
        if (!blk.A.empty() && !orthonormal(blk.A))
            fail(rep.condition1, where + ": A is not orthonormal");
        if (!blk.Aprime.empty() && !orthonormal(blk.Aprime))
            fail(rep.condition2, where + ": Aprime is not orthonormal");

        if (blk.A.size() != blk.Aprime.size()) {
            fail(rep.condition3, where + ": A and Aprime sizes differ");
        } else if (!blk.A.empty()) {
            // Equal orthonormal counts: spans agree iff each v projects fully.
            for (const Vec& v : blk.Aprime) {
                Vec res = v;
                for (const Vec& u : blk.A) res -= u * u.dot(v);
                if (res.norm() > tol * 10 * (1 + std::sqrt(double(n))))
                    fail(rep.condition3, where + ": span(A) != span(Aprime)");
            }
        }
    }

    int total = 0;
    for (const FengBlock& blk : fb.blocks) total += static_cast<int>(blk.A.size());
    if (total != n) fail(rep.condition4, "block dimensions do not sum to n");
    for (std::size_t j = 0; j < fb.blocks.size(); ++j)
        for (std::size_t k = j + 1; k < fb.blocks.size(); ++k) {
            for (const Vec& u : fb.blocks[j].A)
                for (const Vec& w : fb.blocks[k].A)
                    if (std::abs(u.dot(w)) > tol)
                        fail(rep.condition4, "block subspaces overlap");
            double o = std::abs(fb.blocks[j].a.dot(fb.blocks[k].a));
            if (o > kFengSameDirection || o < kFengAntipodal)
                fail(rep.pairs_distinct, "blocks share an a-direction pair");
        }

    if (rep.condition1 && rep.condition2 && rep.condition3 && rep.condition4) {
        StateSet flat = feng_flatten(fb);
        Mat g = detail::columns(flat.states()).adjoint() * detail::columns(flat.states());
        g -= Mat::Identity(g.rows(), g.cols());
        if (max_abs(g) > tol) fail(rep.flattened_orthonormal, "flattened Gram is not identity");
    }
    return rep;
}

// Random instance with the requested block dimensions: a Haar-random
// orthogonal decomposition of C^n, two independent rotations of each block
// basis, and per-block a-directions resampled until all pairs are distinct.
inline FengBasis feng_generate(int n, const std::vector<int>& partition, std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("feng_generate: need n >= 1");
    int sum = 0;
    for (int p : partition) {
        if (p < 1) throw std::invalid_argument("feng_generate: parts must be positive");
        sum += p;
    }
    if (sum != n || partition.empty())
        throw std::invalid_argument("feng_generate: partition must sum to n");

    Mat split = haar_unitary(n, mix_seed(seed, 0)).matrix();
    std::mt19937_64 rng(mix_seed(seed, 1));
    std::normal_distribution<double> g(0.0, 1.0);

    FengBasis fb;
    int offset = 0;
    for (std::size_t k = 0; k < partition.size(); ++k) {
        const int nk = partition[k];
        Mat block = split.middleCols(offset, nk);
        offset += nk;
        Mat ua = block * haar_unitary(nk, mix_seed(seed, 2 + 2 * k)).matrix();
        Mat ub = block * haar_unitary(nk, mix_seed(seed, 3 + 2 * k)).matrix();

        FengBlock blk;
        while (true) {
            Vec a(2);
            a(0) = Complex(g(rng), g(rng));
            a(1) = Complex(g(rng), g(rng));
            if (a.norm() < 1e-3) continue;
            a /= a.norm();
            bool clashes = false;
            for (const FengBlock& prev : fb.blocks) {
                double o = std::abs(prev.a.dot(a));
                if (o > 1.0 - 1e-6 || o < 1e-6) clashes = true;
            }
            if (!clashes) {
                blk.a = std::move(a);
                break;
            }
        }
        for (int i = 0; i < nk; ++i) blk.A.push_back(ua.col(i));
        for (int i = 0; i < nk; ++i) blk.Aprime.push_back(ub.col(i));
        fb.blocks.push_back(std::move(blk));
    }

    if (!feng_validate(fb, 1e-10).pass())
        throw std::runtime_error("feng_generate: generated instance fails validation");
    return fb;
}

// Reads the block structure back off a list of 2n orthonormal product
// states. Grouping is by the C^2 factor: same direction joins a block's A
// side, the antipodal direction its Aprime side, anything in between is a
// structural violation of the canonical form.
inline FengBasis feng_decompose(const std::vector<Vec>& states, double tol = 1e-10) {
    if (states.empty()) throw std::invalid_argument("feng_decompose: empty input");
    const int d = static_cast<int>(states.front().size());
    if (d % 2 != 0 || d < 4)
        throw std::invalid_argument("feng_decompose: dimension must be even and >= 4");
    const int n = d / 2;
    if (static_cast<int>(states.size()) != d)
        throw std::invalid_argument("feng_decompose: need exactly 2n states");
    for (const Vec& s : states)
        if (s.size() != d) throw std::invalid_argument("feng_decompose: mixed dimensions");

    Mat gram = detail::columns(states).adjoint() * detail::columns(states);
    gram -= Mat::Identity(d, d);
    if (max_abs(gram) > tol)
        throw std::invalid_argument("feng_decompose: input is not orthonormal");

    Bipartition bip(2, n);
    struct Group {
        Vec a;  // canonical direction, largest-modulus entry real positive
        std::vector<Vec> side_a, side_perp;
    };
    std::vector<Group> groups;

    for (const Vec& s : states) {
        if (product_defect(s, bip) >= tol)
            throw std::invalid_argument("feng_decompose: input state is not product");
        SchmidtDecomposition dec = schmidt(s, bip);
        const Vec& dir = dec.left[0];

        int hit = -1;
        bool antipodal = false;
        for (std::size_t gi = 0; gi < groups.size(); ++gi) {
            double o = std::abs(groups[gi].a.dot(dir));
            if (o > kFengSameDirection) {
                hit = static_cast<int>(gi);
                antipodal = false;
                break;
            }
            if (o < kFengAntipodal) {
                hit = static_cast<int>(gi);
                antipodal = true;
                break;
            }
        }
        if (hit < 0) {
            Group gnew;
            int top = std::abs(dir(0)) >= std::abs(dir(1)) ? 0 : 1;
            Complex phase = dir(top) / std::abs(dir(top));
            gnew.a = dir / phase;
            groups.push_back(std::move(gnew));
            hit = static_cast<int>(groups.size()) - 1;
            antipodal = false;
        }

        // B-side factor relative to the canonical direction: contract the
        // A side away; for a product state the result has unit norm.
        Group& grp = groups[static_cast<std::size_t>(hit)];
        Vec axis = antipodal ? qubit_perp(grp.a) : grp.a;
        Vec bside(n);
        for (int t = 0; t < n; ++t)
            bside(t) = std::conj(axis(0)) * s(t) + std::conj(axis(1)) * s(n + t);
        double nb = bside.norm();
        if (std::abs(nb - 1.0) > 1e-6)
            throw std::runtime_error("feng_decompose: direction grouping is inconsistent");
        bside /= nb;
        (antipodal ? grp.side_perp : grp.side_a).push_back(std::move(bside));
    }

    FengBasis fb;
    for (Group& grp : groups) {
        if (grp.side_a.size() != grp.side_perp.size())
            throw std::runtime_error(
                "feng_decompose: unbalanced block (A and Aprime sizes differ)");
        FengBlock blk;
        blk.a = std::move(grp.a);
        blk.A = std::move(grp.side_a);
        blk.Aprime = std::move(grp.side_perp);
        fb.blocks.push_back(std::move(blk));
    }
    std::stable_sort(fb.blocks.begin(), fb.blocks.end(),
                     [](const FengBlock& x, const FengBlock& y) { return x.A.size() > y.A.size(); });

    FengReport rep = feng_validate(fb, std::max(tol, 1e-10));
    if (!rep.pass())
        throw std::runtime_error("feng_decompose: reconstructed basis fails validation: " +
                                 rep.detail);
    return fb;
}

}  // namespace aeset
