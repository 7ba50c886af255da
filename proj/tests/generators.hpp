// Random instance generators shared by the unit suites and the acceptance
// runner. Deterministic in the seed.
#pragma once

#include "aeset/constructions.hpp"
#include "aeset/entanglement.hpp"
#include "aeset/linalg.hpp"

#include <algorithm>
#include <random>
#include <vector>

namespace gen {

inline aeset::Vec random_state(int d, std::mt19937_64& rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    aeset::Vec v(d);
    for (int i = 0; i < d; ++i) v(i) = aeset::Complex(g(rng), g(rng));
    return v / v.norm();
}

inline aeset::Vec kron(const aeset::Vec& a, const aeset::Vec& b) {
    aeset::Vec out(a.size() * b.size());
    for (int s = 0; s < a.size(); ++s)
        for (int t = 0; t < b.size(); ++t) out(s * b.size() + t) = a(s) * b(t);
    return out;
}

// A partitioned family hidden behind a global rotation: parts are built on
// disjoint computational blocks (so orthogonality and the dimension bounds
// hold exactly), then everything is conjugated by one Haar unitary.
inline aeset::PartitionedSet random_partitioned_set(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    int d1 = 2 + static_cast<int>(rng() % 2);
    int d2 = d1 + static_cast<int>(rng() % (5 - d1));
    aeset::Bipartition bip(d1, d2);
    const int d = bip.dim();

    int k = 1 + static_cast<int>(rng() % d1);
    std::vector<int> slots(d);
    for (int i = 0; i < d; ++i) slots[i] = i;
    std::shuffle(slots.begin(), slots.end(), rng);

    aeset::Mat rot = aeset::haar_unitary(d, rng()).matrix();
    std::normal_distribution<double> g(0.0, 1.0);

    std::vector<aeset::StateSet> parts;
    std::size_t next_slot = 0;
    for (int i = 0; i < k; ++i) {
        int ni = 1 + static_cast<int>(rng() % d2);
        std::vector<int> block(slots.begin() + next_slot, slots.begin() + next_slot + ni);
        next_slot += static_cast<std::size_t>(ni);
        int mi = ni + static_cast<int>(rng() % 3);
        std::vector<aeset::Vec> states;
        for (int m = 0; m < mi; ++m) {
            aeset::Vec v = aeset::Vec::Zero(d);
            for (int b : block) v(b) = aeset::Complex(g(rng), g(rng));
            if (v.norm() < 1e-8) v(block[0]) = 1.0;
            states.push_back(rot * v);
        }
        parts.emplace_back(std::move(states));
    }
    return aeset::PartitionedSet(std::move(parts), bip);
}

// A family that fails the removed-state dimension bound at index 0: all
// states share a span of dimension <= d2, rotated by a Haar unitary.
// with_complement adds a component outside the span to state 0 so both
// witness branches get exercised.
inline aeset::StateSet random_thin_set(std::uint64_t seed, aeset::Bipartition bip,
                                       bool with_complement) {
    std::mt19937_64 rng(seed);
    const int d = bip.dim();
    int r = 1 + static_cast<int>(rng() % bip.d2);
    int count = 1 + r + static_cast<int>(rng() % 2);

    aeset::Mat rot = aeset::haar_unitary(d, rng()).matrix();
    std::normal_distribution<double> g(0.0, 1.0);
    std::vector<aeset::Vec> states;
    for (int m = 0; m < count; ++m) {
        aeset::Vec v = aeset::Vec::Zero(d);
        for (int j = 0; j < r; ++j) v(j) = aeset::Complex(g(rng), g(rng));
        if (m == 0 && with_complement) {
            v(r) = aeset::Complex(g(rng), g(rng));
            if (std::abs(v(r)) < 1e-3) v(r) = 1.0;
            if (rng() % 2 == 0) v.head(r).setZero();  // no span component: case (i)
        }
        if (v.norm() < 1e-8) v(0) = 1.0;
        states.push_back(rot * v);
    }
    return aeset::StateSet(std::move(states));
}

}  // namespace gen
