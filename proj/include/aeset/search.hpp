// Empirical falsifier for absolute entanglement: minimize the summed
// product defect of a state family over U(d) by multi-start descent. A
// near-zero minimum comes with a replayable witness unitary; a nonzero
// floor is evidence only, never proof.
#pragma once

#include "aeset/entanglement.hpp"
#include "aeset/linalg.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <stdexcept>
#include <utility>
#include <vector>

namespace aeset {

struct SearchConfig {
    int restarts = 50;
    int max_iters = 200;
    double step_tol = 1e-12;       // stop a restart when steps get this small
    double objective_tol = 1e-6;   // verdict threshold
    std::uint64_t seed = 0;
    bool stop_on_success = true;   // skip remaining restarts once one passes
};

struct RestartTrace {
    std::uint64_t seed;
    double objective;  // best value reached within the restart
    int iters;
};

enum class Verdict { ProductMappingFound, NoMappingFound };

inline const char* verdict_name(Verdict v) {
    return v == Verdict::ProductMappingFound ? "ProductMappingFound" : "NoMappingFound";
}

struct SearchReport {
    double best_objective = 0.0;
    Mat best_unitary;
    std::vector<RestartTrace> per_restart;
    Verdict verdict = Verdict::NoMappingFound;
};

namespace detail {

inline double defect_of_image(const Vec& y, Bipartition bip) {
    Mat m(bip.d1, bip.d2);
    for (int s = 0; s < bip.d1; ++s)
        for (int t = 0; t < bip.d2; ++t) m(s, t) = y(s * bip.d2 + t);
    return defect_of_matrix(m);
}

}  // namespace detail

// Sum of product defects of the transformed states; zero exactly when the
// unitary sends every state to product form.
inline double objective(const Mat& u, const StateSet& set, Bipartition bip) {
    if (u.rows() != set.dim() || u.cols() != set.dim() || set.dim() != bip.dim())
        throw std::invalid_argument("objective: dimension mismatch");
    double total = 0.0;
    for (const Vec& s : set.states()) total += detail::defect_of_image(u * s, bip);
    return total;
}

inline double objective(const Unitary& u, const StateSet& set, Bipartition bip) {
    return objective(u.matrix(), set, bip);
}

inline Verdict verdict_of(double best_objective, double tol) {
    return best_objective < tol ? Verdict::ProductMappingFound : Verdict::NoMappingFound;
}

namespace detail {

// One skew-Hermitian coordinate direction: a phase on column j (k < 0), or
// a real/imaginary rotation mixing columns j and k.
struct TangentDir {
    int j;
    int k;  // -1 for the diagonal phase direction
    bool imag;
};

inline std::vector<TangentDir> tangent_basis(int d) {
    std::vector<TangentDir> dirs;
    for (int j = 0; j < d; ++j) dirs.push_back({j, -1, false});
    for (int j = 0; j < d; ++j)
        for (int k = j + 1; k < d; ++k) {
            dirs.push_back({j, k, false});
            dirs.push_back({j, k, true});
        }
    return dirs;
}

// Objective after moving along one basis direction by angle h, using the
// cached images y_i = U psi_i; only columns j and k of U enter the update.
inline double perturbed_objective(const TangentDir& dir, double h, const Mat& u,
                                  const StateSet& set, const std::vector<Vec>& images,
                                  Bipartition bip) {
    const double c = std::cos(h), s = std::sin(h);
    double total = 0.0;
    for (int i = 0; i < set.size(); ++i) {
        const Vec& psi = set.state(i);
        Vec y = images[static_cast<std::size_t>(i)];
        if (dir.k < 0) {
            Complex factor = Complex(c - 1.0, s) * psi(dir.j);
            y += factor * u.col(dir.j);
        } else {
            Complex pj = psi(dir.j), pk = psi(dir.k);
            Complex dj, dk;
            if (!dir.imag) {
                dj = (c - 1.0) * pj + s * pk;
                dk = -s * pj + (c - 1.0) * pk;
            } else {
                dj = (c - 1.0) * pj + Complex(0, s) * pk;
                dk = Complex(0, s) * pj + (c - 1.0) * pk;
            }
            y += dj * u.col(dir.j) + dk * u.col(dir.k);
        }
        total += defect_of_image(y, bip);
    }
    return total;
}

inline Mat assemble_tangent(const std::vector<TangentDir>& dirs, const std::vector<double>& coeff,
                            int d) {
    Mat a = Mat::Zero(d, d);
    for (std::size_t t = 0; t < dirs.size(); ++t) {
        double v = coeff[t];
        if (v == 0.0) continue;
        const TangentDir& dir = dirs[t];
        if (dir.k < 0) {
            a(dir.j, dir.j) += Complex(0, v);
        } else if (!dir.imag) {
            a(dir.j, dir.k) += v;
            a(dir.k, dir.j) -= v;
        } else {
            a(dir.j, dir.k) += Complex(0, v);
            a(dir.k, dir.j) += Complex(0, v);
        }
    }
    return a;
}

// exp(t * A) for skew-Hermitian A, reusing the Hermitian eigensystem of
// -iA across different step lengths.
struct SkewExponential {
    Eigen::SelfAdjointEigenSolver<Mat> es;

    explicit SkewExponential(const Mat& skew) : es(Mat(Complex(0, -1) * skew)) {
        if (es.info() != Eigen::Success)
            throw std::runtime_error("search: tangent eigendecomposition failed");
    }
    Mat at(double t) const {
        const auto& lam = es.eigenvalues();
        Vec phases(lam.size());
        for (int i = 0; i < lam.size(); ++i) phases(i) = std::exp(Complex(0, t * lam(i)));
        return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
    }
};

// Nearest unitary (polar factor); counters drift from accumulated products.
inline Mat reunitarize(const Mat& u) {
    Svd svd = svd_small(u);
    return svd.left * svd.right.adjoint();
}

struct RestartResult {
    double best_objective;
    Mat best_unitary;
    int iters;
};

inline RestartResult run_restart(const StateSet& set, Bipartition bip, std::uint64_t seed,
                                 const SearchConfig& cfg) {
    const int d = set.dim();
    const double fd_h = 1e-5;
    const std::vector<TangentDir> dirs = tangent_basis(d);

    Mat u = haar_unitary(d, seed).matrix();
    std::mt19937_64 rng(mix_seed(seed, 0x9e3779b9));
    std::normal_distribution<double> gauss(0.0, 1.0);

    auto images_of = [&](const Mat& m) {
        std::vector<Vec> imgs;
        imgs.reserve(static_cast<std::size_t>(set.size()));
        for (const Vec& s : set.states()) imgs.push_back(m * s);
        return imgs;
    };
    auto sum_defects = [&](const std::vector<Vec>& imgs) {
        double total = 0.0;
        for (const Vec& y : imgs) total += defect_of_image(y, bip);
        return total;
    };

    std::vector<Vec> images = images_of(u);
    double f = sum_defects(images);

    double best_f = f;
    Mat best_u = u;
    double step = 0.25;
    int stalls = 0;
    int iter = 0;

    // Conjugate-gradient memory (Polak-Ribiere with reset); treating the
    // body-frame tangent coordinates as a fixed chart is approximate but
    // sound, since a fresh line search guards every move.
    std::vector<double> prev_grad, prev_dir;
    bool have_prev = false;

    for (; iter < cfg.max_iters; ++iter) {
        if (best_f < cfg.objective_tol) break;

        std::vector<double> grad(dirs.size());
        double gnorm2 = 0.0;
        for (std::size_t t = 0; t < dirs.size(); ++t) {
            double fp = perturbed_objective(dirs[t], fd_h, u, set, images, bip);
            grad[t] = (fp - f) / fd_h;
            gnorm2 += grad[t] * grad[t];
        }

        bool moved = false;
        if (gnorm2 > 1e-24) {
            double beta = 0.0;
            if (have_prev) {
                double num = 0.0, den = 0.0;
                for (std::size_t t = 0; t < dirs.size(); ++t) {
                    num += grad[t] * (grad[t] - prev_grad[t]);
                    den += prev_grad[t] * prev_grad[t];
                }
                if (den > 0.0) beta = std::max(0.0, num / den);
            }
            std::vector<double> dir(dirs.size());
            double slope = 0.0, dnorm2 = 0.0;
            for (std::size_t t = 0; t < dirs.size(); ++t) {
                dir[t] = -grad[t] + (have_prev ? beta * prev_dir[t] : 0.0);
                slope += dir[t] * grad[t];
                dnorm2 += dir[t] * dir[t];
            }
            if (slope > -1e-10 * std::sqrt(gnorm2 * dnorm2)) {
                for (std::size_t t = 0; t < dirs.size(); ++t) dir[t] = -grad[t];
                slope = -gnorm2;
                dnorm2 = gnorm2;
            }

            Mat a = assemble_tangent(dirs, dir, d);
            SkewExponential expo(a);
            double eps = step;
            for (int bt = 0; bt < 40 && eps * std::sqrt(dnorm2) > cfg.step_tol; ++bt) {
                Mat cand = u * expo.at(eps);
                double fc = objective(cand, set, bip);
                if (fc < f + 1e-4 * eps * slope) {
                    u = std::move(cand);
                    f = fc;
                    step = (bt == 0) ? std::min(step * 2.0, 1.0) : eps;
                    moved = true;
                    prev_grad = std::move(grad);
                    prev_dir = std::move(dir);
                    have_prev = true;
                    break;
                }
                eps *= 0.5;
            }
        }

        if (moved) {
            stalls = 0;
            if (iter % 32 == 31) {
                u = reunitarize(u);
                images = images_of(u);
                f = sum_defects(images);
            } else {
                images = images_of(u);
            }
            if (f < best_f) {
                best_f = f;
                best_u = u;
            }
            continue;
        }

        // Backtracking found no decrease (non-smooth point or flat region):
        // jostle the iterate and keep the best seen so far.
        have_prev = false;
        if (++stalls > 6) break;
        std::vector<double> kick(dirs.size());
        for (double& v : kick) v = 0.05 * gauss(rng);
        Mat a = assemble_tangent(dirs, kick, d);
        u = reunitarize(u * SkewExponential(a).at(1.0));
        images = images_of(u);
        f = sum_defects(images);
        if (f < best_f) {
            best_f = f;
            best_u = u;
        }
    }

    return {best_f, reunitarize(best_u), iter};
}

}  // namespace detail

// Multi-start minimization; deterministic in cfg.seed. With stop_on_success
// the restart loop ends at the first success index, so the trace is the
// prefix 0..r* regardless of how restarts would have been scheduled.
inline SearchReport minimize_over_unitaries(const StateSet& set, Bipartition bip,
                                            const SearchConfig& cfg = {}) {
    if (cfg.restarts < 1 || cfg.max_iters < 1)
        throw std::invalid_argument("minimize_over_unitaries: need restarts, max_iters >= 1");
    if (cfg.step_tol <= 0 || cfg.objective_tol <= 0)
        throw std::invalid_argument("minimize_over_unitaries: tolerances must be positive");
    if (set.dim() != bip.dim())
        throw std::invalid_argument("minimize_over_unitaries: dimension mismatch");

    SearchReport report;
    report.best_objective = std::numeric_limits<double>::infinity();

    for (int r = 0; r < cfg.restarts; ++r) {
        std::uint64_t seed = mix_seed(cfg.seed, static_cast<std::uint64_t>(r));
        detail::RestartResult res = detail::run_restart(set, bip, seed, cfg);
        report.per_restart.push_back({seed, res.best_objective, res.iters});
        if (res.best_objective < report.best_objective) {
            report.best_objective = res.best_objective;
            report.best_unitary = res.best_unitary;
        }
        if (cfg.stop_on_success && report.best_objective < cfg.objective_tol) break;
    }
    report.verdict = verdict_of(report.best_objective, cfg.objective_tol);
    return report;
}

}  // namespace aeset
