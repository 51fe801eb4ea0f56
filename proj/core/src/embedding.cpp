#include "normlab/embedding.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <limits>
#include <random>
#include <span>
#include <thread>

#include "normlab/errors.hpp"
#include "normlab/nelder_mead.hpp"
#include "normlab/rng.hpp"

namespace normlab {

// ---------------------------------------------------------------------------
// DistanceMatrix

DistanceMatrix DistanceMatrix::from_rows(const std::vector<std::vector<double>>& rows) {
    const std::size_t n = rows.size();
    DistanceMatrix D(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (rows[i].size() != n) throw input_error("distance matrix rows must be square");
        for (std::size_t j = 0; j < n; ++j) D.d_[i * n + j] = rows[i][j];
    }
    D.validate();
    return D;
}

void DistanceMatrix::set(std::size_t i, std::size_t j, double value) {
    d_[i * n_ + j] = value;
    d_[j * n_ + i] = value;
}

void DistanceMatrix::validate(double tol) const {
    for (std::size_t i = 0; i < n_; ++i) {
        if ((*this)(i, i) != 0.0) throw input_error("distance matrix diagonal must be zero");
        for (std::size_t j = 0; j < n_; ++j) {
            const double dij = (*this)(i, j);
            if (!(dij >= 0.0) || !std::isfinite(dij))
                throw input_error("distances must be finite and nonnegative");
            if (dij != (*this)(j, i)) throw input_error("distance matrix must be symmetric");
        }
    }
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = 0; j < n_; ++j)
            for (std::size_t k = 0; k < n_; ++k)
                if ((*this)(i, j) > (*this)(i, k) + (*this)(k, j) + tol)
                    throw input_error("triangle inequality violated");
}

// ---------------------------------------------------------------------------
// Built-in point sets

std::pair<PointConfig, DistanceMatrix> config_U(double p) {
    if (!std::isfinite(p) || !(1.0 < p && p < 2.0)) throw input_error("config_U requires 1 < p < 2");
    const FiniteVector e1 = FiniteVector::unit(1);
    const FiniteVector e2 = FiniteVector::unit(2);
    PointConfig config{{e1, e2, -e1, -e2, FiniteVector{}}, SpaceSpec::lp(p), 4};
    DistanceMatrix D(5);
    for (std::size_t i = 0; i < 5; ++i)
        for (std::size_t j = i + 1; j < 5; ++j)
            D.set(i, j, lp_norm(p, config.points[i] - config.points[j]));
    return {std::move(config), std::move(D)};
}

std::pair<PointConfig, DistanceMatrix> config_V(double p) {
    if (!std::isfinite(p) || !(p > 2.0)) throw input_error("config_V requires 2 < p < inf");
    const double s = std::pow(2.0, -1.0 / p);
    const FiniteVector plus = s * (FiniteVector::unit(1) + FiniteVector::unit(2));
    const FiniteVector minus = s * (FiniteVector::unit(1) - FiniteVector::unit(2));
    PointConfig config{{plus, minus, -plus, -minus, FiniteVector{}}, SpaceSpec::lp(p), 4};
    DistanceMatrix D(5);
    for (std::size_t i = 0; i < 5; ++i)
        for (std::size_t j = i + 1; j < 5; ++j)
            D.set(i, j, lp_norm(p, config.points[i] - config.points[j]));
    return {std::move(config), std::move(D)};
}

PointConfig frechet_embed(const DistanceMatrix& D) {
    D.validate();
    const std::size_t n = D.size();
    PointConfig config{{}, SpaceSpec::lp(std::numeric_limits<double>::infinity()), 0};
    config.points.reserve(n);
    std::vector<double> row(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < n; ++k) row[k] = D(i, k) - D(0, k);
        config.points.push_back(FiniteVector::from_dense(row));
    }
    return config;
}

// ---------------------------------------------------------------------------
// Distortion

namespace {

void check_compatible(const PointConfig& config, const DistanceMatrix& D) {
    if (config.points.size() != D.size())
        throw input_error("point count does not match distance matrix size");
    for (std::size_t i = 0; i < D.size(); ++i)
        for (std::size_t j = i + 1; j < D.size(); ++j)
            if (!(D(i, j) > 0.0))
                throw input_error("distortion requires positive off-diagonal targets");
}

}  // namespace

double distortion(const PointConfig& config, const DistanceMatrix& D) {
    check_compatible(config, D);
    const std::size_t n = D.size();
    double expansion = 0.0, contraction = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double image = luxemburg_norm(config.space, config.points[i] - config.points[j]);
            if (image == 0.0) return std::numeric_limits<double>::infinity();
            expansion = std::max(expansion, image / D(i, j));
            contraction = std::max(contraction, D(i, j) / image);
        }
    }
    return expansion * contraction;
}

std::vector<double> per_pair_ratios(const PointConfig& config, const DistanceMatrix& D) {
    check_compatible(config, D);
    const std::size_t n = D.size();
    std::vector<double> ratios(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double image = luxemburg_norm(config.space, config.points[i] - config.points[j]);
            ratios[i * n + j] = ratios[j * n + i] = image / D(i, j);
        }
    }
    return ratios;
}

// ---------------------------------------------------------------------------
// Multi-start search machinery

namespace {

constexpr double kCollapseBarrier = 1e-150;  // large finite penalty, never infinity

int resolve_threads(int requested, int starts) {
    int threads = requested;
    if (threads <= 0) {
        if (const char* env = std::getenv("NORMLAB_THREADS")) {
            char* end = nullptr;
            const long v = std::strtol(env, &end, 10);
            if (end != env && v > 0) threads = static_cast<int>(v);
        }
    }
    if (threads <= 0) threads = static_cast<int>(std::thread::hardware_concurrency());
    if (threads <= 0) threads = 1;
    return std::min(threads, std::max(starts, 1));
}

double smooth_max(std::span<const double> values, double tau) {
    double m = -std::numeric_limits<double>::infinity();
    for (double v : values) m = std::max(m, v);
    if (tau <= 0.0) return m;
    double s = 0.0;
    for (double v : values) s += std::exp((v - m) / tau);
    return m + tau * std::log(s);
}

struct StartOutcome {
    double value = std::numeric_limits<double>::infinity();
    std::vector<double> z;
    bool converged = false;
};

// One start: anneal the smoothing temperature on a fixed schedule, then
// polish against the exact objective with fresh, shrinking simplices.
template <typename Objective>
StartOutcome run_schedule(const Objective& objective, std::vector<double> z, int max_iters,
                          double tol) {
    static constexpr double kTaus[] = {0.1, 0.02, 0.004, 0.0, 0.0, 0.0};
    static constexpr double kSteps[] = {0.5, 0.15, 0.05, 0.02, 8e-3, 2e-3};
    constexpr int kPhases = 6;
    const int phase_iters = std::max(max_iters / kPhases, 50);

    StartOutcome out;
    out.z = std::move(z);
    for (int phase = 0; phase < kPhases; ++phase) {
        const double tau = kTaus[phase];
        SimplexOptions nm;
        nm.max_iters = phase_iters;
        nm.ftol = tol * 1e-2;
        nm.xtol = tol;
        nm.init_step = kSteps[phase];
        SimplexResult res = nelder_mead(
            [&](std::span<const double> v) { return objective(v, tau); }, out.z, nm);
        // keep the exact-objective best, never a smoothed value
        const double exact = objective(res.x, 0.0);
        if (phase == 0 || exact <= out.value) {
            out.value = exact;
            out.z = std::move(res.x);
        }
        out.converged = res.converged;
    }
    return out;
}

template <typename Objective>
std::vector<StartOutcome> run_starts(const Objective& objective, int dims, int starts,
                                     std::uint64_t seed, int max_iters, double tol, int threads) {
    std::vector<StartOutcome> outcomes(starts);
    std::atomic<int> next{0};
    std::vector<std::exception_ptr> errors(starts);

    auto worker = [&] {
        for (;;) {
            const int k = next.fetch_add(1);
            if (k >= starts) return;
            try {
                auto engine = make_engine(seed, static_cast<std::uint64_t>(k));
                std::uniform_real_distribution<double> coord(-1.0, 1.0);
                std::vector<double> z(dims);
                for (double& v : z) v = coord(engine);
                outcomes[k] = run_schedule(objective, std::move(z), max_iters, tol);
            } catch (...) {
                errors[k] = std::current_exception();
            }
        }
    };

    const int nthreads = resolve_threads(threads, starts);
    if (nthreads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(nthreads);
        for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    for (const auto& err : errors)
        if (err) std::rethrow_exception(err);
    return outcomes;
}

// best outcome in start-index order, so scheduling cannot change the result
const StartOutcome& reduce_best(const std::vector<StartOutcome>& outcomes) {
    const StartOutcome* best = &outcomes.front();
    for (const auto& o : outcomes)
        if (o.value < best->value) best = &o;
    return *best;
}

}  // namespace

EmbedResult optimize_embedding(const DistanceMatrix& D, const SpaceSpec& space, int ambient_dim,
                               const OptimizeOptions& opts) {
    if (ambient_dim < 1) throw input_error("ambient dimension must be >= 1");
    if (opts.starts < 1) throw input_error("starts must be >= 1");
    const std::size_t n = D.size();
    if (n < 2) throw input_error("need at least two points to embed");
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (!(D(i, j) > 0.0)) throw input_error("embedding targets must be positive");

    const auto t0 = std::chrono::steady_clock::now();
    const std::size_t dim = static_cast<std::size_t>(ambient_dim);
    const std::size_t pairs = n * (n - 1) / 2;
    const int dims = static_cast<int>((n - 1) * dim);

    // log-distortion of the configuration encoded by z (point 0 pinned at 0),
    // softmax-smoothed at temperature tau
    auto objective = [&](std::span<const double> z, double tau) {
        thread_local std::vector<double> diff, logs;
        diff.assign(dim, 0.0);
        logs.assign(2 * pairs, 0.0);
        std::size_t slot = 0;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                const double* pi = i == 0 ? nullptr : z.data() + (i - 1) * dim;
                const double* pj = z.data() + (j - 1) * dim;  // j >= 1 always
                for (std::size_t k = 0; k < dim; ++k)
                    diff[k] = (pi ? pi[k] : 0.0) - pj[k];
                const double image =
                    std::max(luxemburg_norm(space, std::span<const double>(diff)), kCollapseBarrier);
                const double lr = std::log(image / D(i, j));
                logs[slot] = lr;
                logs[pairs + slot] = -lr;
                ++slot;
            }
        }
        return smooth_max(std::span<const double>(logs.data(), pairs), tau) +
               smooth_max(std::span<const double>(logs.data() + pairs, pairs), tau);
    };

    const auto outcomes =
        run_starts(objective, dims, opts.starts, opts.seed, opts.max_iters, opts.tol, opts.threads);
    const StartOutcome& best = reduce_best(outcomes);

    PointConfig config{{}, space, 0};
    config.points.reserve(n);
    config.points.push_back(FiniteVector{});
    for (std::size_t i = 1; i < n; ++i)
        config.points.push_back(FiniteVector::from_dense(
            std::span<const double>(best.z.data() + (i - 1) * dim, dim)));

    EmbedResult result{std::move(config), 0.0, {}, opts.starts, opts.seed, best.converged, 0.0};
    result.distortion = distortion(result.config, D);
    result.per_pair_ratios = per_pair_ratios(result.config, D);
    result.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return result;
}

ResidualResult minimize_isometry_residual(Branch branch, const SpaceSpec& space, int ambient_dim,
                                          const OptimizeOptions& opts) {
    if (ambient_dim < 1) throw input_error("ambient dimension must be >= 1");
    if (opts.starts < 1) throw input_error("starts must be >= 1");
    if (space.is_sup()) throw input_error("residual search requires a modular family");
    const FamilyKind kind = space.family().kind();
    if (branch == Branch::p_lt_2 && kind != FamilyKind::orlicz_pr)
        throw input_error("p_lt_2 branch requires an orlicz_pr space");
    if (branch == Branch::p_gt_2 && kind != FamilyKind::modular_ppi)
        throw input_error("p_gt_2 branch requires a modular_ppi space");

    const auto t0 = std::chrono::steady_clock::now();
    const double p = space.family().p();
    const double target =
        branch == Branch::p_lt_2 ? std::pow(2.0, 1.0 / p) : std::pow(2.0, 1.0 - 1.0 / p);
    const std::size_t dim = static_cast<std::size_t>(ambient_dim);

    auto objective = [&](std::span<const double> z, double tau) {
        thread_local std::vector<double> buf;
        buf.assign(dim, 0.0);
        std::array<double, 4> res{};
        res[0] = std::abs(luxemburg_norm(space, z.subspan(0, dim)) - 1.0);
        res[1] = std::abs(luxemburg_norm(space, z.subspan(dim, dim)) - 1.0);
        for (std::size_t k = 0; k < dim; ++k) buf[k] = z[k] + z[dim + k];
        res[2] = std::abs(luxemburg_norm(space, std::span<const double>(buf)) - target);
        for (std::size_t k = 0; k < dim; ++k) buf[k] = z[k] - z[dim + k];
        res[3] = std::abs(luxemburg_norm(space, std::span<const double>(buf)) - target);
        return smooth_max(res, tau);
    };

    const auto outcomes = run_starts(objective, static_cast<int>(2 * dim), opts.starts, opts.seed,
                                     opts.max_iters, opts.tol, opts.threads);
    const StartOutcome& best = reduce_best(outcomes);

    ResidualResult result;
    result.x = FiniteVector::from_dense(std::span<const double>(best.z.data(), dim));
    result.y = FiniteVector::from_dense(std::span<const double>(best.z.data() + dim, dim));
    result.residuals[0] = luxemburg_norm(space, result.x) - 1.0;
    result.residuals[1] = luxemburg_norm(space, result.y) - 1.0;
    result.residuals[2] = luxemburg_norm(space, result.x + result.y) - target;
    result.residuals[3] = luxemburg_norm(space, result.x - result.y) - target;
    result.max_residual = 0.0;
    for (double r : result.residuals) result.max_residual = std::max(result.max_residual, std::abs(r));
    result.starts_used = opts.starts;
    result.seed = opts.seed;
    result.converged = best.converged;
    result.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return result;
}

}  // namespace normlab
