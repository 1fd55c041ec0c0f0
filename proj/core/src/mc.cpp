#include "hwm/mc.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <thread>

namespace hwm {

// ---------------------------------------------------------------------------
// Philox4x32-10
// ---------------------------------------------------------------------------

namespace {

constexpr std::uint32_t kPhiloxM0 = 0xD2511F53u;
constexpr std::uint32_t kPhiloxM1 = 0xCD9E8D57u;
constexpr std::uint32_t kPhiloxW0 = 0x9E3779B9u;
constexpr std::uint32_t kPhiloxW1 = 0xBB67AE85u;

inline void philox_round(std::array<std::uint32_t, 4>& c, std::uint32_t k0,
                         std::uint32_t k1) {
    const std::uint64_t p0 = std::uint64_t{kPhiloxM0} * c[0];
    const std::uint64_t p1 = std::uint64_t{kPhiloxM1} * c[2];
    const auto hi0 = static_cast<std::uint32_t>(p0 >> 32);
    const auto lo0 = static_cast<std::uint32_t>(p0);
    const auto hi1 = static_cast<std::uint32_t>(p1 >> 32);
    const auto lo1 = static_cast<std::uint32_t>(p1);
    c = {hi1 ^ c[1] ^ k0, lo1, hi0 ^ c[3] ^ k1, lo0};
}

}  // namespace

std::array<std::uint32_t, 4> Philox4x32::block(std::uint64_t key,
                                               std::array<std::uint32_t, 4> counter) {
    auto k0 = static_cast<std::uint32_t>(key);
    auto k1 = static_cast<std::uint32_t>(key >> 32);
    for (int round = 0; round < 10; ++round) {
        philox_round(counter, k0, k1);
        k0 += kPhiloxW0;
        k1 += kPhiloxW1;
    }
    return counter;
}

void PathRng::refill() {
    buf_ = Philox4x32::block(seed_, {static_cast<std::uint32_t>(block_),
                                     static_cast<std::uint32_t>(block_ >> 32),
                                     static_cast<std::uint32_t>(path_),
                                     static_cast<std::uint32_t>(path_ >> 32)});
    ++block_;
    word_ = 0;
}

double PathRng::uniform() {
    if (word_ >= 4) refill();
    const std::uint64_t u64 =
        (std::uint64_t{buf_[word_]} << 32) | buf_[word_ + 1];
    word_ += 2;
    // 53-bit mantissa, strictly inside (0, 1) so log() is always finite.
    return (static_cast<double>(u64 >> 11) + 0.5) * 0x1.0p-53;
}

double PathRng::normal() {
    if (has_cached_) {
        has_cached_ = false;
        return cached_;
    }
    const double u1 = uniform();
    const double u2 = uniform();
    const double rad = std::sqrt(-2.0 * std::log(u1));
    const double ang = 2.0 * std::numbers::pi * u2;
    cached_ = rad * std::sin(ang);
    has_cached_ = true;
    return rad * std::cos(ang);
}

// ---------------------------------------------------------------------------
// Path simulation and payoff
// ---------------------------------------------------------------------------

std::vector<double> simulate_log_returns(std::size_t n_steps, double dt,
                                         const MarketParams& market, double gamma,
                                         bool gamma_shift, PathRng& rng) {
    if (!(dt > 0.0)) throw std::invalid_argument("simulate_log_returns: dt must be > 0");
    const double mu = market.r - market.y - (gamma_shift ? gamma : 0.0) -
                      0.5 * market.v * market.v;
    const double drift = mu * dt;
    const double diff = market.v * std::sqrt(dt);
    std::vector<double> x(n_steps);
    double acc = 0.0;
    for (std::size_t k = 0; k < n_steps; ++k) {
        acc += drift + diff * rng.normal();
        x[k] = acc;
    }
    return x;
}

namespace {

double accrual_factor(double gamma, double dt, Compounding compounding) {
    return compounding == Compounding::Continuous ? std::exp(gamma * dt)
                                                  : 1.0 + gamma * dt;
}

}  // namespace

double payoff_closed_form(std::span<const double> observed_ratios, double gamma,
                          double dt, Compounding compounding, double initial_hw,
                          double initial_v) {
    // Unrolled recursion: max(g^N V_0, max_n Hw(t_n) g^{N-n}). With
    // Hw(0) = V(0) this is the lock-in-and-accrue form max_n Hw(t_n) g^{N-n}.
    const double g = accrual_factor(gamma, dt, compounding);
    const std::size_t n = observed_ratios.size();
    std::vector<double> hw(n);
    double h = initial_hw;
    for (std::size_t k = 0; k < n; ++k) {
        h = std::max(h, observed_ratios[k]);
        hw[k] = h;
    }
    double best = std::pow(g, static_cast<double>(n)) * initial_v;
    double accrue = 1.0;  // g^{N-n}, built backwards
    for (std::size_t k = n; k-- > 0;) {
        best = std::max(best, hw[k] * accrue);
        accrue *= g;
    }
    return best;
}

double payoff_recursion(std::span<const double> observed_ratios, double gamma,
                        double dt, Compounding compounding, double initial_hw,
                        double initial_v) {
    if (observed_ratios.empty())
        throw std::invalid_argument("payoff_recursion: empty observation sequence");
    const double g = accrual_factor(gamma, dt, compounding);
    double hw = initial_hw;
    double value = initial_v;
    for (double ratio : observed_ratios) {
        hw = std::max(ratio, hw);
        value = std::max(hw, g * value);
    }
    assert(std::abs(value - payoff_closed_form(observed_ratios, gamma, dt, compounding,
                                               initial_hw, initial_v)) <=
           1e-11 * std::abs(value));
    return value;
}

// ---------------------------------------------------------------------------
// Engine
// ---------------------------------------------------------------------------

namespace {

struct EngineConfig {
    double drift_step = 0.0;  // mu * dt_sub
    double diff_step = 0.0;   // v * sqrt(dt_sub)
    double g = 1.0;           // accrual per observation
    double initial = 1.0;     // normalized initial hw and value
    double spot_ratio = 1.0;  // S / S0
    std::uint32_t n_obs = 1;
    std::uint32_t substeps = 1;
};

// One path; antithetic runs the mirrored increments in the same pass.
template <bool Antithetic>
double sample_payoff(const EngineConfig& c, PathRng& rng) {
    double x_p = 0.0, hw_p = c.initial, val_p = c.initial;
    double x_m = 0.0, hw_m = c.initial, val_m = c.initial;
    for (std::uint32_t n = 0; n < c.n_obs; ++n) {
        for (std::uint32_t s = 0; s < c.substeps; ++s) {
            const double z = rng.normal();
            x_p += c.drift_step + c.diff_step * z;
            if constexpr (Antithetic) x_m += c.drift_step - c.diff_step * z;
        }
        const double ratio_p = c.spot_ratio * std::exp(x_p);
        hw_p = std::max(ratio_p, hw_p);
        val_p = std::max(hw_p, c.g * val_p);
        if constexpr (Antithetic) {
            const double ratio_m = c.spot_ratio * std::exp(x_m);
            hw_m = std::max(ratio_m, hw_m);
            val_m = std::max(hw_m, c.g * val_m);
        }
    }
    if constexpr (Antithetic) return 0.5 * (val_p + val_m);
    return val_p;
}

void run_parallel(std::uint64_t n_samples, std::uint32_t n_threads,
                  const std::function<void(std::uint64_t, std::uint64_t)>& work) {
    if (n_threads == 0) n_threads = std::max(1u, std::thread::hardware_concurrency());
    n_threads = static_cast<std::uint32_t>(
        std::min<std::uint64_t>(n_threads, std::max<std::uint64_t>(n_samples, 1)));
    if (n_threads <= 1) {
        work(0, n_samples);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(n_threads);
    const std::uint64_t chunk = (n_samples + n_threads - 1) / n_threads;
    for (std::uint32_t t = 0; t < n_threads; ++t) {
        const std::uint64_t lo = t * chunk;
        const std::uint64_t hi = std::min(n_samples, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([&work, lo, hi] { work(lo, hi); });
    }
    for (auto& th : pool) th.join();
}

void check_budget(const SimulationSpec& spec, std::uint64_t steps_per_path) {
    // Box-Muller draws pairs; round odd step counts up.
    const std::uint64_t per_path = steps_per_path + (steps_per_path & 1);
    if (spec.n_paths > spec.max_draws / std::max<std::uint64_t>(per_path, 1))
        throw BudgetExceeded("simulation exceeds the configured draw budget");
}

}  // namespace

std::vector<double> mc_payoff_samples(const ContractState& state,
                                      const MarketParams& market,
                                      const ContractTerms& terms,
                                      const SimulationSpec& spec) {
    validate(market, terms, state);
    if (spec.n_paths < 1) throw std::invalid_argument("n_paths must be >= 1");
    if (spec.substeps_per_observation < 1)
        throw std::invalid_argument("substeps_per_observation must be >= 1");
    if (spec.antithetic && spec.n_paths % 2 != 0)
        throw std::invalid_argument("antithetic mode needs an even n_paths");

    const std::uint64_t steps =
        std::uint64_t{terms.n_observations} * spec.substeps_per_observation;
    check_budget(spec, steps);

    const double dt_obs = terms.delta_t();
    const double dt_sub = dt_obs / spec.substeps_per_observation;
    EngineConfig c;
    c.drift_step = (market.r - market.y - 0.5 * market.v * market.v) * dt_sub;
    c.diff_step = market.v * std::sqrt(dt_sub);
    c.g = accrual_factor(terms.gamma, dt_obs, terms.compounding);
    c.spot_ratio = state.spot_S / state.issue_spot_S0;
    c.initial = std::max(state.effective_strike(terms.gamma) / state.issue_spot_S0,
                         c.spot_ratio);
    c.n_obs = terms.n_observations;
    c.substeps = spec.substeps_per_observation;

    const std::uint64_t n_samples =
        spec.antithetic ? spec.n_paths / 2 : spec.n_paths;
    std::vector<double> payoffs(n_samples);
    auto work = [&](std::uint64_t lo, std::uint64_t hi) {
        for (std::uint64_t i = lo; i < hi; ++i) {
            PathRng rng(spec.seed, i);
            payoffs[i] = spec.antithetic ? sample_payoff<true>(c, rng)
                                         : sample_payoff<false>(c, rng);
        }
    };
    run_parallel(n_samples, spec.n_threads, work);
    return payoffs;
}

McEstimate mc_price(const ContractState& state, const MarketParams& market,
                    const ContractTerms& terms, const SimulationSpec& spec) {
    const std::vector<double> payoffs = mc_payoff_samples(state, market, terms, spec);
    const auto n = static_cast<double>(payoffs.size());
    const double mean = pairwise_sum(payoffs) / n;
    std::vector<double> sq(payoffs.size());
    for (std::size_t i = 0; i < payoffs.size(); ++i) {
        const double d = payoffs[i] - mean;
        sq[i] = d * d;
    }
    const double var = payoffs.size() > 1 ? pairwise_sum(sq) / (n - 1.0) : 0.0;
    const double disc = std::exp(-market.r * terms.maturity_T) * terms.notional;
    McEstimate est;
    est.value = disc * mean;
    est.std_error = disc * std::sqrt(var / n);
    est.n_paths = spec.n_paths;
    return est;
}

std::vector<double> mc_running_max_sample(const SimulationSpec& spec,
                                          const MaxDistParams& p,
                                          std::size_t n_steps) {
    if (n_steps < 1) throw std::invalid_argument("n_steps must be >= 1");
    check_budget(spec, n_steps);
    const double dt = p.horizon_T / static_cast<double>(n_steps);
    const double drift = p.mu * dt;
    const double diff = p.v * std::sqrt(dt);
    std::vector<double> maxima(spec.n_paths);
    auto work = [&](std::uint64_t lo, std::uint64_t hi) {
        for (std::uint64_t i = lo; i < hi; ++i) {
            PathRng rng(spec.seed, i);
            double x = 0.0, mx = 0.0;  // grid includes the start point
            for (std::size_t k = 0; k < n_steps; ++k) {
                x += drift + diff * rng.normal();
                mx = std::max(mx, x);
            }
            maxima[i] = mx;
        }
    };
    run_parallel(spec.n_paths, spec.n_threads, work);
    return maxima;
}

double pairwise_sum(std::span<const double> xs) {
    if (xs.size() <= 8) {
        double s = 0.0;
        for (double x : xs) s += x;
        return s;
    }
    const std::size_t half = xs.size() / 2;
    return pairwise_sum(xs.first(half)) + pairwise_sum(xs.subspan(half));
}

}  // namespace hwm
