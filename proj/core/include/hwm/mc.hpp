#pragma once
/**
 * @file mc.hpp
 * @brief Reproducible Monte-Carlo engine for the discrete HWM payoff.
 *
 * Streams are counter-based (Philox4x32-10, key = seed, counter carries
 * (draw block, path index)), so every path's draws are a pure function of
 * (seed, path); scheduling and thread count cannot affect results.
 * Reductions run over a per-path payoff vector in index order.
 */

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "hwm/types.hpp"

namespace hwm {

// ---------------------------------------------------------------------------
// Counter-based RNG
// ---------------------------------------------------------------------------

/// Philox 4x32, 10 rounds (Salmon et al.). Bijective block cipher of the
/// 128-bit counter under the 64-bit key; one block = four u32 words.
struct Philox4x32 {
    static std::array<std::uint32_t, 4> block(std::uint64_t key,
                                              std::array<std::uint32_t, 4> counter);
};

/// Per-path normal stream: counter = (block#, path), Box-Muller pairs.
class PathRng {
public:
    PathRng(std::uint64_t seed, std::uint64_t path_index)
        : seed_(seed), path_(path_index) {}

    /// Uniform in the open interval (0, 1).
    double uniform();

    /// Standard normal draw.
    double normal();

private:
    void refill();

    std::uint64_t seed_, path_;
    std::uint64_t block_ = 0;
    std::array<std::uint32_t, 4> buf_{};
    int word_ = 4;           // next u32 pair index into buf_
    double cached_ = 0.0;    // second Box-Muller variate
    bool has_cached_ = false;
};

// ---------------------------------------------------------------------------
// Simulation configuration and estimates
// ---------------------------------------------------------------------------

struct SimulationSpec {
    std::uint64_t n_paths = 100000;
    std::uint64_t seed = 0;
    std::uint32_t substeps_per_observation = 1;  ///< fine grid between observations
    bool antithetic = false;                     ///< pair each stream with its mirror
    std::uint32_t n_threads = 0;                 ///< 0 = hardware concurrency
    std::uint64_t max_draws = std::uint64_t{1} << 33;  ///< normal-draw budget
};

struct McEstimate {
    double value = 0.0;
    double std_error = 0.0;   ///< sample std / sqrt(n samples); pair-averages when antithetic
    std::uint64_t n_paths = 0;
};

// ---------------------------------------------------------------------------
// Operations
// ---------------------------------------------------------------------------

/// Exact log-Euler path: x_{k+1} = x_k + mu dt + v sqrt(dt) Z_k, x_0 = 0.
/// Returns x at steps 1..n_steps. gamma_shift selects the tilted drift
/// mu = r - y - gamma - v^2/2 (else gamma is ignored: mu = r - y - v^2/2).
std::vector<double> simulate_log_returns(std::size_t n_steps, double dt,
                                         const MarketParams& market, double gamma,
                                         bool gamma_shift, PathRng& rng);

/// HWM payoff recursion over observed price ratios S(t_n)/S(0):
///   Hw_n = max(ratio_n, Hw_{n-1}),  V_n = max(Hw_n, g V_{n-1}),
/// g = e^{gamma dt} (Continuous) or 1 + gamma dt (Simple),
/// Hw_0 = initial_hw, V_0 = initial_v. Debug builds assert the recursion
/// equals the closed form max_n Hw_n g^{N-n}.
double payoff_recursion(std::span<const double> observed_ratios, double gamma,
                        double dt, Compounding compounding, double initial_hw,
                        double initial_v);

/// Closed-form equivalent of the recursion (max over lock-in dates).
double payoff_closed_form(std::span<const double> observed_ratios, double gamma,
                          double dt, Compounding compounding, double initial_hw,
                          double initial_v);

/// Undiscounted per-sample payoffs (per unit notional). One entry per path,
/// or per antithetic pair-average. Deterministic in (inputs, seed).
std::vector<double> mc_payoff_samples(const ContractState& state,
                                      const MarketParams& market,
                                      const ContractTerms& terms,
                                      const SimulationSpec& spec);

/// Discounted MC value e^{-rT} * mean(payoff) * notional with standard error.
/// Simulates the untilted process on the observation grid; the recursion
/// carries the guarantee. Throws BudgetExceeded if paths*steps > max_draws.
McEstimate mc_price(const ContractState& state, const MarketParams& market,
                    const ContractTerms& terms, const SimulationSpec& spec);

/// Per-path maximum of the discretized log path x(t) (grid t = k T/n_steps,
/// including the start point, so every sample is >= 0). Drift and horizon
/// come from p; used for distribution tests against max_cdf.
std::vector<double> mc_running_max_sample(const SimulationSpec& spec,
                                          const MaxDistParams& p,
                                          std::size_t n_steps);

/// Deterministic pairwise sum (order-independent of thread count by design:
/// it runs over a materialized vector in index order).
double pairwise_sum(std::span<const double> xs);

}  // namespace hwm
