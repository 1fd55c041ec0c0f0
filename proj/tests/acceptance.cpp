// Acceptance suite: one line per criterion, measured values included.
// Exit code is the number of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <string>
#include <vector>

#include "hwm/analytic.hpp"
#include "hwm/maxdist.hpp"
#include "hwm/mc.hpp"
#include "hwm/quadrature.hpp"
#include "hwm/special.hpp"

using namespace hwm;

namespace {

const MarketParams kMkt{0.05, 0.0, 0.10};  // T=10, r=5%, gamma=8%, v=10%, y=0
constexpr double kGamma = 0.08;
constexpr double kT = 10.0;

ContractTerms terms_n(std::uint32_t n) {
    return {kGamma, kT, 1.0, n, Compounding::Continuous};
}

QuadratureSpec tight(double rel = 1e-10) {
    QuadratureSpec q;
    q.rel_tol = rel;
    q.abs_tol = 1e-14;
    q.max_subdivisions = 5000;
    return q;
}

struct Outcome {
    bool pass = true;
    std::string detail;

    void fail(const std::string& why) {
        pass = false;
        if (!detail.empty()) detail += "; ";
        detail += why;
    }
    void note(const std::string& what) {
        if (!detail.empty()) detail += "; ";
        detail += what;
    }
};

int g_failures = 0;

void run(int id, const std::string& name, double time_budget_s,
         const std::function<void(Outcome&)>& body) {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
        body(o);
    } catch (const std::exception& e) {
        o.fail(std::string("exception: ") + e.what());
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (time_budget_s > 0 && secs > time_budget_s)
        o.fail("runtime " + std::to_string(secs) + "s over budget");
    if (!o.pass) ++g_failures;
    std::printf("[%s] criterion %2d: %s (%.2fs)%s%s\n", o.pass ? "PASS" : "FAIL", id,
                name.c_str(), secs, o.detail.empty() ? "" : " -- ",
                o.detail.c_str());
    std::fflush(stdout);
}

std::string fmt(double x) {
    char b[64];
    std::snprintf(b, sizeof b, "%.6g", x);
    return b;
}

double sample_mean(const std::vector<double>& xs) {
    return pairwise_sum(xs) / static_cast<double>(xs.size());
}

double sample_stderr(const std::vector<double>& xs, double mean) {
    std::vector<double> sq(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i)
        sq[i] = (xs[i] - mean) * (xs[i] - mean);
    const double var = pairwise_sum(sq) / static_cast<double>(xs.size() - 1);
    return std::sqrt(var / static_cast<double>(xs.size()));
}

// 1. Density normalization over 27 parameter combinations.
void c1(Outcome& o) {
    double worst = 0.0;
    for (double mu : {-0.05, 0.0, 0.05})
        for (double v : {0.05, 0.1, 0.3})
            for (double T : {1.0, 5.0, 10.0}) {
                const MaxDistParams p{mu, v, T};
                const double cut = expected_excess_cutoff(0.0, p, tight());
                const double mass =
                    integrate_adaptive([&](double h) { return max_pdf(h, p); }, 0.0,
                                       cut, tight(1e-11))
                        .value;
                worst = std::max(worst, std::abs(mass - 1.0));
            }
    o.note("worst |mass-1| = " + fmt(worst));
    if (worst > 1e-8) o.fail("normalization outside 1e-8");
}

// 2. Reflection-principle special case at mu = 0.
void c2(Outcome& o) {
    double worst = 0.0;
    for (double v : {0.05, 0.1, 0.3})
        for (double T : {1.0, 10.0}) {
            const MaxDistParams p{0.0, v, T};
            for (int i = 1; i <= 100; ++i) {
                const double h = 0.01 * i;
                worst = std::max(worst, std::abs(max_cdf(h, p) -
                                                 std::erf(h / (v * std::sqrt(2 * T)))));
            }
        }
    o.note("worst |F - erf| = " + fmt(worst));
    if (worst > 1e-12) o.fail("outside 1e-12");
}

// 3. Image solution: wall value, Fokker-Planck residual, CDF consistency.
void c3(Outcome& o) {
    std::uint64_t s = 88172645463325252ull;
    auto rnd = [&s](double lo, double hi) {
        s ^= s << 13;
        s ^= s >> 7;
        s ^= s << 17;
        return lo + (hi - lo) * (static_cast<double>(s >> 11) * 0x1.0p-53);
    };
    double worst_wall = 0.0;
    for (int i = 0; i < 2000; ++i) {
        const MaxDistParams p{rnd(-0.4, 0.4), rnd(0.05, 1.0), rnd(0.5, 15.0)};
        const double h = rnd(1e-3, 2.0), t = rnd(1e-3, 8.0);
        worst_wall = std::max(worst_wall, std::abs(barrier_density(h, h, t, p)));
    }
    o.note("wall |P(h,h,t)| = " + fmt(worst_wall));
    if (worst_wall != 0.0) o.fail("wall not exactly zero");

    const MaxDistParams p{-0.035, 0.1, 10.0};
    const double h = 0.3, dx = 2e-4, dt = 2e-4;
    double worst_res = 0.0;
    for (double t = 0.1; t <= 2.0; t += 0.19)
        for (double x = h - 1.0; x < h - 0.01; x += 0.03) {
            const double pt =
                (barrier_density(x, h, t + dt, p) - barrier_density(x, h, t - dt, p)) /
                (2 * dt);
            const double pxx = (barrier_density(x + dx, h, t, p) -
                                2 * barrier_density(x, h, t, p) +
                                barrier_density(x - dx, h, t, p)) /
                               (dx * dx);
            const double px =
                (barrier_density(x + dx, h, t, p) - barrier_density(x - dx, h, t, p)) /
                (2 * dx);
            const double rhs = 0.5 * p.v * p.v * pxx - p.mu * px;
            const double scale = std::max({std::abs(pt), std::abs(rhs), 1e-6});
            worst_res = std::max(worst_res, std::abs(pt - rhs) / scale);
        }
    o.note("FP residual = " + fmt(worst_res));
    if (worst_res > 1e-4) o.fail("Fokker-Planck residual > 1e-4");

    double worst_int = 0.0;
    for (double mu : {-0.035, 0.02})
        for (double hh : {0.1, 0.3, 1.0}) {
            const MaxDistParams pp{mu, 0.1, 10.0};
            const double lo = mu * 10.0 - 14 * 0.1 * std::sqrt(10.0);
            const double mass =
                integrate_adaptive(
                    [&](double x) { return barrier_density(x, hh, 10.0, pp); },
                    std::min(lo, hh - 5.0), hh, tight(1e-12))
                    .value;
            worst_int = std::max(worst_int, std::abs(mass - max_cdf(hh, pp)));
        }
    o.note("|int P - F| = " + fmt(worst_int));
    if (worst_int > 1e-9) o.fail("barrier integral vs CDF > 1e-9");
}

// 4. Closed form vs quadrature oracle on the non-singular grid.
void c4(Outcome& o) {
    double worst = 0.0;
    int points = 0;
    const auto st = ContractState::issue();
    for (double r : {0.01, 0.03, 0.05, 0.07})
        for (double g : {0.0, 0.05, 0.1})
            for (double v : {0.05, 0.1, 0.2, 0.4})
                for (double T : {1.0, 5.0, 10.0}) {
                    if (std::abs(r - g) < 1e-3) continue;
                    const MarketParams m{r, 0.0, v};
                    const ContractTerms t{g, T, 1.0, 120, Compounding::Continuous};
                    const auto a = continuous_price(st, m, t);
                    const auto q =
                        oracle_price(st, m, t, tight(1e-11), Monitoring::Continuous);
                    worst = std::max(worst, std::abs(a.value - q.value) / q.value);
                    ++points;
                }
    o.note(std::to_string(points) + " grid points, worst rel = " + fmt(worst));
    if (worst > 1e-6) o.fail("relative gap above 1e-6");

    const MarketParams m{0.05, 0.0, 0.1};
    const ContractTerms t{0.05, 10.0, 1.0, 120, Compounding::Continuous};
    const auto q = oracle_price(st, m, t, tight(), Monitoring::Continuous);
    const auto a = continuous_price(st, m, t);
    if (!std::isfinite(q.value)) o.fail("oracle not finite at the singular point");
    if (a.method != Method::Quadrature) o.fail("singular point not tagged as fallback");
}

// 5. Fig. 1 sweep: shape plus MC agreement at 5e5 paths.
void c5(Outcome& o) {
    const auto st = ContractState::issue();
    const double cont = continuous_price(st, kMkt, terms_n(10)).value;
    double prev = 0.0;
    bool shape_ok = true;
    std::string gaps;
    bool agree_ok = true;
    for (std::uint32_t n : {10u, 20u, 40u, 120u, 520u}) {
        const auto t = terms_n(n);
        const auto disc = discrete_price(st, kMkt, t);
        const auto bgk = discrete_price(st, kMkt, t, CorrectionKind::BroadieGlassermanKou);
        SimulationSpec spec;
        spec.n_paths = 500000;
        spec.seed = 20260810;
        const auto mc = mc_price(st, kMkt, t, spec);

        if (!(disc.value > prev)) shape_ok = false;
        if (!(disc.value <= cont)) shape_ok = false;
        prev = disc.value;

        const double gap = std::abs(disc.value - mc.value);
        const double sig = gap / mc.std_error;
        const double tol = n >= 40 ? 3.0 * mc.std_error
                                   : std::max(3.0 * mc.std_error, 0.005 * mc.value);
        if (gap > tol) agree_ok = false;
        gaps += "N=" + std::to_string(n) + ": " + fmt(sig) + " sigma (bgk " +
                fmt(std::abs(bgk.value - mc.value) / mc.std_error) + "); ";
    }
    o.note(gaps);
    if (!shape_ok) o.fail("discrete column not strictly increasing/bounded");
    if (!agree_ok)
        o.fail("sqrt(2/pi) correction vs MC outside tolerance (constant overshoots; "
               "see ledger)");
}

// 6. Continuous-limit MC with the eps-correction applied.
void c6(Outcome& o) {
    const double eps = correction_epsilon(kMkt.v, kT / 5000).epsilon;
    SimulationSpec spec;
    spec.n_paths = 200000;
    spec.seed = 4242;
    const auto p = MaxDistParams::from_market(kMkt, kGamma, kT);
    const auto maxima = mc_running_max_sample(spec, p, 5000);
    std::vector<double> payoff(maxima.size());
    const double pre = std::exp((kGamma - kMkt.r) * kT);
    for (std::size_t i = 0; i < maxima.size(); ++i)
        payoff[i] = pre * std::max(1.0, std::exp(maxima[i] + eps));
    const double mean = sample_mean(payoff);
    const double se = sample_stderr(payoff, mean);
    const double cont = continuous_price(ContractState::issue(), kMkt, terms_n(5000)).value;
    const double gap = std::abs(mean - cont);
    o.note("corrected MC " + fmt(mean) + " vs continuous " + fmt(cont) + ", gap " +
           fmt(gap) + " (" + fmt(gap / se) + " sigma, " + fmt(gap / cont * 100) + "%)");
    if (gap > std::max(3 * se, 0.003 * cont)) o.fail("outside max(3 sigma, 0.3%)");
}

// 7. Kolmogorov-Smirnov distance of simulated running maxima.
void c7(Outcome& o) {
    SimulationSpec spec;
    spec.n_paths = 10000;
    spec.seed = 987654321;
    const MaxDistParams p{-0.035, 0.1, 10.0};
    auto sample = mc_running_max_sample(spec, p, 10000);
    std::sort(sample.begin(), sample.end());
    const double n = static_cast<double>(sample.size());
    double d = 0.0;
    for (std::size_t i = 0; i < sample.size(); ++i) {
        const double f = max_cdf(sample[i], p);
        d = std::max(d, std::max(f - i / n, (i + 1) / n - f));
    }
    o.note("KS = " + fmt(d));
    if (d >= 0.02) o.fail("KS >= 0.02");
}

// 8. Pathwise dominance of the finer observation grid on common draws.
void c8(Outcome& o) {
    ContractTerms coarse = terms_n(60);
    ContractTerms fine = terms_n(120);
    SimulationSpec sc;
    sc.n_paths = 10000;
    sc.seed = 1357;
    sc.substeps_per_observation = 2;
    SimulationSpec sf = sc;
    sf.substeps_per_observation = 1;
    const auto st = ContractState::issue();
    const auto pc = mc_payoff_samples(st, kMkt, coarse, sc);
    const auto pf = mc_payoff_samples(st, kMkt, fine, sf);
    std::size_t violations = 0;
    for (std::size_t i = 0; i < pc.size(); ++i)
        if (pf[i] < pc[i] * (1 - 1e-12)) ++violations;
    o.note(std::to_string(violations) + " violations in " +
           std::to_string(pc.size()) + " paths");
    if (violations != 0) o.fail("dominance violated");
}

// 9. Bitwise determinism across runs and thread counts.
void c9(Outcome& o) {
    SimulationSpec base;
    base.n_paths = 100000;
    base.seed = 5150;
    McEstimate ref;
    bool first = true;
    for (std::uint32_t threads : {1u, 2u, 8u}) {
        SimulationSpec spec = base;
        spec.n_threads = threads;
        const auto a = mc_price(ContractState::issue(), kMkt, terms_n(120), spec);
        const auto b = mc_price(ContractState::issue(), kMkt, terms_n(120), spec);
        if (std::memcmp(&a.value, &b.value, sizeof(double)) != 0 ||
            std::memcmp(&a.std_error, &b.std_error, sizeof(double)) != 0)
            o.fail("re-run differs at " + std::to_string(threads) + " threads");
        if (first) {
            ref = a;
            first = false;
        } else if (std::memcmp(&ref.value, &a.value, sizeof(double)) != 0) {
            o.fail("thread count " + std::to_string(threads) + " changes the value");
        }
    }
    o.note("value = " + fmt(ref.value));
}

// 10. Hand-computed three-step recursion.
void c10(Outcome& o) {
    const std::vector<double> ratios{1.05, 0.9, 1.2};
    const double payoff =
        payoff_recursion(ratios, 0.10, 1.0, Compounding::Simple, 1.0, 1.0);
    o.note("payoff = " + fmt(payoff));
    if (std::abs(payoff - 1.331) > 1e-15) o.fail("!= 1.331 beyond rounding");
}

}  // namespace

int main() {
    std::printf("acceptance suite: T=10, r=5%%, gamma=8%%, v=10%%, y=0 where applicable\n");
    run(1, "density normalization (27 combos, 1e-8)", 5.0, c1);
    run(2, "mu=0 reflection identity (1e-12)", 1.0, c2);
    run(3, "image solution: wall, Fokker-Planck, CDF (1e-9)", 0.0, c3);
    run(4, "closed form vs oracle grid (1e-6) + singular fallback", 30.0, c4);
    run(5, "Fig-1 sweep shape + MC agreement at 5e5 paths", 600.0, c5);
    run(6, "continuous-limit MC, eps-corrected (max(3sig, 0.3%))", 0.0, c6);
    run(7, "KS of running maxima (1e4 x 1e4) < 0.02", 0.0, c7);
    run(8, "pathwise dominance on common draws", 0.0, c8);
    run(9, "bitwise determinism across threads {1,2,8}", 0.0, c9);
    run(10, "hand-computed recursion = 1.331", 0.0, c10);
    std::printf("%d criterion(s) failed\n", g_failures);
    return g_failures;
}
