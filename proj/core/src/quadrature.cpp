#include "hwm/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <vector>

#include "hwm/analytic.hpp"
#include "hwm/maxdist.hpp"

namespace hwm {

namespace {

// Gauss-Kronrod 7/15 abscissae and weights on [-1, 1] (QUADPACK dqk15).
// The embedded 7-point Gauss rule provides the second, lower-order estimate.
constexpr double kXgk[8] = {
    0.99145537112081263921, 0.94910791234275852453, 0.86486442335976907279,
    0.74153118559939443986, 0.58608723546769113029, 0.40584515137739716691,
    0.20778495500789846760, 0.0};
constexpr double kWgk[8] = {
    0.02293532201052922496, 0.06309209262997855329, 0.10479001032225018384,
    0.14065325971552591875, 0.16900472663926790283, 0.19035057806478540991,
    0.20443294007529889241, 0.20948214108472782801};
constexpr double kWg[4] = {0.12948496616886969327, 0.27970539148927666790,
                           0.38183005050511894495, 0.41795918367346938776};

struct Interval {
    double a, b, value, error;
    bool operator<(const Interval& o) const { return error < o.error; }
};

Interval gk15(const std::function<double(double)>& f, double a, double b) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double fc = f(mid);
    double k15 = kWgk[7] * fc;
    double g7 = kWg[3] * fc;
    for (int i = 0; i < 7; ++i) {
        const double dx = half * kXgk[i];
        const double fsum = f(mid - dx) + f(mid + dx);
        k15 += kWgk[i] * fsum;
        if (i % 2 == 1) g7 += kWg[i / 2] * fsum;
    }
    k15 *= half;
    g7 *= half;
    // QUADPACK-style inflated estimate of the K15 error from the G7 gap.
    double err = std::abs(k15 - g7);
    err = 200.0 * err * std::sqrt(200.0 * err < 1.0 ? 200.0 * err : 1.0);
    return {a, b, k15, err};
}

}  // namespace

QuadResult integrate_adaptive(const std::function<double(double)>& f, double a,
                              double b, const QuadratureSpec& q) {
    if (q.rel_tol < 1e-12)
        throw std::invalid_argument("QuadratureSpec: rel_tol must be >= 1e-12");
    std::priority_queue<Interval> heap;
    Interval whole = gk15(f, a, b);
    double total = whole.value;
    double total_err = whole.error;
    heap.push(whole);
    int used = 1;
    while (total_err > std::max(q.abs_tol, q.rel_tol * std::abs(total))) {
        if (used >= q.max_subdivisions)
            throw NonConvergence("quadrature: subdivision limit reached before tolerance");
        Interval worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        Interval left = gk15(f, worst.a, mid);
        Interval right = gk15(f, mid, worst.b);
        total += left.value + right.value - worst.value;
        total_err += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        ++used;
    }
    return {total, total_err, used};
}

double expected_excess_cutoff(double lower, const MaxDistParams& p,
                              const QuadratureSpec& q) {
    if (q.upper_cutoff_h > 0.0) return std::max(q.upper_cutoff_h, lower);
    const double center = (p.mu + p.v * p.v) * p.horizon_T;
    const double width = p.v * std::sqrt(p.horizon_T);
    return std::max({lower, center, 0.0}) + 20.0 * width;
}

double expected_excess(double S, double X, const MaxDistParams& p,
                       const QuadratureSpec& q) {
    if (!(S > 0.0 && X > 0.0)) throw std::invalid_argument("expected_excess: S, X > 0");
    const double lower = std::max(0.0, std::log(X / S));
    const double upper = expected_excess_cutoff(lower, p, q);
    auto f = [&](double h) { return (S * std::exp(h) - X) * max_pdf(h, p); };
    return integrate_adaptive(f, lower, upper, q).value;
}

PriceResult oracle_price(const ContractState& state, const MarketParams& market,
                         const ContractTerms& terms, const QuadratureSpec& q,
                         Monitoring mode) {
    validate(market, terms, state);
    const double T = terms.maturity_T;
    const double s = state.spot_S / state.issue_spot_S0;
    const double x_acc = state.effective_strike(terms.gamma) / state.issue_spot_S0;
    const double x_eff = std::max(x_acc, s);

    double eps = 0.0;
    double g = terms.gamma;
    if (mode == Monitoring::Discrete) {
        eps = correction_epsilon(market.v, terms.delta_t()).epsilon;
        g = continuous_equivalent_gamma(terms);
    }

    const MaxDistParams p = MaxDistParams::from_market(market, g, T);
    const double excess = expected_excess(s, x_eff * std::exp(eps), p, q);
    const double value = terms.notional * std::exp((g - market.r) * T) *
                         (x_eff + std::exp(-eps) * excess);
    PriceResult res;
    res.value = value;
    res.method = Method::Quadrature;
    res.epsilon_used = eps;
    return res;
}

}  // namespace hwm
