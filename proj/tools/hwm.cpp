// hwm: price high-water-mark variable-annuity contracts from the command line.
//
// Subcommands: price, sweep, density. All output embeds the fully resolved
// parameter set; CSV numbers carry 17 significant digits. Flags override
// values from --config (a flat JSON object). Exit codes: 0 ok, 2 validation,
// 3 numerical failure.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "hwm/analytic.hpp"
#include "hwm/maxdist.hpp"
#include "hwm/mc.hpp"
#include "hwm/quadrature.hpp"
#include "hwm/types.hpp"

using json = nlohmann::ordered_json;

namespace {

struct Options {
    double r = 0.05, y = 0.0, v = 0.10;
    double gamma = 0.08, T = 10.0, notional = 1.0;
    std::string n_list = "120";  // sweep accepts a comma list
    double S = 1.0, SH = 1.0, th = 0.0, S0 = 1.0;
    std::string method = "discrete";
    std::uint64_t seed = 0, paths = 100000;
    std::uint32_t substeps = 1, threads = 0;
    bool antithetic = false;
    std::string compounding = "continuous";
    std::string correction = "sqrt2pi";
    std::string config, out, format;
    double hmax = 0.0;  // density grid; 0 = auto
    std::uint32_t hsteps = 201;
    std::uint64_t budget = std::uint64_t{1} << 33;
};

// Every option is registered through here so config-file overlay knows the
// full key set. Flags win over config values.
struct Binder {
    CLI::App* cmd;
    std::vector<std::pair<std::string, std::function<void(const json&)>>> setters;

    template <typename T>
    void add(const std::string& flag, T& ref, const std::string& help) {
        cmd->add_option("--" + flag, ref, help);
        setters.emplace_back(flag, [&ref](const json& j) { ref = j.get<T>(); });
    }
    void add_flag(const std::string& flag, bool& ref, const std::string& help) {
        cmd->add_flag("--" + flag, ref, help);
        setters.emplace_back(flag, [&ref](const json& j) { ref = j.get<bool>(); });
    }

    void overlay_config(const std::string& path) {
        if (path.empty()) return;
        std::ifstream in(path);
        if (!in) throw hwm::ValidationError("config", "cannot open " + path);
        json cfg;
        try {
            in >> cfg;
        } catch (const std::exception& e) {
            throw hwm::ValidationError("config", std::string("parse error: ") + e.what());
        }
        for (auto& [key, apply] : setters) {
            if (cfg.contains(key) && cmd->count("--" + key) == 0) apply(cfg.at(key));
        }
    }
};

void bind_common(Binder& b, Options& o, bool sweep_list) {
    b.add("r", o.r, "risk-free rate per year");
    b.add("y", o.y, "dividend yield per year");
    b.add("v", o.v, "volatility per sqrt(year)");
    b.add("gamma", o.gamma, "guaranteed minimum payoff rate per year");
    b.add("T", o.T, "maturity in years");
    if (sweep_list)
        b.add("N", o.n_list, "observation counts, comma separated");
    else
        b.add("N", o.n_list, "number of observation dates");
    b.add("S", o.S, "current spot (in issue-spot units)");
    b.add("SH", o.SH, "historical high-water mark (in issue-spot units)");
    b.add("th", o.th, "accrual time of the high-water mark, years");
    b.add("S0", o.S0, "issue spot (normalization base)");
    b.add("notional", o.notional, "contract notional");
    b.add("seed", o.seed, "Monte-Carlo seed");
    b.add("paths", o.paths, "Monte-Carlo path count");
    b.add("substeps", o.substeps, "simulation substeps per observation");
    b.add_flag("antithetic", o.antithetic, "antithetic variates");
    b.add("compounding", o.compounding, "guarantee accrual: continuous|simple");
    b.add("correction", o.correction, "continuity correction: sqrt2pi|bgk");
    b.add("threads", o.threads, "worker threads (0 = hardware)");
    b.add("out", o.out, "output file (default stdout)");
    b.add("format", o.format, "output format: csv|json");
    b.cmd->add_option("--config", o.config, "JSON config file (flags win)");
}

std::uint32_t parse_n_single(const std::string& s) {
    std::size_t pos = 0;
    const unsigned long n = std::stoul(s, &pos);
    if (pos != s.size() || n < 1)
        throw hwm::ValidationError("N", "must be a positive integer");
    return static_cast<std::uint32_t>(n);
}

std::vector<std::uint32_t> parse_n_list(const std::string& s) {
    std::vector<std::uint32_t> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (!tok.empty()) out.push_back(parse_n_single(tok));
    }
    if (out.empty()) throw hwm::ValidationError("N", "empty observation list");
    return out;
}

hwm::Compounding parse_compounding(const std::string& s) {
    if (s == "continuous") return hwm::Compounding::Continuous;
    if (s == "simple") return hwm::Compounding::Simple;
    throw hwm::ValidationError("compounding", "expected continuous|simple");
}

hwm::CorrectionKind parse_correction(const std::string& s) {
    if (s == "sqrt2pi") return hwm::CorrectionKind::Sqrt2OverPi;
    if (s == "bgk") return hwm::CorrectionKind::BroadieGlassermanKou;
    throw hwm::ValidationError("correction", "expected sqrt2pi|bgk");
}

struct Resolved {
    hwm::MarketParams market;
    hwm::ContractTerms terms;
    hwm::ContractState state;
    hwm::SimulationSpec sim;
    hwm::CorrectionKind kind;
};

Resolved resolve(const Options& o, std::uint32_t n_obs) {
    Resolved r;
    r.market = {o.r, o.y, o.v};
    r.terms = {o.gamma, o.T, o.notional, n_obs, parse_compounding(o.compounding)};
    r.state = {o.S * o.S0, o.SH * o.S0, o.th, o.S0};
    r.sim.n_paths = o.paths;
    r.sim.seed = o.seed;
    r.sim.substeps_per_observation = o.substeps;
    r.sim.antithetic = o.antithetic;
    r.sim.n_threads = o.threads;
    r.sim.max_draws = o.budget;
    r.kind = parse_correction(o.correction);
    return r;
}

json params_json(const Options& o, const std::string& command) {
    json p;
    p["command"] = command;
    p["r"] = o.r;
    p["y"] = o.y;
    p["v"] = o.v;
    p["gamma"] = o.gamma;
    p["T"] = o.T;
    p["N"] = o.n_list;
    p["S"] = o.S;
    p["SH"] = o.SH;
    p["th"] = o.th;
    p["S0"] = o.S0;
    p["notional"] = o.notional;
    p["method"] = o.method;
    p["seed"] = o.seed;
    p["paths"] = o.paths;
    p["substeps"] = o.substeps;
    p["antithetic"] = o.antithetic;
    p["compounding"] = o.compounding;
    p["correction"] = o.correction;
    p["threads"] = o.threads;
    p["budget"] = o.budget;
    return p;
}

std::string full(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

void emit(const Options& o, const std::string& text) {
    if (o.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(o.out, std::ios::binary);
    if (!f) throw hwm::ValidationError("out", "cannot write " + o.out);
    f << text;
}

// ---------------------------------------------------------------------------

int cmd_price(const Options& o) {
    const auto n = parse_n_single(o.n_list);
    const Resolved r = resolve(o, n);
    hwm::validate(r.market, r.terms, r.state);

    hwm::PriceResult res;
    std::string warning;
    if (o.method == "continuous") {
        res = hwm::continuous_price(r.state, r.market, r.terms);
        if (res.method == hwm::Method::Quadrature)
            warning = "singular parameterization (r ~ y + gamma): quadrature fallback";
    } else if (o.method == "discrete") {
        res = hwm::discrete_price(r.state, r.market, r.terms, r.kind);
        if (res.method == hwm::Method::Quadrature)
            warning = "singular parameterization (r ~ y + gamma): quadrature fallback";
    } else if (o.method == "quadrature") {
        res = hwm::oracle_price(r.state, r.market, r.terms, hwm::QuadratureSpec{});
    } else if (o.method == "mc") {
        const hwm::McEstimate est = hwm::mc_price(r.state, r.market, r.terms, r.sim);
        res.value = est.value;
        res.method = hwm::Method::MonteCarlo;
        res.std_error = est.std_error;
    } else {
        throw hwm::ValidationError("method", "expected continuous|discrete|quadrature|mc");
    }

    json outj;
    outj["method"] = hwm::to_string(res.method);
    outj["value"] = res.value;
    if (res.std_error) outj["std_error"] = *res.std_error;
    outj["epsilon"] = res.epsilon_used.value_or(0.0);
    if (!warning.empty()) outj["warning"] = warning;
    outj["params"] = params_json(o, "price");

    if (o.format == "csv") {
        std::string text = "method,value,std_error,epsilon\n";
        text += std::string(hwm::to_string(res.method)) + "," + full(res.value) + "," +
                (res.std_error ? full(*res.std_error) : "") + "," +
                full(res.epsilon_used.value_or(0.0)) + "\n";
        emit(o, text);
    } else {
        emit(o, outj.dump(2) + "\n");
    }
    return 0;
}

int cmd_sweep(const Options& o) {
    const auto ns = parse_n_list(o.n_list);
    json rows = json::array();
    std::string csv;
    {
        const Resolved r0 = resolve(o, ns.front());
        hwm::validate(r0.market, r0.terms, r0.state);
        csv += "# params " + params_json(o, "sweep").dump() + "\n";
    }
    csv += "n_observations,delta_t,epsilon,analytic_discrete,analytic_continuous,"
           "mc_value,mc_stderr\n";

    std::optional<double> cont;
    for (const auto n : ns) {
        const Resolved r = resolve(o, n);
        if (!cont) cont = hwm::continuous_price(r.state, r.market, r.terms).value;
        const auto disc = hwm::discrete_price(r.state, r.market, r.terms, r.kind);
        const auto mc = hwm::mc_price(r.state, r.market, r.terms, r.sim);
        const double dt = r.terms.delta_t();
        const double eps = disc.epsilon_used.value_or(0.0);

        char line[256];
        std::snprintf(line, sizeof line, "%u,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", n,
                      dt, eps, disc.value, *cont, mc.value, mc.std_error);
        csv += line;
        json row;
        row["n_observations"] = n;
        row["delta_t"] = dt;
        row["epsilon"] = eps;
        row["analytic_discrete"] = disc.value;
        row["analytic_continuous"] = *cont;
        row["mc_value"] = mc.value;
        row["mc_stderr"] = mc.std_error;
        rows.push_back(row);
    }

    if (o.format == "json") {
        json outj;
        outj["params"] = params_json(o, "sweep");
        outj["rows"] = rows;
        emit(o, outj.dump(2) + "\n");
    } else {
        emit(o, csv);
    }
    return 0;
}

int cmd_density(const Options& o) {
    const auto n = parse_n_single(o.n_list);
    const Resolved r = resolve(o, n);
    hwm::validate(r.market, r.terms, r.state);
    if (o.hsteps < 2) throw hwm::ValidationError("hsteps", "need at least 2 grid points");

    const auto p = hwm::MaxDistParams::from_market(r.market, r.terms.gamma, o.T);
    double hmax = o.hmax;
    if (hmax <= 0.0)
        hmax = std::max(0.0, p.mu * p.horizon_T) + 6.0 * p.v * std::sqrt(p.horizon_T);

    std::string csv = "# params " + params_json(o, "density").dump() + "\n";
    csv += "h,pdf,cdf\n";
    json rows = json::array();
    for (std::uint32_t i = 0; i < o.hsteps; ++i) {
        const double h = hmax * double(i) / double(o.hsteps - 1);
        const double pdf = hwm::max_pdf(h, p);
        const double cdf = hwm::max_cdf(h, p);
        csv += full(h) + "," + full(pdf) + "," + full(cdf) + "\n";
        if (o.format == "json") {
            json row;
            row["h"] = h;
            row["pdf"] = pdf;
            row["cdf"] = cdf;
            rows.push_back(row);
        }
    }
    if (o.format == "json") {
        json outj;
        outj["params"] = params_json(o, "density");
        outj["rows"] = rows;
        emit(o, outj.dump(2) + "\n");
    } else {
        emit(o, csv);
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"high-water-mark variable annuity pricer"};
    app.require_subcommand(1);

    Options op, os, od;
    auto* price = app.add_subcommand("price", "price one contract");
    auto* sweep = app.add_subcommand("sweep", "value vs number of observation dates (CSV)");
    auto* density = app.add_subcommand("density", "running-maximum pdf/cdf table (CSV)");

    Binder bp{price, {}}, bs{sweep, {}}, bd{density, {}};
    bind_common(bp, op, false);
    bp.add("method", op.method, "continuous|discrete|quadrature|mc");
    bind_common(bs, os, true);
    bind_common(bd, od, false);
    bd.add("hmax", od.hmax, "density grid upper end (0 = auto)");
    bd.add("hsteps", od.hsteps, "density grid points");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (const char* env = std::getenv("HWM_BUDGET")) {
            op.budget = os.budget = od.budget = std::strtoull(env, nullptr, 10);
        }
        if (price->parsed()) {
            bp.overlay_config(op.config);
            return cmd_price(op);
        }
        if (sweep->parsed()) {
            bs.overlay_config(os.config);
            return cmd_sweep(os);
        }
        bd.overlay_config(od.config);
        return cmd_density(od);
    } catch (const hwm::ValidationError& e) {
        for (const auto& i : e.issues()) std::cerr << i.field << ": " << i.message << "\n";
        return 2;
    } catch (const hwm::NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
