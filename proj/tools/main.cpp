// Command-line front end for the hybrid tree/finite-difference pricer.
//
// Modes: price (single hybrid price), mc (Monte-Carlo oracle), converge
// (self-convergence ladder), tree-dump (CIR lattice as CSV). All numeric
// output is CSV with 12 significant digits; diagnostics go to stderr only.
// Exit codes: 0 success, 2 configuration error, 3 I/O error.

#include "CLI11.hpp"

#include "heston/hybrid.hpp"
#include "heston/mc.hpp"
#include "heston/params.hpp"
#include "heston/payoff.hpp"
#include "heston/smoothing.hpp"

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitIo = 3;

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

struct RunConfig {
    std::string mode;
    heston::HestonParams params;
    std::string payoff_spec;
    double s0 = 0.0;
    double y0 = 0.0;
    double maturity = 0.0;
    int n_steps = 0;
    double dx = 0.0;
    double k_std = 6.0;
    std::int64_t paths = 100000;
    int mc_steps = 100;
    std::uint64_t seed = 1;
    bool antithetic = true;
    std::vector<int> n_list;
    double dx_scale = 1.0;
    int mollify_l = 0;
    int quad_points = 33;
    std::string output = "-";
};

heston::Payoff parse_payoff(const std::string& spec) {
    const auto fail = [&spec](const std::string& why) {
        throw std::invalid_argument("payoff '" + spec + "': " + why);
    };
    const auto num = [&fail](const std::string& s) {
        try {
            std::size_t pos = 0;
            const double v = std::stod(s, &pos);
            if (pos != s.size()) throw std::invalid_argument("");
            return v;
        } catch (...) {
            fail("'" + s + "' is not a number");
        }
        return 0.0;
    };

    const std::size_t colon = spec.find(':');
    const std::string kind = spec.substr(0, colon);
    const std::string args = colon == std::string::npos ? "" : spec.substr(colon + 1);

    if (kind == "asset") {
        if (!args.empty()) fail("takes no arguments");
        return heston::Payoff::identity_asset();
    }
    if (args.empty()) fail("missing arguments (expected e.g. put:100)");
    if (kind == "put") return heston::Payoff::put(num(args));
    if (kind == "call") return heston::Payoff::call(num(args));
    if (kind == "constant") return heston::Payoff::constant(num(args));
    if (kind == "digital") {
        const std::size_t comma = args.find(',');
        if (comma == std::string::npos) fail("expected digital:lo,hi (hi may be inf)");
        const std::string lo = args.substr(0, comma);
        const std::string hi = args.substr(comma + 1);
        const double c = num(lo);
        const double d = (hi == "inf") ? std::numeric_limits<double>::infinity() : num(hi);
        return heston::Payoff::digital(c, d);
    }
    if (kind == "table") {
        std::vector<std::pair<double, double>> pts;
        std::stringstream ss(args);
        std::string item;
        while (std::getline(ss, item, ',')) {
            const std::size_t eq = item.find('=');
            if (eq == std::string::npos) fail("table entries must look like s=value");
            pts.emplace_back(num(item.substr(0, eq)), num(item.substr(eq + 1)));
        }
        return heston::Payoff::table(std::move(pts));
    }
    fail("unknown kind (put, call, digital, constant, asset, table)");
    return heston::Payoff::constant(0.0);  // unreachable
}

void emit(const RunConfig& cfg, const std::string& body) {
    if (cfg.output == "-") {
        std::cout << body;
        if (!std::cout) {
            std::cerr << "error: failed writing to stdout\n";
            std::exit(kExitIo);
        }
        return;
    }
    std::ofstream out(cfg.output);
    if (!out) {
        std::cerr << "error: cannot open output file '" << cfg.output << "'\n";
        std::exit(kExitIo);
    }
    out << body;
    out.flush();
    if (!out) {
        std::cerr << "error: failed writing output file '" << cfg.output << "'\n";
        std::exit(kExitIo);
    }
}

void warn_regimes(const RunConfig& cfg) {
    if (!cfg.params.feller_satisfied())
        std::cerr << "warning: Feller condition violated (sigma^2 = "
                  << fmt(cfg.params.sigma * cfg.params.sigma)
                  << " > 2a = " << fmt(2.0 * cfg.params.a) << ")\n";
    if (cfg.params.b <= 0.0)
        std::cerr << "warning: b <= 0 (no mean reversion; moment bounds degrade)\n";
}

void require(bool ok, const std::string& message) {
    if (!ok) throw std::invalid_argument(message);
}

int run_price(const RunConfig& cfg) {
    const heston::Payoff payoff = parse_payoff(cfg.payoff_spec);
    require(cfg.s0 > 0.0, "s0 must be positive");
    require(cfg.y0 >= 0.0, "y0 must be nonnegative");

    heston::SchemeConfig scheme{cfg.n_steps, cfg.dx, cfg.k_std, cfg.maturity};
    scheme.validate();
    const double px = heston::price(payoff, cfg.params, cfg.y0, cfg.s0, scheme);

    std::string body = fmt(px) + "," + fmt(cfg.maturity / cfg.n_steps) + "," + fmt(cfg.dx) + "," +
                       std::to_string(cfg.n_steps) + "," +
                       (cfg.params.feller_satisfied() ? "1" : "0") + "\n";
    emit(cfg, body);
    return 0;
}

int run_mc(const RunConfig& cfg) {
    const heston::Payoff payoff = parse_payoff(cfg.payoff_spec);
    require(cfg.s0 > 0.0, "s0 must be positive");
    require(cfg.y0 >= 0.0, "y0 must be nonnegative");
    require(cfg.maturity > 0.0, "t must be positive");

    heston::McConfig mc{cfg.paths, cfg.mc_steps, cfg.seed, cfg.antithetic};
    mc.validate();
    const heston::McEstimate est =
        heston::mc_price(payoff, cfg.params, cfg.s0, cfg.y0, cfg.maturity, mc);

    std::string body = fmt(est.mean) + "," + fmt(est.std_error) + "," +
                       std::to_string(cfg.paths) + "," + std::to_string(cfg.seed) + "\n";
    emit(cfg, body);
    return 0;
}

int run_converge(const RunConfig& cfg) {
    const heston::Payoff payoff = parse_payoff(cfg.payoff_spec);
    require(cfg.s0 > 0.0, "s0 must be positive");
    require(cfg.y0 >= 0.0, "y0 must be nonnegative");
    require(cfg.maturity > 0.0, "t must be positive");
    require(cfg.n_list.size() >= 3, "n-list needs at least 3 resolutions");

    std::vector<heston::ConvergenceRow> rows;
    if (cfg.mollify_l >= 1) {
        const heston::MollifiedPayoff smooth =
            heston::mollify(payoff, cfg.params, cfg.mollify_l, cfg.quad_points);
        rows = heston::convergence_study(
            [smooth](double x, double y) { return smooth(x, y); }, cfg.params, cfg.y0, cfg.s0,
            cfg.maturity, cfg.n_list, cfg.dx_scale, cfg.k_std);
    } else {
        rows = heston::convergence_study(payoff, cfg.params, cfg.y0, cfg.s0, cfg.maturity,
                                         cfg.n_list, cfg.dx_scale, cfg.k_std);
    }

    std::string body;
    for (const auto& row : rows) {
        body += std::to_string(row.n_steps) + "," + fmt(row.h) + "," + fmt(row.dx) + "," +
                fmt(row.price) + "," + fmt(row.delta_to_finest) + ",";
        if (row.exact)
            body += "exact";
        else if (row.has_order)
            body += fmt(row.order);
        body += "\n";
    }
    emit(cfg, body);
    return 0;
}

int run_tree_dump(const RunConfig& cfg) {
    require(cfg.y0 >= 0.0, "y0 must be nonnegative");
    require(cfg.maturity > 0.0, "t must be positive");
    require(cfg.n_steps >= 1, "n must be >= 1");

    const heston::CIRTree tree =
        heston::CIRTree::build(cfg.y0, cfg.params, cfg.n_steps, cfg.maturity);

    std::string body;
    for (int n = 0; n <= tree.n_steps(); ++n) {
        for (int k = 0; k <= n; ++k) {
            body += std::to_string(n) + "," + std::to_string(k) + "," + fmt(tree.value(n, k));
            if (n < tree.n_steps()) {
                body += "," + std::to_string(tree.jump_up(n, k)) + "," +
                        std::to_string(tree.jump_down(n, k)) + "," + fmt(tree.prob_up(n, k));
            } else {
                body += ",,,";  // leaves have no jump data
            }
            body += "\n";
        }
    }
    emit(cfg, body);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "Hybrid tree/finite-difference pricer for the log-Heston PDE, with a "
        "Monte-Carlo oracle and a convergence harness.\n"
        "Set HESTON_THREADS to pin the worker count (results do not depend on it)."};
    app.get_formatter()->column_width(28);

    RunConfig cfg;
    app.add_option("--mode", cfg.mode, "price | mc | converge | tree-dump")
        ->required()
        ->check(CLI::IsMember({"price", "mc", "converge", "tree-dump"}));
    app.add_option("--payoff", cfg.payoff_spec,
                   "put:K, call:K, digital:c,d (d may be inf), constant:v, asset, "
                   "table:s=v,s=v,...");
    app.add_option("--s0", cfg.s0, "spot price");
    app.add_option("--y0", cfg.y0, "initial variance");
    app.add_option("--r", cfg.params.r, "risk-free rate");
    app.add_option("--delta", cfg.params.delta, "dividend yield");
    app.add_option("--a", cfg.params.a, "CIR drift constant");
    app.add_option("--b", cfg.params.b, "CIR mean-reversion speed");
    app.add_option("--sigma", cfg.params.sigma, "vol-of-vol");
    app.add_option("--rho", cfg.params.rho, "correlation");
    app.add_option("--t", cfg.maturity, "maturity");
    app.add_option("--n", cfg.n_steps, "time steps (price, tree-dump)");
    app.add_option("--dx", cfg.dx, "spatial step (price)");
    app.add_option("--kstd", cfg.k_std, "domain half-width multiplier")->capture_default_str();
    app.add_option("--paths", cfg.paths, "Monte-Carlo paths")->capture_default_str();
    app.add_option("--steps", cfg.mc_steps, "Monte-Carlo Euler steps")->capture_default_str();
    app.add_option("--seed", cfg.seed, "Monte-Carlo seed")->capture_default_str();
    app.add_flag("--antithetic,!--no-antithetic", cfg.antithetic,
                 "antithetic variates (default on)");
    app.add_option("--n-list", cfg.n_list, "time-step ladder (converge)")->delimiter(',');
    app.add_option("--dx-scale", cfg.dx_scale, "dx = dx-scale * h (converge)")
        ->capture_default_str();
    app.add_option("--mollify-l", cfg.mollify_l, "mollifier index, 0 = off (converge)")
        ->capture_default_str();
    app.add_option("--quad-points", cfg.quad_points, "mollifier quadrature points")
        ->capture_default_str();
    app.add_option("-o,--output", cfg.output, "output file, - for stdout")
        ->capture_default_str();
    app.set_config("--config", "", "key = value file; flags take precedence");
    app.allow_config_extras(false);

    if (argc <= 1) {
        std::cerr << app.help();
        return kExitConfig;
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        std::cout << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    }

    try {
        cfg.params.validate();
        warn_regimes(cfg);
        if (cfg.mode == "price") return run_price(cfg);
        if (cfg.mode == "mc") return run_mc(cfg);
        if (cfg.mode == "converge") return run_converge(cfg);
        if (cfg.mode == "tree-dump") return run_tree_dump(cfg);
        std::cerr << "error: unknown mode '" << cfg.mode << "'\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    }
}
