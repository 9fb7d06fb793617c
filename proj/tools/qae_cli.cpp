// Command line front end: single runs, sweeps, polynomial dumps, the BHMT table and model fits.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "qae/baselines.hpp"
#include "qae/errors.hpp"
#include "qae/harness.hpp"
#include "qae/kernels.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitIO = 3;
constexpr int kExitConstruction = 4;

using namespace qae;
using namespace qae::harness;

int emit_sweep(const SweepConfig& cfg) {
    if (cfg.out.empty() || cfg.out == "-") {
        run_sweep(cfg, std::cout);
        return 0;
    }
    std::ofstream f(cfg.out);
    if (!f) {
        std::cerr << "cannot open " << cfg.out << " for writing\n";
        return kExitIO;
    }
    run_sweep(cfg, f);
    if (!f) {
        std::cerr << "write to " << cfg.out << " failed\n";
        return kExitIO;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Simulation lab for polynomial-sampling amplitude estimation"};
    app.require_subcommand(1);

    // run <algo>
    auto* run = app.add_subcommand("run", "Run one algorithm for a number of seeded runs, CSV to --out or stdout");
    std::string algo;
    RunParams rp;
    std::int64_t runs = 1;
    std::uint64_t seed = 0;
    std::string out_path;
    double known_kappa = 0.0;
    run->add_option("algo", algo, "chebae | unbiased | hybrid | repair-chebae | mlae | classical")->required();
    run->add_option("--a", rp.a, "true amplitude");
    run->add_option("--eps", rp.eps, "target accuracy");
    run->add_option("--delta", rp.delta, "failure probability");
    run->add_option("--beta", rp.beta, "hybrid depth/total trade-off in [0,1)");
    run->add_option("--eta", rp.eta, "unbiased final-toss line accuracy");
    run->add_option("--mu", rp.mu, "repair failure budget");
    run->add_option("--mode", rp.mode, "tracked | destructive (chebae), ideal | polynomial (unbiased, hybrid)");
    run->add_option("--K", rp.mlae_K, "MLAE schedule exponent");
    run->add_option("--runs", runs, "number of runs");
    run->add_option("--seed", seed, "base seed");
    run->add_option("--out", out_path, "output CSV path");
    run->add_flag("--shift-amplitude", rp.shift_amplitude, "simulate (1 + a)/2 instead of a");
    run->add_flag("--las-vegas", rp.las_vegas, "repeat basis measurements until psi is recovered");
    auto* kk = run->add_option("--known-kappa", known_kappa, "repair with a known kappa instead of the D-derived one");

    // sweep --config
    auto* sweep = app.add_subcommand("sweep", "Run a JSON-configured parameter sweep");
    std::string config_path;
    sweep->add_option("--config", config_path, "sweep configuration JSON")->required();

    // poly dump <family>
    auto* poly = app.add_subcommand("poly", "Polynomial utilities");
    auto* dump = poly->add_subcommand("dump", "Write x, P(x), |P(x)|^2 as CSV");
    poly->require_subcommand(1);
    DumpRequest dr;
    std::string dump_out;
    dump->add_option("family", dr.family, "chebyshev | monomial | J | K | line | erf | hybrid")->required();
    dump->add_option("--d", dr.d, "Chebyshev degree");
    dump->add_option("--kappa", dr.kappa, "repair kappa");
    dump->add_option("--eta", dr.eta, "accuracy parameter");
    dump->add_option("--k", dr.k, "erf steepness");
    dump->add_option("--tau", dr.tau, "erf tail parameter");
    dump->add_option("--a-mid", dr.a_mid, "hybrid centre");
    dump->add_option("--lo", dr.lo, "line lower end");
    dump->add_option("--hi", dr.hi, "line upper end");
    dump->add_option("--mode", dr.mode, "ideal | polynomial");
    dump->add_option("--points", dr.points, "number of sample points");
    dump->add_option("--out", dump_out, "output CSV path");

    // table bhmt
    auto* table = app.add_subcommand("table", "Closed-form tables");
    auto* bhmt = table->add_subcommand("bhmt", "Phase-estimation baseline query count");
    table->require_subcommand(1);
    std::vector<double> t_eps;
    double t_delta = 0.05;
    bhmt->add_option("--eps", t_eps, "accuracies (default: 1e-2 ... 1e-6)");
    bhmt->add_option("--delta", t_delta, "failure probability");

    // fit
    auto* fit = app.add_subcommand("fit", "Fit A/eps ln(B ln(1/eps)) and C/eps to a sweep CSV");
    std::string fit_in, fit_out;
    fit->add_option("--in", fit_in, "sweep CSV")->required();
    fit->add_option("--out", fit_out, "output JSON path (stdout if absent)");

    app.add_subcommand("info", "Print the active evaluation kernel");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    try {
        if (run->parsed()) {
            rp.algorithm = algo;
            if (kk->count() > 0) rp.known_kappa = known_kappa;
            validate(rp);
            SweepConfig cfg;
            cfg.algorithm = algo;
            cfg.a = {rp.a};
            cfg.eps = {rp.eps};
            cfg.delta = {rp.delta};
            cfg.beta = {rp.beta};
            cfg.eta = {rp.eta};
            cfg.mu = {rp.mu};
            cfg.mode = {rp.mode};
            cfg.mlae_K = rp.mlae_K;
            cfg.shift_amplitude = rp.shift_amplitude;
            cfg.las_vegas = rp.las_vegas;
            cfg.known_kappa = rp.known_kappa;
            cfg.runs = runs;
            cfg.seed = seed;
            cfg.out = out_path;
            cfg.workers = workers_from_env(1);
            if (runs < 1) throw ConfigError("--runs must be >= 1");
            return emit_sweep(cfg);
        }
        if (sweep->parsed()) {
            std::ifstream f(config_path);
            if (!f) {
                std::cerr << "cannot read " << config_path << "\n";
                return kExitIO;
            }
            std::stringstream ss;
            ss << f.rdbuf();
            return emit_sweep(parse_sweep_config(ss.str()));
        }
        if (dump->parsed()) {
            const auto pts = poly_dump(dr);
            std::ofstream file;
            if (!dump_out.empty()) {
                file.open(dump_out);
                if (!file) {
                    std::cerr << "cannot open " << dump_out << " for writing\n";
                    return kExitIO;
                }
            }
            std::ostream& os = dump_out.empty() ? std::cout : file;
            os << "x,P,p2\n";
            for (const auto& p : pts)
                os << format_double(p.x) << ',' << (p.value ? format_double(*p.value) : std::string()) << ','
                   << format_double(p.p2) << '\n';
            return os ? 0 : kExitIO;
        }
        if (bhmt->parsed()) {
            if (t_eps.empty()) {
                std::cout << "eps,delta,q_pi,q_pi_times_eps\n";
                for (double e : {1e-2, 1e-3, 1e-4, 1e-5, 1e-6}) {
                    const auto q = bhmt_queries(e, t_delta);
                    std::cout << format_double(e) << ',' << format_double(t_delta) << ',' << q << ','
                              << format_double(static_cast<double>(q) * e) << '\n';
                }
            } else if (t_eps.size() == 1) {
                std::cout << bhmt_queries(t_eps[0], t_delta) << '\n';
            } else {
                std::cout << "eps,delta,q_pi\n";
                for (double e : t_eps) std::cout << format_double(e) << ',' << format_double(t_delta) << ',' << bhmt_queries(e, t_delta) << '\n';
            }
            return 0;
        }
        if (fit->parsed()) {
            std::ifstream f(fit_in);
            if (!f) {
                std::cerr << "cannot read " << fit_in << "\n";
                return kExitIO;
            }
            const std::string js = fit_to_json(fit_models(read_runs_csv(f)));
            if (fit_out.empty()) {
                std::cout << js << '\n';
                return 0;
            }
            std::ofstream o(fit_out);
            o << js << '\n';
            return o ? 0 : kExitIO;
        }
        std::cout << "kernel: " << kernels::active_kernel() << '\n';
        return 0;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const DomainError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const InsufficientData& e) {
        std::cerr << "insufficient data: " << e.what() << '\n';
        return kExitConfig;
    } catch (const ConstructionFailed& e) {
        std::cerr << "construction failed: " << e.what() << '\n';
        return kExitConstruction;
    } catch (const std::ios_base::failure& e) {
        std::cerr << "i/o error: " << e.what() << '\n';
        return kExitIO;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
