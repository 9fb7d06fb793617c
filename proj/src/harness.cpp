#include "qae/harness.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <condition_variable>
#include <cstdlib>
#include <istream>
#include <limits>
#include <map>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

#include "qae/baselines.hpp"
#include "qae/chebae.hpp"
#include "qae/errors.hpp"
#include "qae/hybrid.hpp"
#include "qae/poly.hpp"
#include "qae/repair.hpp"
#include "qae/unbiased.hpp"

namespace qae::harness {

using nlohmann::json;

namespace {

ChainMode chain_mode(const std::string& m, ChainMode fallback) {
    if (m.empty()) return fallback;
    if (m == "tracked") return ChainMode::Tracked;
    if (m == "destructive") return ChainMode::Destructive;
    throw ConfigError("mode must be tracked or destructive, got '" + m + "'");
}

PolyMode poly_mode(const std::string& m) {
    if (m.empty() || m == "ideal") return PolyMode::Ideal;
    if (m == "polynomial") return PolyMode::Polynomial;
    throw ConfigError("mode must be ideal or polynomial, got '" + m + "'");
}

bool open_unit(double v) { return v > 0.0 && v < 1.0; }

}  // namespace

void validate(const RunParams& p) {
    static const char* algos[] = {"chebae", "unbiased", "hybrid", "repair-chebae", "mlae", "classical"};
    if (std::find(std::begin(algos), std::end(algos), p.algorithm) == std::end(algos))
        throw ConfigError("unknown algorithm '" + p.algorithm + "'");
    if (!(p.a >= 0.0 && p.a <= 1.0)) throw ConfigError("a must lie in [0,1]");
    if (!open_unit(p.eps)) throw ConfigError("eps must lie in (0,1)");
    if (!open_unit(p.delta)) throw ConfigError("delta must lie in (0,1)");
    if (!(p.beta >= 0.0 && p.beta < 1.0)) throw ConfigError("beta must lie in [0,1)");
    if (!open_unit(p.eta)) throw ConfigError("eta must lie in (0,1)");
    if (!open_unit(p.mu)) throw ConfigError("mu must lie in (0,1)");
    if (p.mlae_K < 0 || p.mlae_K > 40) throw ConfigError("K must lie in [0,40]");
    if (p.known_kappa && !open_unit(*p.known_kappa)) throw ConfigError("known kappa must lie in (0,1)");
    if (p.algorithm == "chebae" || p.algorithm == "repair-chebae") chain_mode(p.mode, ChainMode::Tracked);
    if (p.algorithm == "unbiased" || p.algorithm == "hybrid") poly_mode(p.mode);
    if (p.algorithm == "repair-chebae" && chain_mode(p.mode, ChainMode::Tracked) != ChainMode::Tracked)
        throw ConfigError("repair-chebae needs tracked mode");
}

RunRow execute_run(const RunParams& p, std::uint64_t seed, std::uint64_t run_id) {
    validate(p);
    RunRow row;
    row.run_id = run_id;
    row.params = p;
    row.seed = seed;
    row.a_sim = p.shift_amplitude ? 0.5 * (1.0 + p.a) : p.a;
    const Amplitude amp(row.a_sim);
    Rng rng(seed);

    const auto t0 = std::chrono::steady_clock::now();
    if (p.algorithm == "chebae") {
        ChebAEConfig c;
        c.epsilon = p.eps;
        c.delta = p.delta;
        c.mode = chain_mode(p.mode, ChainMode::Destructive);
        c.seed = seed;
        row.record = chebae_estimate(amp, c, rng);
    } else if (p.algorithm == "repair-chebae") {
        ChebAEConfig c;
        c.epsilon = p.eps;
        c.delta = p.delta;
        c.mode = ChainMode::Tracked;
        c.seed = seed;
        RepairConfig r;
        r.mu = p.mu;
        r.las_vegas = p.las_vegas;
        r.known_kappa = p.known_kappa;
        row.record = nondestructive_chebae(amp, c, r, rng).record;
    } else if (p.algorithm == "unbiased") {
        UnbiasedConfig c;
        c.epsilon = p.eps;
        c.delta = p.delta;
        c.eta = p.eta;
        c.poly_mode = poly_mode(p.mode);
        c.seed = seed;
        row.record = unbiased_estimate(amp, c, rng);
    } else if (p.algorithm == "hybrid") {
        HybridConfig c;
        c.epsilon = p.eps;
        c.delta = p.delta;
        c.beta = p.beta;
        c.poly_mode = poly_mode(p.mode);
        c.seed = seed;
        row.record = hybrid_estimate(amp, c, rng);
    } else if (p.algorithm == "mlae") {
        row.record = mlae_estimate(amp, MlaeSchedule::exponential(p.mlae_K), p.delta, rng).record;
    } else {
        row.record = classical_mc(amp, p.eps, p.delta, rng);
    }
    row.wall_us = std::chrono::duration_cast<std::chrono::microseconds>(std::chrono::steady_clock::now() - t0).count();
    row.record.seed = seed;
    row.abs_err = std::fabs(row.record.a_hat - row.a_sim);
    row.record.success = row.abs_err <= p.eps;
    return row;
}

std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

std::string csv_header() {
    return "run_id,algorithm,a,eps,delta,beta,eta,mu,seed,a_hat,abs_err,success,q_psi,q_pi,d_max,d_total,tosses,"
           "final_state,wall_us";
}

std::string csv_row(const RunRow& r) {
    const QueryLedger& L = r.record.ledger;
    std::ostringstream s;
    s << r.run_id << ',' << r.params.algorithm << ',' << format_double(r.a_sim) << ',' << format_double(r.params.eps)
      << ',' << format_double(r.params.delta) << ',' << format_double(r.params.beta) << ','
      << format_double(r.params.eta) << ',' << format_double(r.params.mu) << ',' << r.seed << ','
      << format_double(r.record.a_hat) << ',' << format_double(r.abs_err) << ',' << (r.record.success ? 1 : 0) << ','
      << L.q_psi << ',' << L.q_pi << ',' << L.d_max << ',' << L.d_total << ',' << L.tosses << ','
      << (r.record.final_state ? std::string(to_string(*r.record.final_state)) : std::string("Reprepared")) << ','
      << r.wall_us;
    return s.str();
}

std::vector<RunParams> SweepConfig::cells() const {
    std::vector<RunParams> out;
    for (double av : a)
        for (double e : eps)
            for (double d : delta)
                for (double b : beta)
                    for (double h : eta)
                        for (double m : mu)
                            for (const std::string& md : mode) {
                                RunParams p;
                                p.algorithm = algorithm;
                                p.a = av;
                                p.eps = e;
                                p.delta = d;
                                p.beta = b;
                                p.eta = h;
                                p.mu = m;
                                p.mode = md;
                                p.mlae_K = mlae_K;
                                p.shift_amplitude = shift_amplitude;
                                p.las_vegas = las_vegas;
                                p.known_kappa = known_kappa;
                                out.push_back(p);
                            }
    return out;
}

SweepConfig parse_sweep_config(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    SweepConfig c;
    try {
        if (!j.contains("algorithm")) throw ConfigError("config: missing 'algorithm'");
        c.algorithm = j.at("algorithm").get<std::string>();
        const json g = j.value("grid", json::object());
        auto reals = [&](const char* key, std::vector<double>& dst) {
            if (!g.contains(key)) return;
            dst.clear();
            if (g[key].is_array())
                for (const auto& v : g[key]) dst.push_back(v.get<double>());
            else
                dst.push_back(g[key].get<double>());
            if (dst.empty()) throw ConfigError(std::string("config: empty grid axis '") + key + "'");
        };
        reals("a", c.a);
        reals("eps", c.eps);
        reals("delta", c.delta);
        reals("beta", c.beta);
        reals("eta", c.eta);
        reals("mu", c.mu);
        if (g.contains("mode")) {
            c.mode.clear();
            if (g["mode"].is_array())
                for (const auto& v : g["mode"]) c.mode.push_back(v.get<std::string>());
            else
                c.mode.push_back(g["mode"].get<std::string>());
        }
        c.runs = j.value("runs", c.runs);
        c.seed = j.value("seed", c.seed);
        c.out = j.value("out", c.out);
        c.workers = j.value("workers", c.workers);
        c.mlae_K = j.value("K", c.mlae_K);
        c.shift_amplitude = j.value("shift_amplitude", false);
        c.las_vegas = j.value("las_vegas", false);
        if (j.contains("known_kappa")) c.known_kappa = j["known_kappa"].get<double>();
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    if (c.runs < 1) throw ConfigError("config: runs must be >= 1");
    for (const RunParams& p : c.cells()) validate(p);
    return c;
}

int workers_from_env(int fallback) {
    if (const char* v = std::getenv("QAE_WORKERS")) {
        const int n = std::atoi(v);
        if (n > 0) return n;
    }
    return std::max(1, fallback);
}

void run_sweep(const SweepConfig& cfg, std::ostream& out) {
    const std::vector<RunParams> cells = cfg.cells();
    for (const RunParams& p : cells) validate(p);
    const std::uint64_t total = cells.size() * static_cast<std::uint64_t>(cfg.runs);
    const int workers = std::max(1, workers_from_env(cfg.workers));

    out << kCsvVersionLine << '\n' << csv_header() << '\n';
    out.flush();

    std::mutex mu;
    std::condition_variable cv;
    std::map<std::uint64_t, std::string> ready;
    std::exception_ptr failure;
    std::atomic<std::uint64_t> next{0};
    std::atomic<bool> abort{false};

    auto worker = [&] {
        for (;;) {
            const std::uint64_t idx = next.fetch_add(1);
            if (idx >= total || abort.load()) return;
            const std::uint64_t cell = idx / static_cast<std::uint64_t>(cfg.runs);
            const std::uint64_t run = idx % static_cast<std::uint64_t>(cfg.runs);
            std::string line;
            try {
                line = csv_row(execute_run(cells[cell], run_seed(cfg.seed, cell, run), idx));
            } catch (...) {
                std::lock_guard<std::mutex> lock(mu);
                if (!failure) failure = std::current_exception();
                abort = true;
                cv.notify_all();
                return;
            }
            std::lock_guard<std::mutex> lock(mu);
            ready.emplace(idx, std::move(line));
            cv.notify_all();
        }
    };

    std::vector<std::thread> pool;
    for (int i = 0; i < workers; ++i) pool.emplace_back(worker);

    // Reorder buffer: emit rows strictly by index.
    std::uint64_t emitted = 0;
    {
        std::unique_lock<std::mutex> lock(mu);
        while (emitted < total) {
            cv.wait(lock, [&] { return failure || ready.count(emitted) > 0; });
            if (failure) break;
            while (true) {
                auto it = ready.find(emitted);
                if (it == ready.end()) break;
                out << it->second << '\n';
                out.flush();
                ready.erase(it);
                ++emitted;
            }
            if (!out) {
                failure = std::make_exception_ptr(std::ios_base::failure("write to sweep output failed"));
                abort = true;
                break;
            }
        }
    }
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
}

std::vector<CsvRun> read_runs_csv(std::istream& in) {
    std::string line;
    std::vector<std::string> cols;
    std::vector<CsvRun> runs;
    auto split = [](const std::string& s) {
        std::vector<std::string> parts;
        std::stringstream ss(s);
        std::string cell;
        while (std::getline(ss, cell, ',')) parts.push_back(cell);
        return parts;
    };
    int i_alg = -1, i_eps = -1, i_qpi = -1, i_succ = -1;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        const auto parts = split(line);
        if (cols.empty()) {
            cols = parts;
            for (int i = 0; i < static_cast<int>(cols.size()); ++i) {
                if (cols[i] == "algorithm") i_alg = i;
                if (cols[i] == "eps") i_eps = i;
                if (cols[i] == "q_pi") i_qpi = i;
                if (cols[i] == "success") i_succ = i;
            }
            if (i_alg < 0 || i_eps < 0 || i_qpi < 0 || i_succ < 0) throw ConfigError("csv: missing required columns");
            continue;
        }
        if (parts.size() != cols.size()) throw ConfigError("csv: ragged row");
        CsvRun r;
        r.algorithm = parts[i_alg];
        r.eps = std::stod(parts[i_eps]);
        r.q_pi = std::stod(parts[i_qpi]);
        r.success = parts[i_succ] == "1";
        runs.push_back(r);
    }
    return runs;
}

FitResult fit_models(const std::vector<CsvRun>& runs, std::int64_t min_runs) {
    if (runs.empty()) throw InsufficientData("fit: no runs");
    for (const CsvRun& r : runs)
        if (r.algorithm != runs.front().algorithm) throw ConfigError("fit: csv mixes algorithms");

    std::map<double, std::vector<const CsvRun*>> by_eps;
    for (const CsvRun& r : runs) by_eps[r.eps].push_back(&r);
    FitResult f;
    for (const auto& [e, rs] : by_eps) {
        if (static_cast<std::int64_t>(rs.size()) < min_runs)
            throw InsufficientData("fit: eps cell " + format_double(e) + " has fewer than " + std::to_string(min_runs) + " runs");
        double sum = 0.0;
        std::int64_t fails = 0;
        for (const CsvRun* r : rs) {
            sum += r->q_pi;
            fails += r->success ? 0 : 1;
        }
        f.eps.push_back(e);
        f.counts.push_back(static_cast<std::int64_t>(rs.size()));
        f.mean_q_pi.push_back(sum / static_cast<double>(rs.size()));
        f.failure_rate.push_back(static_cast<double>(fails) / static_cast<double>(rs.size()));
    }

    auto model_ab = [](double A, double B, double e) {
        const double inner = B * std::log(1.0 / e);
        return inner > 1.0 ? A / e * std::log(inner) : std::numeric_limits<double>::quiet_NaN();
    };
    auto worst_ab = [&](double A, double B) {
        double w = 0.0;
        for (std::size_t i = 0; i < f.eps.size(); ++i) {
            const double m = model_ab(A, B, f.eps[i]);
            if (!(m > 0.0)) return std::numeric_limits<double>::infinity();
            w = std::max(w, std::fabs(m / f.mean_q_pi[i] - 1.0));
        }
        return w;
    };
    double best = std::numeric_limits<double>::infinity();
    for (int ia = 0; ia <= 550; ++ia) {
        const double A = 0.5 + 0.01 * ia;
        for (int ib = 0; ib <= 1100; ++ib) {
            const double B = 1.0 + 0.01 * ib;
            const double w = worst_ab(A, B);
            if (w < best) {
                best = w;
                f.A = A;
                f.B = B;
            }
        }
    }
    f.max_rel_AB = best;

    auto worst_c = [&](double C) {
        double w = 0.0;
        for (std::size_t i = 0; i < f.eps.size(); ++i) w = std::max(w, std::fabs(C / (f.mean_q_pi[i] * f.eps[i]) - 1.0));
        return w;
    };
    best = std::numeric_limits<double>::infinity();
    for (int ic = 1; ic <= 100000; ++ic) {
        const double C = 0.001 * ic;
        const double w = worst_c(C);
        if (w < best) {
            best = w;
            f.C = C;
        }
    }
    f.max_rel_C = best;

    for (const CsvRun& r : runs) {
        f.max_rel_AB_all = std::max(f.max_rel_AB_all, std::fabs(model_ab(f.A, f.B, r.eps) / r.q_pi - 1.0));
        f.max_rel_C_all = std::max(f.max_rel_C_all, std::fabs(f.C / (r.q_pi * r.eps) - 1.0));
    }
    return f;
}

std::string fit_to_json(const FitResult& f) {
    json j;
    j["A"] = f.A;
    j["B"] = f.B;
    j["max_rel_err_AB_means"] = f.max_rel_AB;
    j["max_rel_err_AB_runs"] = f.max_rel_AB_all;
    j["C"] = f.C;
    j["max_rel_err_C_means"] = f.max_rel_C;
    j["max_rel_err_C_runs"] = f.max_rel_C_all;
    json cells = json::array();
    for (std::size_t i = 0; i < f.eps.size(); ++i)
        cells.push_back({{"eps", f.eps[i]}, {"runs", f.counts[i]}, {"mean_q_pi", f.mean_q_pi[i]}, {"failure_rate", f.failure_rate[i]}});
    j["cells"] = cells;
    return j.dump(2);
}

std::vector<DumpPoint> poly_dump(const DumpRequest& req) {
    if (req.points < 2) throw ConfigError("poly dump: need at least 2 points");
    PolySpec p;
    double x0 = -1.0, x1 = 1.0;
    const PolyMode mode = poly_mode(req.mode);
    if (req.family == "chebyshev") {
        p = build_chebyshev(req.d);
    } else if (req.family == "monomial") {
        p = build_monomial();
    } else if (req.family == "J" || req.family == "K") {
        auto pair = build_repair_pair(req.kappa, req.eta);
        p = req.family == "J" ? pair.first : pair.second;
    } else if (req.family == "line") {
        p = build_line_poly(req.lo, req.hi, req.eta, mode);
    } else if (req.family == "erf") {
        p = build_erf_poly(req.k, req.eta);
        x0 = -2.0;
        x1 = 2.0;
    } else if (req.family == "hybrid") {
        p = build_hybrid_poly(req.tau, req.eta, req.k, req.a_mid, mode, true);
    } else {
        throw ConfigError("poly dump: unknown family '" + req.family + "'");
    }
    std::vector<DumpPoint> pts;
    for (int i = 0; i < req.points; ++i) {
        const double x = x0 + (x1 - x0) * i / (req.points - 1);
        DumpPoint d{x, std::nullopt, 0.0};
        if (p.has_value()) d.value = p.eval(x);
        d.p2 = p.p2(x);
        pts.push_back(d);
    }
    return pts;
}

}  // namespace qae::harness
