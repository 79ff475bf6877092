// mfspin: batch front door for the exact, Monte Carlo and variational
// engines. Subcommands: exact-compare, critical, free-energy, mc, spin-poly,
// sweep, verify. Outputs are deterministic given the flags and seed.

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "mfspin/character_engine.hpp"
#include "mfspin/exact_quantum.hpp"
#include "mfspin/interchange_mc.hpp"
#include "mfspin/partitions.hpp"
#include "mfspin/variational.hpp"

using json = nlohmann::json;

namespace {

std::string fmt17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) out += sep;
        out += parts[i];
    }
    return out;
}

std::string simplex_str(const mfspin::SimplexPoint& x) {
    std::vector<std::string> c;
    for (double v : x.coords) c.push_back(fmt17(v));
    return join(c, " ");
}

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

std::string render_csv(const Table& t) {
    std::ostringstream out;
    out << join(t.header, ",") << "\n";
    for (const auto& row : t.rows) {
        std::vector<std::string> cells;
        for (const auto& cell : row) {
            if (cell.find(',') != std::string::npos || cell.find(' ') != std::string::npos)
                cells.push_back("\"" + cell + "\"");
            else
                cells.push_back(cell);
        }
        out << join(cells, ",") << "\n";
    }
    return out.str();
}

std::string render_json(const Table& t) {
    json arr = json::array();
    for (const auto& row : t.rows) {
        json obj = json::object();
        for (std::size_t i = 0; i < t.header.size(); ++i) obj[t.header[i]] = row[i];
        arr.push_back(obj);
    }
    return arr.dump(2) + "\n";
}

void write_output(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(out_path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open output file: " + out_path);
    f << text;
}

void emit_table(const Table& t, const std::string& format, const std::string& out_path) {
    write_output(format == "json" ? render_json(t) : render_csv(t), out_path);
}

// spin given as "1/2"-style fraction or integer; returns 2S
int parse_two_s(const std::string& s) {
    auto slash = s.find('/');
    if (slash == std::string::npos) return 2 * std::stoi(s);
    int num = std::stoi(s.substr(0, slash));
    int den = std::stoi(s.substr(slash + 1));
    if (den == 2) return num;
    if (den == 1) return 2 * num;
    throw CLI::ValidationError("--spin", "spin must be an integer or a half-integer like 3/2");
}

std::string spin_str(int two_s) {
    if (two_s % 2 == 0) return std::to_string(two_s / 2);
    return std::to_string(two_s) + "/2";
}

std::vector<double> expand_betas(const std::vector<double>& betas, const std::string& range) {
    std::vector<double> out = betas;
    if (!range.empty()) {
        double lo, hi, step;
        if (std::sscanf(range.c_str(), "%lf:%lf:%lf", &lo, &hi, &step) != 3 || step <= 0 || lo >= hi)
            throw CLI::ValidationError("--beta-range", "expected min:max:step with min < max, step > 0");
        for (double b = lo; b <= hi + 1e-12; b += step) out.push_back(b);
    }
    return out;
}

// ---------------------------------------------------------------------------

int cmd_exact_compare(int n_max, int theta, std::vector<double> betas, long long samples,
                      std::uint64_t seed, const std::string& format, const std::string& out) {
    if (std::pow(theta, n_max) > 4096.0) {
        std::cerr << "exact-compare: theta^n = " << std::pow(theta, n_max)
                  << " exceeds the 4096 guard; lower --n or --theta\n";
        return 2;
    }
    if (betas.empty()) betas = {0.5, 1.0, 2.0, 4.0};
    Table t;
    t.header = {"n", "beta", "trace_exp", "z_exact", "mc_estimate", "mc_stderr", "rel_diff"};
    bool ok = true;
    for (int n = 1; n <= n_max; ++n) {
        auto spectrum = mfspin::hamiltonian_spectrum(n, theta);
        mfspin::CharacterEngine engine(n, theta);
        for (double beta : betas) {
            double lt = mfspin::trace_exp_from_spectrum(spectrum, n, beta).log;
            double lz = engine.log_z(beta);
            mfspin::McConfig cfg;
            cfg.n = n;
            cfg.theta = theta;
            cfg.beta = beta;
            cfg.sample_count = samples;
            cfg.seed = seed;
            auto mc = mfspin::estimate_z(cfg);
            double rel = std::fabs(std::expm1(lt - lz));
            ok = ok && rel <= 1e-10;
            t.rows.push_back({std::to_string(n), fmt17(beta), fmt17(std::exp(lt)),
                              fmt17(std::exp(lz)), fmt17(mc.mean), fmt17(mc.std_error),
                              fmt17(rel)});
        }
    }
    emit_table(t, format, out);
    return ok ? 0 : 1;
}

int cmd_critical(const std::vector<int>& thetas, const std::string& format,
                 const std::string& out) {
    Table t;
    t.header = {"theta", "closed_form", "scanned", "abs_diff", "transition_order"};
    for (int theta : thetas) {
        double closed = mfspin::beta_critical(theta);
        double scanned = mfspin::beta_critical_scan(theta);
        t.rows.push_back({std::to_string(theta), fmt17(closed), fmt17(scanned),
                          fmt17(std::fabs(closed - scanned)),
                          theta == 2 ? "continuous" : "discontinuous"});
    }
    emit_table(t, format, out);
    return 0;
}

int cmd_free_energy(int theta, const std::vector<double>& betas, const std::vector<double>& fields,
                    const std::string& format, const std::string& out) {
    Table t;
    t.header = {"theta", "beta", "h", "z", "z_plus", "z_minus", "x_up", "x_down"};
    for (double beta : betas) {
        auto report = mfspin::maximize_phi(beta, theta);
        auto [zp, zm] = mfspin::z_derivatives(beta, theta);
        for (double h : fields) {
            double z = mfspin::z_value(beta, h, theta);
            t.rows.push_back({std::to_string(theta), fmt17(beta), fmt17(h), fmt17(z), fmt17(zp),
                              fmt17(zm), simplex_str(report.x_up), simplex_str(report.x_down)});
        }
    }
    emit_table(t, format, out);
    return 0;
}

int cmd_mc(const mfspin::McConfig& cfg, std::optional<int> tail_k, double tail_eps,
           bool timing, const std::string& out, const std::string& chunk_csv) {
    auto t0 = std::chrono::steady_clock::now();
    json doc;
    doc["config"] = {{"n", cfg.n},
                     {"theta", cfg.theta},
                     {"beta", cfg.beta},
                     {"h", cfg.h},
                     {"samples", cfg.sample_count},
                     {"seed", cfg.seed},
                     {"chunk_size", cfg.chunk_size},
                     {"threads", cfg.threads}};
    auto z = mfspin::estimate_z(cfg);
    doc["estimate_z"] = {{"mean", z.mean},
                         {"std_error", z.std_error},
                         {"samples", z.samples},
                         {"chunks", z.chunks},
                         {"effective_sample_size", z.effective_sample_size}};
    std::optional<mfspin::McEstimate> zf;
    if (cfg.h != 0.0) {
        zf = mfspin::estimate_z_field(cfg);
        doc["estimate_z_field"] = {{"mean", zf->mean},
                                   {"std_error", zf->std_error},
                                   {"samples", zf->samples},
                                   {"chunks", zf->chunks},
                                   {"effective_sample_size", zf->effective_sample_size}};
    }
    if (tail_k) {
        auto tail = mfspin::weighted_tail(cfg, *tail_k, tail_eps);
        doc["weighted_tail"] = {{"k", *tail_k},
                                {"eps", tail_eps},
                                {"estimate", tail.estimate},
                                {"std_error", tail.std_error},
                                {"effective_sample_size", tail.effective_sample_size},
                                {"low_ess_warning", tail.low_ess_warning},
                                {"proposal_rate", tail.proposal_rate}};
        if (tail.low_ess_warning)
            std::cerr << "mc: warning: effective sample size "
                      << tail.effective_sample_size << " < 100; estimate unreliable\n";
    }
    if (timing) {
        doc["wall_time_seconds"] =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }
    write_output(doc.dump(2) + "\n", out);
    if (!chunk_csv.empty()) {
        Table t;
        t.header = {"chunk", "mean_z"};
        for (std::size_t c = 0; c < z.chunk_means.size(); ++c)
            t.rows.push_back({std::to_string(c), fmt17(z.chunk_means[c])});
        write_output(render_csv(t), chunk_csv);
    }
    return 0;
}

int cmd_spin_poly(const std::vector<std::string>& spins, const std::string& format,
                  const std::string& out) {
    Table t;
    t.header = {"spin", "two_s", "coefficients", "max_deviation"};
    for (const auto& s : spins) {
        int two_s = parse_two_s(s);
        auto coeffs = mfspin::swap_poly_coefficients(two_s);
        std::vector<std::string> parts;
        for (const auto& a : coeffs.a) parts.push_back(a.to_string());
        double dev = mfspin::verify_swap_poly(two_s);
        t.rows.push_back({spin_str(two_s), std::to_string(two_s), join(parts, ", "), fmt17(dev)});
    }
    emit_table(t, format, out);
    return 0;
}

int cmd_sweep(const std::vector<int>& thetas, const std::vector<double>& betas,
              const std::vector<double>& fields, const std::string& format,
              const std::string& out) {
    Table t;
    t.header = {"theta", "beta", "h", "z", "z_plus", "z_minus", "beta_critical"};
    for (int theta : thetas) {
        double bc = mfspin::beta_critical(theta);
        for (double beta : betas) {
            auto [zp, zm] = mfspin::z_derivatives(beta, theta);
            for (double h : fields) {
                t.rows.push_back({std::to_string(theta), fmt17(beta), fmt17(h),
                                  fmt17(mfspin::z_value(beta, h, theta)), fmt17(zp), fmt17(zm),
                                  fmt17(bc)});
            }
        }
    }
    emit_table(t, format, out);
    return 0;
}

int cmd_g_rows(int n, int theta, double beta, const std::string& format,
               const std::string& out) {
    mfspin::CharacterEngine engine(n, theta);
    Table t;
    t.header = {"lambda", "log_g", "rearrangements"};
    for (const auto& row : engine.lambda_rows(beta)) {
        std::vector<std::string> parts;
        for (int v : row.lambda) parts.push_back(std::to_string(v));
        t.rows.push_back({join(parts, " "), fmt17(row.log_g),
                          fmt17(std::round(std::exp(row.log_rearrangements)))});
    }
    emit_table(t, format, out);
    return 0;
}

// ---------------------------------------------------------------------------
// verify: run every invariant suite, print a pass/fail matrix, never abort
// early. --inject-fault seeds a deliberate corruption to prove the checks
// have teeth.

struct SuiteResult {
    std::string name;
    bool passed;
    std::string detail;
};

int cmd_verify(std::uint64_t seed, const std::string& inject_fault) {
    std::vector<SuiteResult> results;
    auto run = [&](const std::string& name, auto&& fn) {
        try {
            std::string detail = fn();
            results.push_back({name, true, detail});
        } catch (const std::exception& e) {
            results.push_back({name, false, e.what()});
        }
    };
    auto fail = [](const std::string& msg) { throw std::runtime_error(msg); };

    run("partition-identities", [&]() -> std::string {
        using namespace mfspin;
        for (int n = 1; n <= 8; ++n) {
            BigInt sum(0);
            for (const auto& mu : enumerate_partitions(n, std::max(n, 2))) {
                BigInt d = dimension(mu).exact;
                sum += d * d;
            }
            if (!(sum == BigInt::factorial(n))) fail("sum d_mu^2 != n! at n=" + std::to_string(n));
        }
        return "sum d^2 = n! for n <= 8";
    });

    run("kostka-dominance", [&]() -> std::string {
        using namespace mfspin;
        int checked = 0;
        for (int n = 2; n <= 7; ++n) {
            auto ps = enumerate_partitions(n, 3);
            for (const auto& mu : ps) {
                for (const auto& la : ps) {
                    auto k = kostka(mu, la).exact;
                    if (!dominates(mu, la) && !k.is_zero())
                        fail("nonzero Kostka without dominance");
                    if (mu.parts == la.parts && !(k == BigInt(1)))
                        fail("K_{mu,mu} != 1");
                    ++checked;
                }
            }
        }
        return std::to_string(checked) + " pairs";
    });

    run("colouring-character", [&]() -> std::string {
        using namespace mfspin;
        SplitMixStream rng(seed, 101);
        for (int trial = 0; trial < 10; ++trial) {
            int n = 3 + static_cast<int>(rng.next_below(3));
            int theta = 2 + static_cast<int>(rng.next_below(2));
            int denom = 5 + static_cast<int>(rng.next_below(7));
            std::vector<int> cuts(theta, 0);
            int left = denom;
            for (int i = 0; i + 1 < theta; ++i) {
                cuts[i] = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(left) + 1));
                left -= cuts[i];
            }
            cuts[theta - 1] = left;
            std::vector<Rational> p;
            for (int c : cuts) p.emplace_back(BigInt(c), BigInt(denom));
            RationalClassFunction f;
            for (const auto& type : enumerate_partitions(n, n)) {
                std::vector<int> key;
                for (int v : type.parts)
                    if (v > 0) key.push_back(v);
                f[key] = Rational(BigInt(static_cast<long long>(rng.next_below(9))), BigInt(4));
            }
            if (!colouring_identity_gap_exact(n, theta, p, f).is_zero())
                fail("colouring identity gap nonzero");
        }
        // character sum must reproduce theta^n at beta=0; a corrupted Kostka
        // table must be caught here
        for (int n : {4, 6}) {
            for (int theta : {2, 3}) {
                CharacterEngine engine(n, theta);
                double got = engine.log_z(0.0);
                if (inject_fault == "kostka" && n == 6 && theta == 3) {
                    // recompute the pair sum with one Kostka value flipped
                    auto ps = enumerate_partitions(n, theta);
                    double bad = 0.0;
                    {
                        LogSum acc;
                        for (const auto& la : ps) {
                            LogSum g;
                            bool flipped = false;
                            for (const auto& mu : ps) {
                                if (!dominates(mu, la)) continue;
                                auto k = kostka(mu, la).exact.to_int64();
                                if (k == 0) continue;
                                if (!flipped) {
                                    k += 1;  // the injected corruption
                                    flipped = true;
                                }
                                g.add_log(std::log(static_cast<double>(k)) +
                                          dimension(mu).log_value);
                            }
                            acc.add_log(rearrangement_count(la).log_value + g.log());
                        }
                        bad = acc.log();
                    }
                    got = bad;
                }
                double want = n * std::log(static_cast<double>(theta));
                if (std::fabs(got - want) > 1e-10)
                    fail("character sum misses theta^n at beta=0 (n=" + std::to_string(n) +
                         ", theta=" + std::to_string(theta) + ")");
            }
        }
        return "10 rational draws + theta^n checks";
    });

    run("cross-engine", [&]() -> std::string {
        using namespace mfspin;
        int checked = 0;
        for (int theta : {2, 3, 4}) {
            for (int n = 2; std::pow(theta, n) <= 256.0; ++n) {
                auto spectrum = hamiltonian_spectrum(n, theta);
                CharacterEngine engine(n, theta);
                for (double beta : {0.5, 1.0, 2.0}) {
                    double lt = trace_exp_from_spectrum(spectrum, n, beta).log;
                    if (std::fabs(std::expm1(lt - engine.log_z(beta))) > 1e-10)
                        fail("trace_exp vs z_exact mismatch");
                    ++checked;
                }
            }
        }
        return std::to_string(checked) + " (n,theta,beta) points";
    });

    run("swap-poly", [&]() -> std::string {
        using namespace mfspin;
        auto half = swap_poly_coefficients(1);
        if (!(half.a[0] == Rational(BigInt(1), BigInt(2)) && half.a[1] == Rational(2)))
            fail("S=1/2 coefficients wrong");
        for (int two_s = 1; two_s <= 6; ++two_s) {
            if (verify_swap_poly(two_s) > 1e-9) fail("swap polynomial deviation > 1e-9");
        }
        return "2S <= 6 verified";
    });

    run("interchange-mc", [&]() -> std::string {
        using namespace mfspin;
        McConfig cfg;
        cfg.n = 5;
        cfg.theta = 2.0;
        cfg.beta = 1.0;
        cfg.sample_count = 20000;
        cfg.seed = seed;
        auto a = estimate_z(cfg);
        auto b = estimate_z(cfg);
        if (a.mean != b.mean) fail("estimate_z not deterministic");
        double exact = std::exp(CharacterEngine(5, 2).log_z(1.0));
        if (std::fabs(a.mean - exact) > 4.0 * a.std_error) fail("estimate_z off by > 4 sigma");
        return "deterministic, within 4 sigma of exact";
    });

    run("variational", [&]() -> std::string {
        using namespace mfspin;
        for (int theta : {2, 3}) {
            if (std::fabs(beta_critical_scan(theta) - beta_critical(theta)) > 1e-6)
                fail("beta_c scan mismatch");
        }
        auto sym = convexity_check(2.0, 2.0, 0.01, 0.99, 2000);
        if (sym.max_violation > 1e-8) fail("profile convexity violation");
        SplitMixStream rng(seed, 9);
        for (int trial = 0; trial < 1000; ++trial) {
            const int theta = 3;
            double eps = 0.5 / (theta * theta);
            std::vector<double> xv{0.5, 0.3, 0.2};
            double w = rng.next_unit();
            std::vector<double> zv(theta);
            for (int i = 0; i < theta; ++i) zv[i] = (1.0 - w) * xv[i] + (i == 0 ? w : 0.0);
            auto zp = dominance_neighbor(SimplexPoint::of(zv), SimplexPoint::of(xv), eps);
            double dist = 0.0;
            for (int i = 0; i < theta; ++i) dist = std::max(dist, std::fabs(zp[i] - zv[i]));
            if (dist > (theta - 1.0) * std::sqrt(eps) + 1e-12)
                fail("dominance neighbour distance bound violated");
        }
        return "critical scan, convexity, neighbour bound";
    });

    bool all = true;
    std::printf("%-24s %-6s %s\n", "suite", "status", "detail");
    for (const auto& r : results) {
        all = all && r.passed;
        std::printf("%-24s %-6s %s\n", r.name.c_str(), r.passed ? "PASS" : "FAIL",
                    r.detail.c_str());
    }
    std::printf("verify: %s\n", all ? "all suites passed" : "FAILURES PRESENT");
    return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"mean-field spin / interchange-process toolkit"};
    app.require_subcommand(1);
    app.fallthrough();  // global flags may follow the subcommand
    app.set_config("--config", "", "flat key=value config file; command line overrides");

    std::string format = "csv";
    std::string out_path;
    app.add_option("--format", format, "output format: csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--out", out_path, "output path (default stdout)");

    // exact-compare
    auto* ec = app.add_subcommand("exact-compare",
                                  "quantum trace vs character sum vs Monte Carlo");
    int ec_n = 4, ec_theta = 2;
    std::vector<double> ec_betas;
    long long ec_samples = 20000;
    std::uint64_t ec_seed = 1;
    ec->add_option("--n", ec_n, "largest n (rows cover 1..n)");
    ec->add_option("--theta", ec_theta, "number of local states");
    ec->add_option("--beta", ec_betas, "inverse temperatures (default 0.5 1 2 4)");
    ec->add_option("--samples", ec_samples, "Monte Carlo samples per row");
    ec->add_option("--seed", ec_seed, "Monte Carlo seed");

    // critical
    auto* cr = app.add_subcommand("critical", "critical coupling: closed form vs scan");
    std::vector<int> cr_thetas{2, 3, 4, 5};
    cr->add_option("--theta", cr_thetas, "theta values");

    // free-energy
    auto* fe = app.add_subcommand("free-energy", "limit free energy and magnetization");
    int fe_theta = 2;
    std::vector<double> fe_betas;
    std::string fe_range;
    std::vector<double> fe_fields{0.0};
    fe->add_option("--theta", fe_theta, "number of local states");
    fe->add_option("--beta", fe_betas, "inverse temperatures");
    fe->add_option("--beta-range", fe_range, "min:max:step sweep");
    fe->add_option("--field", fe_fields, "field strengths h");

    // mc
    auto* mc = app.add_subcommand("mc", "Monte Carlo estimates (JSON report)");
    mfspin::McConfig mc_cfg;
    mc_cfg.sample_count = 100000;
    int mc_tail_k = -1;
    double mc_tail_eps = 0.5;
    bool mc_timing = false;
    std::string mc_chunk_csv;
    mc->add_option("--n", mc_cfg.n, "number of vertices");
    mc->add_option("--theta", mc_cfg.theta, "cycle weight (real, >= 1)");
    mc->add_option("--beta", mc_cfg.beta, "inverse temperature");
    mc->add_option("--field", mc_cfg.h, "field strength h");
    mc->add_option("--samples", mc_cfg.sample_count, "number of samples");
    mc->add_option("--seed", mc_cfg.seed, "stream seed");
    mc->add_option("--chunk-size", mc_cfg.chunk_size, "samples per batch (default: 64 batches)");
    mc->add_option("--threads", mc_cfg.threads, "worker threads (result is thread-invariant)");
    mc->add_option("--tail-k", mc_tail_k, "also estimate P_theta(X_n(k) >= eps)");
    mc->add_option("--tail-eps", mc_tail_eps, "tail threshold eps");
    mc->add_flag("--timing", mc_timing, "include wall time (breaks byte-stability)");
    mc->add_option("--chunk-csv", mc_chunk_csv, "write per-chunk means CSV here");

    // spin-poly
    auto* sp = app.add_subcommand("spin-poly", "swap-operator polynomial coefficients");
    std::vector<std::string> sp_spins{"1/2", "1", "3/2", "2"};
    auto* sp_spin_opt = sp->add_option("--spin", sp_spins, "spins (integers or halves like 3/2)");
    std::vector<int> sp_thetas;
    sp->add_option("--theta", sp_thetas, "alternatively theta = 2S+1 values")
        ->excludes(sp_spin_opt);

    // sweep
    auto* sw = app.add_subcommand("sweep", "variational sweep over (theta, beta, h)");
    std::vector<int> sw_thetas{2, 3};
    std::vector<double> sw_betas;
    std::string sw_range;
    std::vector<double> sw_fields{0.0};
    int sw_n = 0;
    double sw_beta_single = 1.0;
    bool sw_per_lambda = false;
    sw->add_option("--theta", sw_thetas, "theta values");
    sw->add_option("--beta", sw_betas, "inverse temperatures");
    sw->add_option("--beta-range", sw_range, "min:max:step sweep");
    sw->add_option("--field", sw_fields, "field strengths");
    sw->add_flag("--per-lambda", sw_per_lambda,
                 "emit per-partition diagnostic rows (needs --n, single theta/beta)");
    sw->add_option("--n", sw_n, "system size for --per-lambda");

    // verify
    auto* vf = app.add_subcommand("verify", "run every invariant suite");
    std::uint64_t vf_seed = 20240101;
    std::string vf_fault;
    vf->add_option("--seed", vf_seed, "seed for the randomized suites");
    vf->add_option("--inject-fault", vf_fault,
                   "deliberately corrupt one value to prove the checks fire (kostka)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (ec->parsed())
            return cmd_exact_compare(ec_n, ec_theta, ec_betas, ec_samples, ec_seed, format,
                                     out_path);
        if (cr->parsed()) return cmd_critical(cr_thetas, format, out_path);
        if (fe->parsed()) {
            auto betas = expand_betas(fe_betas, fe_range);
            if (betas.empty()) betas = {1.0};
            return cmd_free_energy(fe_theta, betas, fe_fields, format, out_path);
        }
        if (mc->parsed()) {
            std::optional<int> k;
            if (mc_tail_k >= 0) k = mc_tail_k;
            return cmd_mc(mc_cfg, k, mc_tail_eps, mc_timing, out_path, mc_chunk_csv);
        }
        if (sp->parsed()) {
            std::vector<std::string> spins = sp_spins;
            if (!sp_thetas.empty()) {
                spins.clear();
                for (int theta : sp_thetas) spins.push_back(spin_str(theta - 1));
            }
            return cmd_spin_poly(spins, format, out_path);
        }
        if (sw->parsed()) {
            if (sw_per_lambda) {
                if (sw_n < 1 || sw_thetas.empty())
                    throw CLI::ValidationError("--per-lambda", "needs --n and --theta");
                double beta = sw_betas.empty() ? sw_beta_single : sw_betas.front();
                return cmd_g_rows(sw_n, sw_thetas.front(), beta, format, out_path);
            }
            auto betas = expand_betas(sw_betas, sw_range);
            if (betas.empty()) betas = {0.5, 1.0, 2.0, 4.0};
            return cmd_sweep(sw_thetas, betas, sw_fields, format, out_path);
        }
        if (vf->parsed()) return cmd_verify(vf_seed, vf_fault);
    } catch (const CLI::Error& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::cerr << "mfspin: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
