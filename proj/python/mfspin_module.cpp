// Python bindings for the main operations: exact partition functions,
// quantum trace, Monte Carlo estimators, variational limit objects and the
// partition combinatorics underneath them.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <map>
#include <string>
#include <vector>

#include "mfspin/character_engine.hpp"
#include "mfspin/exact_quantum.hpp"
#include "mfspin/interchange_mc.hpp"
#include "mfspin/partitions.hpp"
#include "mfspin/variational.hpp"

namespace py = pybind11;
using namespace mfspin;

namespace {

py::int_ bigint_to_py(const BigInt& v) { return py::int_(py::str(v.to_string())); }

Partition partition_from(const std::vector<int>& parts) {
    return Partition::sorted_from(parts);
}

py::dict mc_estimate_dict(const McEstimate& e) {
    py::dict d;
    d["mean"] = e.mean;
    d["std_error"] = e.std_error;
    d["samples"] = e.samples;
    d["chunks"] = e.chunks;
    d["effective_sample_size"] = e.effective_sample_size;
    return d;
}

McConfig make_config(int n, double theta, double beta, double h, long long samples,
                     std::uint64_t seed, long long chunk_size, int threads) {
    McConfig cfg;
    cfg.n = n;
    cfg.theta = theta;
    cfg.beta = beta;
    cfg.h = h;
    cfg.sample_count = samples;
    cfg.seed = seed;
    cfg.chunk_size = chunk_size;
    cfg.threads = threads;
    return cfg;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "mean-field spin / cycle-weighted interchange process toolkit";

    // ---- partitions ----
    m.def(
        "enumerate_partitions",
        [](int n, int theta) {
            std::vector<std::vector<int>> out;
            for (const auto& p : enumerate_partitions(n, theta)) out.push_back(p.parts);
            return out;
        },
        py::arg("n"), py::arg("theta"),
        "All partitions of n into at most theta parts, reverse-lexicographic, zero-padded.");
    m.def(
        "kostka",
        [](const std::vector<int>& mu, const std::vector<int>& lam) {
            return bigint_to_py(kostka(partition_from(mu), partition_from(lam)).exact);
        },
        py::arg("mu"), py::arg("lam"));
    m.def(
        "dimension",
        [](const std::vector<int>& mu) { return bigint_to_py(dimension(partition_from(mu)).exact); },
        py::arg("mu"), "Dimension of the symmetric-group irreducible indexed by mu.");
    m.def(
        "multinomial",
        [](const std::vector<int>& lam) {
            return bigint_to_py(multinomial(partition_from(lam)).exact);
        },
        py::arg("lam"));
    m.def(
        "rearrangement_count",
        [](const std::vector<int>& lam) {
            return bigint_to_py(rearrangement_count(partition_from(lam)).exact);
        },
        py::arg("lam"));
    m.def(
        "dominates",
        [](const std::vector<int>& mu, const std::vector<int>& lam) {
            return dominates(partition_from(mu), partition_from(lam));
        },
        py::arg("mu"), py::arg("lam"));
    m.def(
        "energy_exponent",
        [](const std::vector<int>& mu, double beta) {
            return energy_exponent(partition_from(mu), beta);
        },
        py::arg("mu"), py::arg("beta"));

    // ---- character engine ----
    m.def(
        "log_z_exact", [](int n, int theta, double beta) { return z_exact(n, theta, beta).log; },
        py::arg("n"), py::arg("theta"), py::arg("beta"),
        "log of the exact partition function via the character sum.");
    m.def(
        "log_z_field_exact",
        [](int n, int theta, double beta, double h) { return z_field_exact(n, theta, beta, h).log; },
        py::arg("n"), py::arg("theta"), py::arg("beta"), py::arg("h"));
    m.def("free_energy_density",
          py::overload_cast<int, int, double, double>(&free_energy_density), py::arg("n"),
          py::arg("theta"), py::arg("beta"), py::arg("h") = 0.0);
    m.def(
        "log_g_weight",
        [](const std::vector<int>& lam, double beta) {
            return g_weight(partition_from(lam), beta).log;
        },
        py::arg("lam"), py::arg("beta"));
    m.def(
        "colouring_identity_gap",
        [](int n, int theta, const std::vector<double>& p,
           const std::map<std::vector<int>, double>& f) {
            ClassFunction cf(f.begin(), f.end());
            return colouring_identity_gap(n, theta, p, cf);
        },
        py::arg("n"), py::arg("theta"), py::arg("p"), py::arg("f"));

    // ---- exact quantum ----
    m.def(
        "log_trace_exp", [](int n, int theta, double beta) { return trace_exp(n, theta, beta).log; },
        py::arg("n"), py::arg("theta"), py::arg("beta"),
        "log tr exp(-(beta/n) H_n) from the full spectrum.");
    m.def("hamiltonian_spectrum", &hamiltonian_spectrum, py::arg("n"), py::arg("theta"));
    m.def(
        "swap_poly_coefficients",
        [](int two_s) {
            std::vector<std::string> out;
            for (const auto& a : swap_poly_coefficients(two_s).a) out.push_back(a.to_string());
            return out;
        },
        py::arg("two_s"), "Exact rational coefficients as strings, index k = degree.");
    m.def("verify_swap_poly", &verify_swap_poly, py::arg("two_s"));

    // ---- Monte Carlo ----
    m.def(
        "estimate_z",
        [](int n, double theta, double beta, long long samples, std::uint64_t seed,
           long long chunk_size, int threads) {
            return mc_estimate_dict(
                estimate_z(make_config(n, theta, beta, 0.0, samples, seed, chunk_size, threads)));
        },
        py::arg("n"), py::arg("theta"), py::arg("beta"), py::arg("samples") = 10000,
        py::arg("seed") = 0, py::arg("chunk_size") = 0, py::arg("threads") = 1);
    m.def(
        "estimate_z_field",
        [](int n, double theta, double beta, double h, long long samples, std::uint64_t seed,
           long long chunk_size, int threads) {
            return mc_estimate_dict(
                estimate_z_field(make_config(n, theta, beta, h, samples, seed, chunk_size, threads)));
        },
        py::arg("n"), py::arg("theta"), py::arg("beta"), py::arg("h"), py::arg("samples") = 10000,
        py::arg("seed") = 0, py::arg("chunk_size") = 0, py::arg("threads") = 1);
    m.def(
        "weighted_tail",
        [](int n, double theta, double beta, int k, double eps, long long samples,
           std::uint64_t seed, double proposal_rate) {
            auto t = weighted_tail(make_config(n, theta, beta, 0.0, samples, seed, 0, 1), k, eps,
                                   proposal_rate);
            py::dict d;
            d["estimate"] = t.estimate;
            d["std_error"] = t.std_error;
            d["effective_sample_size"] = t.effective_sample_size;
            d["low_ess_warning"] = t.low_ess_warning;
            d["proposal_rate"] = t.proposal_rate;
            return d;
        },
        py::arg("n"), py::arg("theta"), py::arg("beta"), py::arg("k"), py::arg("eps"),
        py::arg("samples") = 10000, py::arg("seed") = 0, py::arg("proposal_rate") = 0.0,
        "Self-normalized estimate of P_theta(X_n(k) >= eps).");

    // ---- variational ----
    m.def(
        "phi", [](const std::vector<double>& x, double beta) {
            return phi(SimplexPoint::sorted_of(x), beta);
        },
        py::arg("x"), py::arg("beta"));
    m.def(
        "maximize_phi",
        [](double beta, int theta) {
            auto r = maximize_phi(beta, theta);
            py::dict d;
            d["value"] = r.value;
            d["x_up"] = r.x_up.coords;
            d["x_down"] = r.x_down.coords;
            py::list cands;
            for (const auto& c : r.candidates) {
                py::dict cd;
                cd["r"] = c.r;
                cd["t"] = c.t;
                cd["x"] = c.x.coords;
                cd["value"] = c.value;
                cands.append(cd);
            }
            d["candidates"] = cands;
            return d;
        },
        py::arg("beta"), py::arg("theta"));
    m.def(
        "g_max",
        [](const std::vector<double>& x, double beta) {
            return g_max(SimplexPoint::sorted_of(x), beta);
        },
        py::arg("x"), py::arg("beta"),
        "max of phi_beta over the dominance polytope {y >= x}.");
    m.def("z", &z_value, py::arg("beta"), py::arg("h"), py::arg("theta"));
    m.def("z_derivatives", &z_derivatives, py::arg("beta"), py::arg("theta"));
    m.def("beta_critical", &beta_critical, py::arg("theta"));
    m.def("beta_critical_scan", &beta_critical_scan, py::arg("theta"));
    m.def("big_r", &big_r, py::arg("t"), py::arg("r"), py::arg("theta"));
    m.def("rho", &rho, py::arg("t"), py::arg("theta"));
    m.def(
        "dominance_neighbor",
        [](const std::vector<double>& z, const std::vector<double>& y, double eps) {
            return dominance_neighbor(SimplexPoint::sorted_of(z), SimplexPoint::sorted_of(y), eps)
                .coords;
        },
        py::arg("z"), py::arg("y"), py::arg("eps"));
}
