#pragma once

#include <cstdint>
#include <vector>

#include "mfspin/rng.hpp"

namespace mfspin {

// One Poisson transposition event: edge (x, y), 1 <= x < y <= n, at time t.
struct Event {
    int x;
    int y;
    double t;
};

// Realization of the edge Poisson processes on [0, beta/n], time-ordered.
struct EventList {
    std::vector<Event> events;
    double horizon = 0.0;
};

struct CycleStats {
    std::vector<int> cycle_lengths;  // sorted decreasing, singletons included
    int ell = 0;

    // fraction of vertices in cycles of size >= k
    double x_mass(int k) const;
};

struct McConfig {
    int n = 1;
    double theta = 2.0;  // need not be an integer for simulation
    double beta = 1.0;
    double h = 0.0;
    long long sample_count = 10000;
    std::uint64_t seed = 0;
    long long chunk_size = 0;  // 0: sample_count split into 64 batches
    int threads = 1;
};

struct McEstimate {
    double mean = 0.0;
    double std_error = 0.0;
    long long samples = 0;
    int chunks = 0;
    // (sum w)^2 / sum w^2 of the per-sample values; N for constant weights
    double effective_sample_size = 0.0;
    std::vector<double> chunk_means;
};

struct TailEstimate {
    double estimate = 0.0;
    double std_error = 0.0;
    double effective_sample_size = 0.0;
    bool low_ess_warning = false;
    long long samples = 0;
    double proposal_rate = 1.0;
};

// Rate-1 Poisson processes per edge, simulated as one Poisson total count
// with uniform edge and time placement (distributionally identical), then
// time-sorted. rate scales every edge clock (1.0 is the model's process).
EventList sample_events(int n, double beta, SplitMixStream& stream, double rate = 1.0);

// sigma(omega): events applied earliest first; an event (x,y) swaps the
// entries at positions x and y. Returns the permutation as a 0-based image
// array. Cycle statistics do not depend on the left/right convention.
std::vector<int> compose(const EventList& events, int n);

CycleStats cycle_stats(const std::vector<int>& sigma);

// Sample mean / batch-means standard error of theta^{ell(omega)} (= Z_n(beta)).
McEstimate estimate_z(const McConfig& cfg);

// Same for e^{-(h/theta) n} prod_cycles (e^{h|cycle|} + theta - 1) (= Z_n(beta,h)).
McEstimate estimate_z_field(const McConfig& cfg);

// Self-normalized importance-sampling estimate of
// P_theta(X_n(k) >= eps) = E[theta^ell 1{X>=eps}] / E[theta^ell].
// Events are drawn from a rate-tilted proposal (default rate 1/theta) with
// the exact likelihood ratio folded into the weights; sampling at rate 1
// collapses the effective sample size like e^{-c n} for theta > 1.
// proposal_rate = 0 selects the 1/theta default.
TailEstimate weighted_tail(const McConfig& cfg, int k, double eps, double proposal_rate = 0.0);

// Poisson(mean) via exact product-splitting (no normal approximation).
long long poisson_draw(double mean, SplitMixStream& stream);

}  // namespace mfspin
