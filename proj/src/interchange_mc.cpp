#include "mfspin/interchange_mc.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <thread>

#include "mfspin/logspace.hpp"

namespace mfspin {

double CycleStats::x_mass(int k) const {
    long long n = 0, mass = 0;
    for (int len : cycle_lengths) {
        n += len;
        if (len >= k) mass += len;
    }
    return n == 0 ? 0.0 : static_cast<double>(mass) / static_cast<double>(n);
}

long long poisson_draw(double mean, SplitMixStream& stream) {
    if (mean < 0.0) throw std::domain_error("poisson_draw: negative mean");
    if (mean == 0.0) return 0;
    // split into segments small enough for the product method
    int segments = static_cast<int>(mean / 25.0) + 1;
    double seg_mean = mean / segments;
    double limit = std::exp(-seg_mean);
    long long total = 0;
    for (int s = 0; s < segments; ++s) {
        double p = 1.0;
        long long k = 0;
        do {
            ++k;
            p *= stream.next_unit();
        } while (p > limit);
        total += k - 1;
    }
    return total;
}

EventList sample_events(int n, double beta, SplitMixStream& stream, double rate) {
    if (n < 1) throw std::domain_error("sample_events: n must be >= 1");
    if (beta <= 0.0) throw std::domain_error("sample_events: beta must be > 0");
    if (rate <= 0.0) throw std::domain_error("sample_events: rate must be > 0");
    EventList out;
    out.horizon = beta / n;
    if (n == 1) return out;
    const double edges = 0.5 * static_cast<double>(n) * (n - 1);
    long long count = poisson_draw(rate * edges * out.horizon, stream);
    out.events.reserve(static_cast<std::size_t>(count));
    for (long long i = 0; i < count; ++i) {
        int x = static_cast<int>(stream.next_below(static_cast<std::uint64_t>(n))) + 1;
        int y;
        do {
            y = static_cast<int>(stream.next_below(static_cast<std::uint64_t>(n))) + 1;
        } while (y == x);
        if (x > y) std::swap(x, y);
        out.events.push_back(Event{x, y, out.horizon * stream.next_unit()});
    }
    std::sort(out.events.begin(), out.events.end(),
              [](const Event& a, const Event& b) { return a.t < b.t; });
    // ties are probability-zero; perturb deterministically if they do occur
    for (std::size_t i = 1; i < out.events.size(); ++i) {
        if (out.events[i].t <= out.events[i - 1].t)
            out.events[i].t = std::nextafter(out.events[i - 1].t, out.horizon * 2);
    }
    return out;
}

std::vector<int> compose(const EventList& events, int n) {
    std::vector<int> sigma(n);
    std::iota(sigma.begin(), sigma.end(), 0);
    for (const Event& e : events.events) {
        if (!(1 <= e.x && e.x < e.y && e.y <= n))
            throw std::domain_error("compose: event vertices out of range");
        std::swap(sigma[e.x - 1], sigma[e.y - 1]);
    }
    return sigma;
}

CycleStats cycle_stats(const std::vector<int>& sigma) {
    const int n = static_cast<int>(sigma.size());
    CycleStats out;
    std::vector<bool> seen(n, false);
    for (int i = 0; i < n; ++i) {
        if (seen[i]) continue;
        int len = 0, j = i;
        while (!seen[j]) {
            seen[j] = true;
            j = sigma[j];
            ++len;
        }
        out.cycle_lengths.push_back(len);
    }
    std::sort(out.cycle_lengths.begin(), out.cycle_lengths.end(), std::greater<int>());
    out.ell = static_cast<int>(out.cycle_lengths.size());
    return out;
}

namespace {

struct ChunkPlan {
    long long chunk_size;
    int chunks;
};

ChunkPlan plan_chunks(const McConfig& cfg) {
    if (cfg.sample_count < 1) throw std::domain_error("McConfig: sample_count must be >= 1");
    long long size = cfg.chunk_size;
    if (size <= 0) size = std::max<long long>(1, (cfg.sample_count + 63) / 64);
    int chunks = static_cast<int>((cfg.sample_count + size - 1) / size);
    return {size, chunks};
}

void check_parity(int n, int ell, std::size_t event_count) {
    // sign(sigma) = (-1)^{n - ell} must equal (-1)^{#events}
    if (((n - ell) & 1) != static_cast<int>(event_count & 1))
        throw std::logic_error("interchange_mc: permutation parity does not match event count");
}

// Runs fn(chunk_index, chunk_samples, stream) for every chunk; deterministic
// ordered reduction happens in the caller over the returned per-chunk slots.
template <typename ChunkFn>
void run_chunks(const McConfig& cfg, const ChunkPlan& plan, const ChunkFn& fn) {
    const int threads = std::max(1, cfg.threads);
    if (threads == 1) {
        for (int c = 0; c < plan.chunks; ++c) fn(c);
        return;
    }
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) {
        pool.emplace_back([&, t] {
            for (int c = t; c < plan.chunks; c += threads) fn(c);
        });
    }
    for (auto& th : pool) th.join();
}

McEstimate reduce_batches(const std::vector<double>& sums,
                          const std::vector<long long>& counts,
                          const std::vector<double>& squares) {
    McEstimate out;
    out.chunks = static_cast<int>(sums.size());
    long long total = 0;
    double grand = 0.0, grand_sq = 0.0;
    for (std::size_t c = 0; c < sums.size(); ++c) {
        total += counts[c];
        grand += sums[c];
        grand_sq += squares[c];
    }
    if (grand_sq > 0.0) out.effective_sample_size = grand * grand / grand_sq;
    out.samples = total;
    out.mean = grand / static_cast<double>(total);
    out.chunk_means.resize(sums.size());
    for (std::size_t c = 0; c < sums.size(); ++c)
        out.chunk_means[c] = sums[c] / static_cast<double>(counts[c]);
    if (out.chunks > 1) {
        // weighted batch-means variance of the overall mean
        double var = 0.0;
        for (std::size_t c = 0; c < sums.size(); ++c) {
            double w = static_cast<double>(counts[c]) / static_cast<double>(total);
            double d = out.chunk_means[c] - out.mean;
            var += w * w * d * d;
        }
        var *= static_cast<double>(out.chunks) / (out.chunks - 1.0);
        out.std_error = std::sqrt(var);
    }
    return out;
}

template <typename WeightFn>
McEstimate estimate_mean(const McConfig& cfg, const WeightFn& weight) {
    if (cfg.theta < 1.0) throw std::domain_error("McConfig: theta must be >= 1");
    const ChunkPlan plan = plan_chunks(cfg);
    std::vector<double> sums(plan.chunks, 0.0);
    std::vector<double> squares(plan.chunks, 0.0);
    std::vector<long long> counts(plan.chunks, 0);
    run_chunks(cfg, plan, [&](int c) {
        SplitMixStream stream(cfg.seed, static_cast<std::uint64_t>(c));
        long long lo = static_cast<long long>(c) * plan.chunk_size;
        long long hi = std::min(cfg.sample_count, lo + plan.chunk_size);
        double sum = 0.0, sum_sq = 0.0;
        for (long long s = lo; s < hi; ++s) {
            EventList ev = sample_events(cfg.n, cfg.beta, stream);
            auto sigma = compose(ev, cfg.n);
            auto stats = cycle_stats(sigma);
            check_parity(cfg.n, stats.ell, ev.events.size());
            double v = weight(stats);
            sum += v;
            sum_sq += v * v;
        }
        sums[c] = sum;
        squares[c] = sum_sq;
        counts[c] = hi - lo;
    });
    return reduce_batches(sums, counts, squares);
}

}  // namespace

McEstimate estimate_z(const McConfig& cfg) {
    const double log_theta = std::log(cfg.theta);
    return estimate_mean(cfg, [&](const CycleStats& stats) {
        return std::exp(stats.ell * log_theta);
    });
}

McEstimate estimate_z_field(const McConfig& cfg) {
    const double theta = cfg.theta;
    const double h = cfg.h;
    const double front = -(h / theta) * cfg.n;
    const double log_tm1 = theta > 1.0 ? std::log(theta - 1.0) : 0.0;
    return estimate_mean(cfg, [&](const CycleStats& stats) {
        double logw = front;
        for (int len : stats.cycle_lengths) {
            // log(e^{h len} + theta - 1), stable for large h len
            double a = h * len;
            if (theta == 1.0) {
                logw += a;
            } else {
                logw += a > log_tm1 ? a + std::log1p(std::exp(log_tm1 - a))
                                    : log_tm1 + std::log1p(std::exp(a - log_tm1));
            }
        }
        return std::exp(logw);
    });
}

TailEstimate weighted_tail(const McConfig& cfg, int k, double eps, double proposal_rate) {
    if (cfg.theta < 1.0) throw std::domain_error("weighted_tail: theta must be >= 1");
    if (eps < 0.0 || eps > 1.0) throw std::domain_error("weighted_tail: eps must be in [0,1]");
    double rate = proposal_rate > 0.0 ? proposal_rate : 1.0 / cfg.theta;
    const double log_theta = std::log(cfg.theta);
    const double log_rate = std::log(rate);
    const ChunkPlan plan = plan_chunks(cfg);

    struct ChunkAcc {
        double shift = 0.0;   // max log-weight seen in the chunk
        double wsum = 0.0;    // sum exp(lw - shift)
        double wsq = 0.0;     // sum exp(2(lw - shift))
        double hit = 0.0;     // sum exp(lw - shift) * indicator
        long long count = 0;
        bool any = false;
    };
    std::vector<ChunkAcc> acc(plan.chunks);

    run_chunks(cfg, plan, [&](int c) {
        SplitMixStream stream(cfg.seed, static_cast<std::uint64_t>(c));
        long long lo = static_cast<long long>(c) * plan.chunk_size;
        long long hi = std::min(cfg.sample_count, lo + plan.chunk_size);
        ChunkAcc a;
        for (long long s = lo; s < hi; ++s) {
            EventList ev = sample_events(cfg.n, cfg.beta, stream, rate);
            auto sigma = compose(ev, cfg.n);
            auto stats = cycle_stats(sigma);
            check_parity(cfg.n, stats.ell, ev.events.size());
            // weight theta^ell * dP/dP_rate, constants dropped (they cancel
            // in the self-normalized ratio)
            double lw = stats.ell * log_theta -
                        static_cast<double>(ev.events.size()) * log_rate;
            bool indicator = stats.x_mass(k) >= eps;
            if (!a.any) {
                a.shift = lw;
                a.any = true;
            } else if (lw > a.shift + 32.0) {
                double f = std::exp(a.shift - lw);
                a.wsum *= f;
                a.hit *= f;
                a.wsq *= f * f;
                a.shift = lw;
            }
            double w = std::exp(lw - a.shift);
            a.wsum += w;
            a.wsq += w * w;
            if (indicator) a.hit += w;
            ++a.count;
        }
        acc[c] = a;
    });

    // deterministic ordered fold with a global shift
    double global_shift = acc[0].shift;
    for (const auto& a : acc)
        if (a.any) global_shift = std::max(global_shift, a.shift);
    double wsum = 0.0, wsq = 0.0, hit = 0.0;
    std::vector<double> chunk_ratio_num(plan.chunks, 0.0), chunk_ratio_den(plan.chunks, 0.0);
    long long total = 0;
    for (int c = 0; c < plan.chunks; ++c) {
        const auto& a = acc[c];
        total += a.count;
        if (!a.any) continue;
        double f = std::exp(a.shift - global_shift);
        wsum += a.wsum * f;
        hit += a.hit * f;
        wsq += a.wsq * f * f;
        chunk_ratio_num[c] = a.hit * f;
        chunk_ratio_den[c] = a.wsum * f;
    }

    TailEstimate out;
    out.samples = total;
    out.proposal_rate = rate;
    out.estimate = wsum > 0.0 ? hit / wsum : 0.0;
    out.effective_sample_size = wsq > 0.0 ? wsum * wsum / wsq : 0.0;
    out.low_ess_warning = out.effective_sample_size < 100.0;
    // delta-method over chunk aggregates: R = A/B, var via per-chunk (A_c - R B_c)
    if (plan.chunks > 1 && wsum > 0.0) {
        double mean_resid = 0.0;
        for (int c = 0; c < plan.chunks; ++c)
            mean_resid += chunk_ratio_num[c] - out.estimate * chunk_ratio_den[c];
        mean_resid /= plan.chunks;
        double var = 0.0;
        for (int c = 0; c < plan.chunks; ++c) {
            double d = (chunk_ratio_num[c] - out.estimate * chunk_ratio_den[c]) - mean_resid;
            var += d * d;
        }
        var = var / (plan.chunks - 1.0) * plan.chunks;  // variance of the summed residual
        out.std_error = std::sqrt(var) / wsum;
    }
    return out;
}

}  // namespace mfspin
