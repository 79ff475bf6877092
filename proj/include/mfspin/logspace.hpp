#pragma once

#include <cmath>
#include <limits>

namespace mfspin {

// A positive quantity carried as its natural log.
struct LogValue {
    double log = -std::numeric_limits<double>::infinity();

    static LogValue from_log(double l) { return LogValue{l}; }
    static LogValue from_linear(double v) { return LogValue{std::log(v)}; }
    double linear() const { return std::exp(log); }
    bool is_zero() const { return log == -std::numeric_limits<double>::infinity(); }
};

// Streaming log-sum-exp accumulator. Terms are rescaled against the running
// maximum; the scaled partial sum uses Kahan compensation so sums of ~1e6
// terms stay near 1 ulp relative.
class LogSum {
public:
    void add_log(double log_term) {
        if (log_term == -std::numeric_limits<double>::infinity()) return;
        if (count_ == 0) {
            shift_ = log_term;
            sum_ = 1.0;
            comp_ = 0.0;
            count_ = 1;
            return;
        }
        if (log_term > shift_ + 64.0) {
            // rebase so the scaled sum stays O(1)
            double factor = std::exp(shift_ - log_term);
            sum_ *= factor;
            comp_ *= factor;
            shift_ = log_term;
        }
        kahan_add(std::exp(log_term - shift_));
        ++count_;
    }

    void add_scaled(double log_scale, double positive_factor) {
        if (positive_factor <= 0.0) return;
        add_log(log_scale + std::log(positive_factor));
    }

    double log() const {
        if (count_ == 0) return -std::numeric_limits<double>::infinity();
        return shift_ + std::log(sum_ - comp_);
    }
    LogValue value() const { return LogValue{log()}; }
    long long count() const { return count_; }

private:
    double shift_ = 0.0;
    double sum_ = 0.0;
    double comp_ = 0.0;
    long long count_ = 0;

    void kahan_add(double x) {
        double y = x - comp_;
        double t = sum_ + y;
        comp_ = (t - sum_) - y;
        sum_ = t;
    }
};

inline double log_add(double a, double b) {
    if (a == -std::numeric_limits<double>::infinity()) return b;
    if (b == -std::numeric_limits<double>::infinity()) return a;
    double m = a > b ? a : b;
    return m + std::log1p(std::exp((a < b ? a : b) - m));
}

}  // namespace mfspin
