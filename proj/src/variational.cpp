#include "mfspin/variational.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "mfspin/partitions.hpp"
#include "mfspin/rng.hpp"

namespace mfspin {

namespace {

constexpr double kTieTol = 1e-10;

double xlogx(double x) { return x > 0.0 ? x * std::log(x) : 0.0; }

void validate_simplex(const std::vector<double>& c) {
    if (c.size() < 2) throw std::domain_error("SimplexPoint: need at least 2 coordinates");
    double sum = 0.0;
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (c[i] < -1e-12) throw std::domain_error("SimplexPoint: negative coordinate");
        if (i + 1 < c.size() && c[i] + 1e-12 < c[i + 1])
            throw std::domain_error("SimplexPoint: coordinates must be weakly decreasing");
        sum += c[i];
    }
    if (std::fabs(sum - 1.0) > 1e-9)
        throw std::domain_error("SimplexPoint: coordinates must sum to 1");
}

}  // namespace

SimplexPoint SimplexPoint::of(std::vector<double> c) {
    validate_simplex(c);
    SimplexPoint p;
    p.coords = std::move(c);
    return p;
}

SimplexPoint SimplexPoint::sorted_of(std::vector<double> c) {
    std::sort(c.begin(), c.end(), std::greater<double>());
    return of(std::move(c));
}

SimplexPoint SimplexPoint::uniform(int theta) {
    return of(std::vector<double>(theta, 1.0 / theta));
}

bool simplex_dominates(const SimplexPoint& a, const SimplexPoint& b, double tol) {
    if (a.theta() != b.theta()) throw std::domain_error("simplex_dominates: size mismatch");
    double pa = 0.0, pb = 0.0;
    for (int i = 0; i < a.theta(); ++i) {
        pa += a[i];
        pb += b[i];
        if (pa + tol < pb) return false;
    }
    return true;
}

double phi(const SimplexPoint& x, double beta) {
    double sq = 0.0, ent = 0.0;
    for (double v : x.coords) {
        sq += v * v;
        ent += xlogx(v);
    }
    return 0.5 * beta * (sq - 1.0) - ent;
}

namespace {

double phi_raw(const std::vector<double>& x, double beta) {
    double sq = 0.0, ent = 0.0;
    for (double v : x) {
        sq += v * v;
        ent += xlogx(v);
    }
    return 0.5 * beta * (sq - 1.0) - ent;
}

// two-level profile derivative: d/dt phi(x_r(t)) = r [beta (t - u) - log(t/u)],
// u = (1 - r t)/(theta - r). Root search uses the bracketed factor.
double profile_derivative(double t, int r, int theta, double beta) {
    double u = (1.0 - r * t) / (theta - r);
    return beta * (t - u) - std::log(t / u);
}

double profile_derivative_slope(double t, int r, int theta, double beta) {
    double u = (1.0 - r * t) / (theta - r);
    double du = -static_cast<double>(r) / (theta - r);
    return beta * (1.0 - du) - (1.0 / t - du / u);
}

SimplexPoint two_level_point(double t, int r, int theta) {
    std::vector<double> x(theta, (1.0 - r * t) / (theta - r));
    for (int i = 0; i < r; ++i) x[i] = t;
    return SimplexPoint::of(std::move(x));
}

double polish_root(double lo, double hi, int r, int theta, double beta) {
    double flo = profile_derivative(lo, r, theta, beta);
    for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (lo + hi);
        double fmid = profile_derivative(mid, r, theta, beta);
        if (fmid == 0.0) return mid;
        if ((fmid > 0.0) == (flo > 0.0)) {
            lo = mid;
            flo = fmid;
        } else {
            hi = mid;
        }
        if (hi - lo < 1e-16 * std::max(1.0, std::fabs(lo))) break;
    }
    double root = 0.5 * (lo + hi);
    for (int it = 0; it < 8; ++it) {
        double f = profile_derivative(root, r, theta, beta);
        if (std::fabs(f) <= 1e-13) break;
        double fp = profile_derivative_slope(root, r, theta, beta);
        if (fp == 0.0) break;
        double next = root - f / fp;
        if (next <= lo || next >= hi) break;
        root = next;
    }
    return root;
}

}  // namespace

std::vector<PhiCandidate> stationary_candidates(double beta, int theta) {
    if (beta <= 0.0) throw std::domain_error("stationary_candidates: beta must be > 0");
    if (theta < 2) throw std::domain_error("stationary_candidates: theta must be >= 2");
    std::vector<PhiCandidate> out;
    PhiCandidate uni;
    uni.r = 0;
    uni.t = 1.0 / theta;
    uni.x = SimplexPoint::uniform(theta);
    uni.value = phi(uni.x, beta);
    out.push_back(std::move(uni));

    constexpr int kGrid = 10000;
    for (int r = 1; r < theta; ++r) {
        const double lo = 1.0 / theta;
        const double hi = 1.0 / r;
        const double step = (hi - lo) / (kGrid + 1);
        double prev_t = lo + step;
        double prev_f = profile_derivative(prev_t, r, theta, beta);
        auto emit = [&](double root) {
            PhiCandidate c;
            c.r = r;
            c.t = root;
            c.x = two_level_point(root, r, theta);
            c.value = phi(c.x, beta);
            out.push_back(std::move(c));
        };
        for (int i = 2; i <= kGrid; ++i) {
            double t = lo + i * step;
            double f = profile_derivative(t, r, theta, beta);
            if (f == 0.0 || (f > 0.0) != (prev_f > 0.0)) {
                emit(f == 0.0 ? t : polish_root(prev_t, t, r, theta, beta));
            }
            prev_t = t;
            prev_f = f;
        }
        if (prev_f > 0.0) {
            // the profile is still rising at the last grid point; the root sits
            // between it and 1/r (large beta pushes it exponentially close)
            double edge = (1.0 - (theta - r) * 1e-290) / r;
            edge = std::min(edge, std::nextafter(hi, lo));
            if (edge > prev_t) {
                double f_edge = profile_derivative(edge, r, theta, beta);
                emit(f_edge < 0.0 ? polish_root(prev_t, edge, r, theta, beta) : edge);
            }
        }
    }
    return out;
}

MaximizerReport maximize_phi(double beta, int theta) {
    MaximizerReport report;
    report.candidates = stationary_candidates(beta, theta);
    double best = -std::numeric_limits<double>::infinity();
    for (const auto& c : report.candidates) best = std::max(best, c.value);
    report.value = best;
    const PhiCandidate* up = nullptr;
    const PhiCandidate* down = nullptr;
    for (const auto& c : report.candidates) {
        if (c.value < best - kTieTol) continue;
        if (!up || c.x[0] > up->x[0]) up = &c;
        if (!down || c.x[theta - 1] < down->x[theta - 1]) down = &c;
    }
    report.x_up = up->x;
    report.x_down = down->x;
    return report;
}

SimplexPoint project_to_dominance(std::vector<double> v, const SimplexPoint& floor_point) {
    const int theta = floor_point.theta();
    if (static_cast<int>(v.size()) != theta)
        throw std::domain_error("project_to_dominance: size mismatch");
    for (double& x : v) {
        if (!std::isfinite(x)) x = 0.0;
    }
    std::sort(v.begin(), v.end(), std::greater<double>());
    // plain simplex projection of the sorted vector (largest support whose
    // water level keeps every kept coordinate positive)
    std::vector<double> cums(theta);
    double cum = 0.0;
    for (int i = 0; i < theta; ++i) {
        cum += v[i];
        cums[i] = cum;
    }
    int support = 1;
    double tau = cums[0] - 1.0;
    for (int i = theta - 1; i >= 0; --i) {
        double cand = (cums[i] - 1.0) / (i + 1);
        if (v[i] > cand) {
            support = i + 1;
            tau = cand;
            break;
        }
    }
    for (int i = 0; i < theta; ++i) v[i] = i < support ? std::max(0.0, v[i] - tau) : 0.0;
    // partial-sum clipping against the floor, then re-sorting the increments
    double pf = 0.0;
    std::vector<double> s(theta, 0.0);
    double run = 0.0;
    for (int i = 0; i < theta; ++i) {
        run += v[i];
        pf += floor_point[i];
        s[i] = std::max(run, pf);
        if (i > 0 && s[i] < s[i - 1]) s[i] = s[i - 1];
    }
    s[theta - 1] = 1.0;
    std::vector<double> d(theta);
    d[0] = s[0];
    for (int i = 1; i < theta; ++i) d[i] = s[i] - s[i - 1];
    std::sort(d.begin(), d.end(), std::greater<double>());
    for (double& x : d) x = std::max(0.0, x);
    // renormalize the last crumbs of rounding
    double sum = std::accumulate(d.begin(), d.end(), 0.0);
    if (sum > 0.0)
        for (double& x : d) x /= sum;
    return SimplexPoint::of(std::move(d));
}

namespace {

// feasibility in the dominance polytope {y in Delta : y >= floor}
bool feasible_in(const std::vector<double>& y, const SimplexPoint& floor_point) {
    double prefix = 0.0, floor_prefix = 0.0;
    for (int i = 0; i < floor_point.theta(); ++i) {
        if (y[i] < -1e-15) return false;
        if (i + 1 < floor_point.theta() && y[i] + 1e-15 < y[i + 1]) return false;
        prefix += y[i];
        floor_prefix += floor_point[i];
        if (prefix + 1e-12 < floor_prefix) return false;
    }
    return true;
}

// pairwise mass-transfer polish; glides along active polytope faces where a
// projected gradient step stalls
double pairwise_polish(std::vector<double>& x, double fx,
                       const std::function<double(const std::vector<double>&)>& objective,
                       const SimplexPoint& floor_point) {
    const int theta = floor_point.theta();
    for (double step = 0.25; step >= 1e-12; step *= 0.5) {
        bool improved = true;
        int rounds = 0;
        while (improved && rounds++ < 200) {
            improved = false;
            for (int i = 0; i < theta; ++i) {
                for (int j = 0; j < theta; ++j) {
                    if (i == j) continue;
                    std::vector<double> trial = x;
                    trial[i] += step;
                    trial[j] -= step;
                    if (trial[j] < 0.0) continue;
                    std::sort(trial.begin(), trial.end(), std::greater<double>());
                    if (!feasible_in(trial, floor_point)) continue;
                    double ft = objective(trial);
                    if (ft > fx) {
                        x = trial;
                        fx = ft;
                        improved = true;
                    }
                }
            }
        }
    }
    return fx;
}

// multi-start projected ascent of a smooth objective over {y >= floor}
double projected_ascent(const std::function<double(const std::vector<double>&)>& objective,
                        const std::function<void(const std::vector<double>&, std::vector<double>&)>& gradient,
                        const SimplexPoint& floor_point,
                        const std::vector<SimplexPoint>& starts) {
    const int theta = floor_point.theta();
    double best = -std::numeric_limits<double>::infinity();
    std::vector<double> grad(theta);
    for (const auto& start : starts) {
        std::vector<double> x = start.coords;
        double fx = objective(x);
        double step = 0.25;
        for (int iter = 0; iter < 600 && step >= 1e-12; ++iter) {
            gradient(x, grad);
            std::vector<double> trial(theta);
            bool improved = false;
            while (step >= 1e-12) {
                for (int i = 0; i < theta; ++i) trial[i] = x[i] + step * grad[i];
                SimplexPoint proj = project_to_dominance(trial, floor_point);
                double ft = objective(proj.coords);
                if (ft > fx + 1e-15) {
                    x = proj.coords;
                    fx = ft;
                    improved = true;
                    step *= 1.6;
                    break;
                }
                step *= 0.5;
            }
            if (!improved) break;
        }
        fx = pairwise_polish(x, fx, objective, floor_point);
        best = std::max(best, fx);
    }
    return best;
}

std::vector<SimplexPoint> ascent_starts(const SimplexPoint& floor_point,
                                        const MaximizerReport& report,
                                        const std::function<double(const std::vector<double>&)>& objective) {
    const int theta = floor_point.theta();
    std::vector<SimplexPoint> starts;
    starts.push_back(floor_point);
    {
        // coarse feasible-grid scan; the best cells seed the ascent so it
        // cannot strand on a polytope face far from the optimum
        const int mesh = 24;
        std::vector<std::pair<double, SimplexPoint>> scored;
        for_each_partition(mesh, theta, [&](const std::vector<int>& cell) {
            std::vector<double> y(theta);
            double prefix = 0.0, floor_prefix = 0.0;
            for (int i = 0; i < theta; ++i) {
                y[i] = static_cast<double>(cell[i]) / mesh;
                prefix += y[i];
                floor_prefix += floor_point[i];
                if (prefix + 1e-12 < floor_prefix) return;
            }
            scored.emplace_back(objective(y), SimplexPoint::of(y));
        });
        std::sort(scored.begin(), scored.end(),
                  [](const auto& a, const auto& b) { return a.first > b.first; });
        for (std::size_t i = 0; i < scored.size() && i < 6; ++i)
            starts.push_back(scored[i].second);
    }
    {
        std::vector<double> e1(theta, 0.0);
        e1[0] = 1.0;
        starts.push_back(SimplexPoint::of(std::move(e1)));
    }
    // block-uniform corners of the polytope: mass X_j spread over the first j slots
    for (int j = 1; j <= theta; ++j) {
        double pf = 0.0;
        for (int i = 0; i < j; ++i) pf += floor_point[i];
        std::vector<double> v(theta, 0.0);
        for (int i = 0; i < j; ++i) v[i] = pf / j;
        double rest = (1.0 - pf) / theta;
        for (int i = j; i < theta; ++i) v[i] = rest;
        starts.push_back(project_to_dominance(v, floor_point));
    }
    for (const auto& c : report.candidates)
        starts.push_back(project_to_dominance(c.x.coords, floor_point));
    // perturbed projections of x_up plus seeded random fill to 50 starts
    SplitMixStream rng(0x5eedULL, 17);
    while (starts.size() < 50) {
        std::vector<double> v(theta);
        double sum = 0.0;
        for (int i = 0; i < theta; ++i) {
            v[i] = -std::log(rng.next_unit());
            sum += v[i];
        }
        for (int i = 0; i < theta; ++i)
            v[i] = 0.5 * v[i] / sum + 0.5 * report.x_up[std::min(i, report.x_up.theta() - 1)];
        starts.push_back(project_to_dominance(v, floor_point));
    }
    return starts;
}

}  // namespace

double g_max(const SimplexPoint& x, double beta) {
    validate_simplex(x.coords);
    MaximizerReport report = maximize_phi(beta, x.theta());
    if (simplex_dominates(report.x_up, x)) return report.value;
    auto objective = [beta](const std::vector<double>& y) { return phi_raw(y, beta); };
    auto gradient = [beta](const std::vector<double>& y, std::vector<double>& g) {
        for (std::size_t i = 0; i < y.size(); ++i)
            g[i] = beta * y[i] - std::log(std::max(y[i], 1e-300)) - 1.0;
    };
    return projected_ascent(objective, gradient, x, ascent_starts(x, report, objective));
}

double z_value(double beta, double h, int theta) {
    MaximizerReport report = maximize_phi(beta, theta);
    if (h == 0.0) return report.value;
    // the g-composition collapses to a direct tilted maximum over the simplex:
    // for h >= 0, max_x [h(x_1 - 1/theta) + g(x)] = max_y [h(y_1 - 1/theta) + phi(y)]
    const bool up = h > 0.0;
    const int slot = up ? 0 : theta - 1;
    auto objective = [&](const std::vector<double>& y) {
        return h * (y[slot] - 1.0 / theta) + phi_raw(y, beta);
    };
    auto gradient = [&](const std::vector<double>& y, std::vector<double>& g) {
        for (std::size_t i = 0; i < y.size(); ++i)
            g[i] = beta * y[i] - std::log(std::max(y[i], 1e-300)) - 1.0;
        g[slot] += h;
    };
    SimplexPoint floor_point = SimplexPoint::uniform(theta);
    double best = projected_ascent(objective, gradient, floor_point,
                                   ascent_starts(floor_point, report, objective));
    for (const auto& c : report.candidates) best = std::max(best, objective(c.x.coords));
    return best;
}

std::pair<double, double> z_derivatives(double beta, int theta) {
    MaximizerReport report = maximize_phi(beta, theta);
    return {report.x_up[0] - 1.0 / theta, report.x_down[theta - 1] - 1.0 / theta};
}

double beta_critical(int theta) {
    if (theta < 2) throw std::domain_error("beta_critical: theta must be >= 2");
    if (theta == 2) return 2.0;
    return 2.0 * (theta - 1.0) / (theta - 2.0) * std::log(theta - 1.0);
}

double beta_critical_scan(int theta) {
    auto ordered = [theta](double beta) {
        return z_derivatives(beta, theta).first > 1e-8;
    };
    double lo = 0.05, hi = 2.0 * beta_critical(theta) + 1.0;
    if (ordered(lo) || !ordered(hi))
        throw std::logic_error("beta_critical_scan: bracket does not straddle the transition");
    for (int it = 0; it < 60; ++it) {
        double mid = 0.5 * (lo + hi);
        (ordered(mid) ? hi : lo) = mid;
    }
    return 0.5 * (lo + hi);
}

namespace {

// N(t) = r t log t + (1 - r t) log((1-rt)/(theta-r)) + log theta and its
// derivatives; R(t) = (2 theta (theta-r)/r) N(t)/(theta t - 1)^2.
double big_r_numerator(double t, int r, int theta) {
    double u = 1.0 - r * t;
    return r * t * std::log(t) + u * std::log(u / (theta - r)) + std::log(static_cast<double>(theta));
}

double big_r_series(double t, int r, int theta) {
    const double c = 1.0 / theta;
    const double d = t - c;
    auto nd = [&](int order) {
        // N^{(order)} at c, order >= 2
        double u = 1.0 - r * c;
        double rr = r;
        switch (order) {
            case 2: return rr * (1.0 / c + rr / u);
            case 3: return rr * (-1.0 / (c * c) + rr * rr / (u * u));
            case 4: return rr * (2.0 / (c * c * c) + 2.0 * rr * rr * rr / (u * u * u));
            case 5: return rr * (-6.0 / (c * c * c * c) + 6.0 * rr * rr * rr * rr / (u * u * u * u));
            default: throw std::logic_error("big_r_series: order");
        }
    };
    // N(t)/(t-c)^2 = N''/2 + N'''d/6 + N''''d^2/24 + N^(5)d^3/120
    double series = nd(2) / 2.0 + nd(3) * d / 6.0 + nd(4) * d * d / 24.0 + nd(5) * d * d * d / 120.0;
    return 2.0 * (theta - r) / (static_cast<double>(r) * theta) * series;
}

}  // namespace

double big_r(double t, int r, int theta) {
    if (theta < 2 || r < 1 || r >= theta) throw std::domain_error("big_r: need 1 <= r < theta");
    if (!(t > 0.0 && t < 1.0 / r)) throw std::domain_error("big_r: t out of (0, 1/r)");
    if (std::fabs(theta * t - 1.0) < 1e-4 * theta) return big_r_series(t, r, theta);
    double denom = theta * t - 1.0;
    return (2.0 * theta * (theta - r) / r) * big_r_numerator(t, r, theta) / (denom * denom);
}

double rho(double t, int theta) {
    if (!(t > 0.0 && t <= 0.5)) throw std::domain_error("rho: t out of (0, 1/2]");
    double u = 0.5 - t;
    if (u < 1e-5) {
        // log((1-t)/t)/(1-2t) = atanh(2u)/u = 2 (1 + (2u)^2/3 + (2u)^4/5 + ...)
        double w = 2.0 * u;
        double ratio = 2.0 * (1.0 + w * w / 3.0 + w * w * w * w / 5.0);
        return 2.0 * theta * t * (1.0 - t) * ratio;
    }
    return 2.0 * theta * t * (1.0 - t) / (1.0 - 2.0 * t) * std::log((1.0 - t) / t);
}

ConvexityReport convexity_check(double p, double q, double lo, double hi, int grid_points) {
    if (std::fabs(1.0 / p + 1.0 / q - 1.0) > 1e-12)
        throw std::domain_error("convexity_check: need 1/p + 1/q = 1");
    if (!(0.0 < lo && lo < hi && hi < 1.0) || grid_points < 3)
        throw std::domain_error("convexity_check: bad grid");
    const double a = 1.0 / p;
    auto nderiv = [&](int order) {
        switch (order) {
            case 2: return 1.0 / a + 1.0 / (1.0 - a);
            case 3: return -1.0 / (a * a) + 1.0 / ((1.0 - a) * (1.0 - a));
            case 4: return 2.0 / (a * a * a) + 2.0 / std::pow(1.0 - a, 3);
            case 5: return -6.0 / std::pow(a, 4) + 6.0 / std::pow(1.0 - a, 4);
            case 6: return 24.0 / std::pow(a, 5) + 24.0 / std::pow(1.0 - a, 5);
            default: throw std::logic_error("convexity_check: order");
        }
    };
    auto f = [&](double s) {
        double d = s - a;
        if (std::fabs(d) < 1e-3) {
            return nderiv(2) / 2.0 + nderiv(3) * d / 6.0 + nderiv(4) * d * d / 24.0 +
                   nderiv(5) * d * d * d / 120.0 + nderiv(6) * d * d * d * d / 720.0;
        }
        double num = s * std::log(p * s) + (1.0 - s) * std::log(q * (1.0 - s));
        return num / (d * d);
    };
    const double step = (hi - lo) / (grid_points - 1);
    ConvexityReport report;
    for (int i = 1; i + 1 < grid_points; ++i) {
        double s = lo + i * step;
        double fm = f(s - step), f0 = f(s), fp = f(s + step);
        double second = fm - 2.0 * f0 + fp;
        double scale = 1.0 + std::fabs(fm) + 2.0 * std::fabs(f0) + std::fabs(fp);
        double violation = std::max(0.0, -second) / scale;
        report.max_violation = std::max(report.max_violation, violation);
    }
    // closed-form g(s) = (s-1/p)^2/(s(1-s)) + (2s+4/p) log(ps) + (6-(2s+4/p)) log(q(1-s))
    // evaluated at s = 1/p, where the quadratic term vanishes
    report.g_at_recip_p = (2.0 * a + 4.0 / p) * std::log(p * a) +
                          (6.0 - (2.0 * a + 4.0 / p)) * std::log(q * (1.0 - a));
    return report;
}

SimplexPoint dominance_neighbor(const SimplexPoint& z, const SimplexPoint& y, double eps) {
    const int theta = z.theta();
    if (y.theta() != theta) throw std::domain_error("dominance_neighbor: size mismatch");
    if (!(eps > 0.0) || eps >= 1.0 / (static_cast<double>(theta) * theta))
        throw std::domain_error("dominance_neighbor: need 0 < eps < theta^-2");
    const double root = std::sqrt(eps);
    int k = 0;
    for (int j = 0; j < theta; ++j)
        if (z[j] >= root) k = j + 1;
    if (k < 1) throw std::logic_error("dominance_neighbor: z_1 < sqrt(eps) cannot happen on Delta");
    const double alpha = (k - 1) * root;
    double tail = 0.0;
    for (int j = k; j < theta; ++j) tail += z[j];
    std::vector<double> zp(theta, 0.0);
    zp[0] = alpha + (1.0 - alpha) * z[0] + (1.0 - alpha) * tail;
    for (int j = 1; j < k; ++j) zp[j] = (1.0 - alpha) * z[j];
    SimplexPoint out = SimplexPoint::of(std::move(zp));
    if (!simplex_dominates(out, y, 1e-9))
        throw std::logic_error("dominance_neighbor: caller contract violated (z' does not dominate y)");
    return out;
}

}  // namespace mfspin
