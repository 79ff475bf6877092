#pragma once

#include <vector>

namespace mfspin {

// Point of the ordered probability simplex: weakly decreasing nonnegative
// coordinates summing to 1.
struct SimplexPoint {
    std::vector<double> coords;

    static SimplexPoint of(std::vector<double> c);         // validates
    static SimplexPoint sorted_of(std::vector<double> c);  // sorts descending first
    static SimplexPoint uniform(int theta);

    int theta() const { return static_cast<int>(coords.size()); }
    double operator[](int i) const { return coords[i]; }
};

// a dominates b: prefix sums of a >= prefix sums of b (within tol).
bool simplex_dominates(const SimplexPoint& a, const SimplexPoint& b, double tol = 1e-12);

// phi_beta(x) = (beta/2)(sum x_j^2 - 1) - sum x_j log x_j, with 0 log 0 = 0.
double phi(const SimplexPoint& x, double beta);

// Two-level stationary family: first r coordinates t, the rest (1-rt)/(theta-r).
struct PhiCandidate {
    int r = 0;       // 0 marks the uniform point
    double t = 0.0;  // first-block value
    SimplexPoint x;
    double value = 0.0;
};

// The uniform point plus every interior stationary point of the two-level
// profile t -> phi(x_r(t)) on (1/theta, 1/r), for r = 1..theta-1. Roots are
// bracketed on a 10^4-point grid and polished to |derivative| <= 1e-12.
std::vector<PhiCandidate> stationary_candidates(double beta, int theta);

struct MaximizerReport {
    double value = 0.0;
    SimplexPoint x_up;    // maximizer with the largest first coordinate
    SimplexPoint x_down;  // maximizer with the smallest last coordinate
    std::vector<PhiCandidate> candidates;
};

// Global maximum of phi_beta over the simplex. The candidate family is
// exhaustive by the Lagrange classification (at most two distinct coordinate
// values at any interior stationary point); maximizer ties are resolved at
// tolerance 1e-10.
MaximizerReport maximize_phi(double beta, int theta);

// g_beta(x) = max over the dominance polytope {y >= x} of phi_beta. Fast path
// when the global maximizer dominates x; otherwise multi-start projected
// ascent (validated against a simplex-grid oracle in the tests).
double g_max(const SimplexPoint& x, double beta);

// z(beta, h): tilted free energy, h >= 0 uses the first coordinate, h <= 0
// the last one. Both branches agree at h = 0.
double z_value(double beta, double h, int theta);

// (z^+, z^-) = (x_up[0] - 1/theta, x_down[theta-1] - 1/theta).
std::pair<double, double> z_derivatives(double beta, int theta);

// 2 for theta = 2, else 2 (theta-1)/(theta-2) log(theta-1).
double beta_critical(int theta);
// Bisection on the smallest beta with z^+ > 1e-8 (60 iterations).
double beta_critical_scan(int theta);

// R(t) of the two-level comparison: beta >= R(t) iff the r-level profile at t
// beats the uniform point. Removable singularity at t = 1/theta handled by a
// local series.
double big_r(double t, int r, int theta);
// rho(t) = 2 theta t (1-t)/(1-2t) log((1-t)/t) on (0, 1/2); rho(1/theta) is
// the critical coupling for theta >= 3.
double rho(double t, int theta);

struct ConvexityReport {
    double max_violation = 0.0;   // max negative second difference / scale
    double g_at_recip_p = 0.0;    // closed-form g(1/p), should vanish
};
// Finite-difference convexity sweep of
// f(s) = [s log(ps) + (1-s) log(q(1-s))] / (s - 1/p)^2 over [lo, hi].
ConvexityReport convexity_check(double p, double q, double lo, double hi, int grid_points);

// Explicit dominance-polytope neighbour: given z (in some Delta(x) with
// ||x - y|| <= eps, eps < theta^-2), returns z' in Delta(y) with
// ||z - z'|| <= (theta-1) sqrt(eps).
SimplexPoint dominance_neighbor(const SimplexPoint& z, const SimplexPoint& y, double eps);

// Partial-sum-clipping projection of an arbitrary vector onto the dominance
// polytope {y in Delta : y >= floor}; exposed for the ascent tests.
SimplexPoint project_to_dominance(std::vector<double> v, const SimplexPoint& floor_point);

}  // namespace mfspin
