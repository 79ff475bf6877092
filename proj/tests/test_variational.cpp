#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "mfspin/character_engine.hpp"
#include "mfspin/rng.hpp"
#include "mfspin/variational.hpp"
#include "oracles.hpp"

using namespace mfspin;

TEST_CASE("phi closed forms") {
    const int theta = 4;
    std::vector<double> e1(theta, 0.0);
    e1[0] = 1.0;
    CHECK(phi(SimplexPoint::of(e1), 2.3) == doctest::Approx(0.0).epsilon(1e-15));

    for (double beta : {0.5, 3.0}) {
        double want = 0.5 * beta * (1.0 / theta - 1.0) + std::log(theta);
        CHECK(phi(SimplexPoint::uniform(theta), beta) == doctest::Approx(want).epsilon(1e-13));
    }

    double val = phi(SimplexPoint::of({0.75, 0.25}), 3.0);
    double want = 1.5 * (0.625 - 1.0) - (0.75 * std::log(0.75) + 0.25 * std::log(0.25));
    CHECK(val == doctest::Approx(want).epsilon(1e-14));
}

TEST_CASE("phi is symmetric under coordinate permutation") {
    SplitMixStream rng(31, 0);
    for (int trial = 0; trial < 200; ++trial) {
        int theta = 2 + static_cast<int>(rng.next_below(4));
        std::vector<double> v(theta);
        double sum = 0.0;
        for (double& x : v) {
            x = -std::log(rng.next_unit());
            sum += x;
        }
        for (double& x : v) x /= sum;
        SimplexPoint sorted = SimplexPoint::sorted_of(v);
        // rotate and re-sort: same value
        std::rotate(v.begin(), v.begin() + 1, v.end());
        CHECK(phi(SimplexPoint::sorted_of(v), 1.7) ==
              doctest::Approx(phi(sorted, 1.7)).epsilon(1e-13));
    }
}

TEST_CASE("SimplexPoint validation") {
    CHECK_THROWS_AS(SimplexPoint::of({0.4, 0.6}), std::domain_error);        // not decreasing
    CHECK_THROWS_AS(SimplexPoint::of({0.9, 0.2}), std::domain_error);        // sum != 1
    CHECK_THROWS_AS(SimplexPoint::of({1.2, -0.2}), std::domain_error);       // negative
}

TEST_CASE("subcritical maximizer is uniform; supercritical is not") {
    for (int theta : {2, 3, 4, 5}) {
        double bc = beta_critical(theta);
        auto sub = maximize_phi(0.5 * bc, theta);
        CHECK(sub.x_up[0] == doctest::Approx(1.0 / theta).epsilon(1e-12));
        CHECK(sub.x_down[theta - 1] == doctest::Approx(1.0 / theta).epsilon(1e-12));
        CHECK(sub.value == doctest::Approx(phi(SimplexPoint::uniform(theta), 0.5 * bc))
                               .epsilon(1e-13));
        auto super = maximize_phi(2.0 * bc, theta);
        CHECK(super.x_up[0] > 1.0 / theta + 1e-3);
        CHECK(super.value > phi(SimplexPoint::uniform(theta), 2.0 * bc) + 1e-6);
    }
}

TEST_CASE("theta=2 supercritical maximizer solves the fixed-point equation") {
    const double beta = 3.0;
    auto report = maximize_phi(beta, 2);
    double t = report.x_up[0];
    CHECK(t > 0.5);
    CHECK(beta * (2.0 * t - 1.0) == doctest::Approx(std::log(t / (1.0 - t))).epsilon(1e-10));
    // 1-D golden-section oracle over (1/2, 1)
    double best = -1e300, best_t = 0.5;
    for (int i = 0; i <= 200000; ++i) {
        double tt = 0.5 + 0.5 * i / 200001.0;
        double v = 0.5 * beta * (tt * tt + (1 - tt) * (1 - tt) - 1.0) -
                   (tt > 0 ? tt * std::log(tt) : 0.0) -
                   ((1 - tt) > 0 ? (1 - tt) * std::log(1 - tt) : 0.0);
        if (v > best) {
            best = v;
            best_t = tt;
        }
    }
    CHECK(report.value == doctest::Approx(best).epsilon(1e-9));
    CHECK(t == doctest::Approx(best_t).epsilon(1e-4));
}

TEST_CASE("candidate structure at and beyond the critical point") {
    // theta >= 3: at beta_c a maximizer sits at r=1, t=(theta-1)/theta
    for (int theta : {3, 4, 5}) {
        double bc = beta_critical(theta);
        auto report = maximize_phi(bc, theta);
        CHECK(report.x_up[0] == doctest::Approx((theta - 1.0) / theta).epsilon(1e-9));
        CHECK(report.x_down[theta - 1] ==
              doctest::Approx(1.0 / (static_cast<double>(theta) * (theta - 1))).epsilon(1e-9));
        // the uniform point ties at beta_c
        double uni = phi(SimplexPoint::uniform(theta), bc);
        CHECK(report.value == doctest::Approx(uni).epsilon(1e-10));
    }
    // theta=3, beta=3 > beta_c: the jump lands past (theta-1)/theta
    auto super3 = maximize_phi(3.0, 3);
    CHECK(super3.x_up[0] > 2.0 / 3.0);
    // beta -> infinity: maximizer approaches (1, 0, ..., 0)
    auto frozen = maximize_phi(500.0, 3);
    CHECK(frozen.x_up[0] > 0.99);
}

TEST_CASE("g fast path and boundary cases") {
    const double beta = 1.0;
    const int theta = 3;
    auto report = maximize_phi(beta, theta);
    CHECK(g_max(SimplexPoint::uniform(theta), beta) == doctest::Approx(report.value).epsilon(1e-12));
    std::vector<double> e1(theta, 0.0);
    e1[0] = 1.0;
    CHECK(g_max(SimplexPoint::of(e1), beta) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("g for theta=2 equals the 1-D analysis") {
    // for x = (x1, 1-x1), Delta(x) = {(t,1-t): t >= x1}; phi is unimodal in t
    // so g(x) = phi at max(x1, t*)
    for (double beta : {1.0, 3.0}) {
        auto report = maximize_phi(beta, 2);
        double tstar = report.x_up[0];
        for (double x1 : {0.5, 0.6, 0.75, 0.9, 0.97}) {
            SimplexPoint x = SimplexPoint::of({x1, 1.0 - x1});
            double t = std::max(x1, tstar);
            double want = phi(SimplexPoint::of({t, 1.0 - t}), beta);
            CHECK(g_max(x, beta) == doctest::Approx(want).epsilon(1e-9));
        }
    }
}

TEST_CASE("g matches the mesh oracle and dominates phi") {
    SplitMixStream rng(404, 0);
    for (int theta : {3, 4}) {
        for (double beta : {1.0, beta_critical(theta) + 0.5}) {
            for (int trial = 0; trial < 6; ++trial) {
                std::vector<double> v(theta);
                double sum = 0.0;
                for (double& x : v) {
                    x = -std::log(rng.next_unit());
                    sum += x;
                }
                for (double& x : v) x /= sum;
                SimplexPoint x = SimplexPoint::sorted_of(v);
                double g = g_max(x, beta);
                CHECK(g >= phi(x, beta) - 1e-10);
                const int mesh = 120;
                double grid = oracles::grid_max(x, mesh, [&](const std::vector<double>& y) {
                    double sq = 0.0, ent = 0.0;
                    for (double c : y) {
                        sq += c * c;
                        if (c > 0) ent += c * std::log(c);
                    }
                    return 0.5 * beta * (sq - 1.0) - ent;
                });
                // mesh-induced tolerance: modulus of continuity of phi at 1/mesh
                double delta = 1.0 / mesh;
                double tol = 2.0 * theta * delta * (beta + 1.0 + std::fabs(std::log(delta)));
                CHECK(g >= grid - 1e-9);
                CHECK(g <= grid + tol);
            }
        }
    }
}

TEST_CASE("z reductions and branch agreement at h=0") {
    for (int theta : {2, 3}) {
        for (double beta : {1.0, 3.0}) {
            auto report = maximize_phi(beta, theta);
            CHECK(z_value(beta, 0.0, theta) == doctest::Approx(report.value).epsilon(1e-13));
            double up = z_value(beta, 1e-12, theta);
            double down = z_value(beta, -1e-12, theta);
            CHECK(up == doctest::Approx(down).epsilon(1e-9));
        }
    }
}

TEST_CASE("z is nondecreasing in h and slope saturates at 1 - 1/theta") {
    const int theta = 3;
    const double beta = 1.5;
    double prev = z_value(beta, 0.0, theta);
    for (double h : {0.2, 0.5, 1.0, 2.0, 5.0}) {
        double cur = z_value(beta, h, theta);
        CHECK(cur >= prev - 1e-12);
        prev = cur;
    }
    double h = 1e4;
    CHECK(z_value(beta, h, theta) / h ==
          doctest::Approx(1.0 - 1.0 / theta).epsilon(1e-3));
}

TEST_CASE("z matches a theta=2 grid oracle off criticality") {
    const int theta = 2;
    for (double beta : {1.0, 3.0}) {
        for (double h : {0.25, 1.0}) {
            double best = -1e300;
            for (int i = 0; i <= 400000; ++i) {
                double t = 0.5 + 0.5 * i / 400001.0;
                double val = h * (t - 0.5) + 0.5 * beta * (t * t + (1 - t) * (1 - t) - 1.0);
                if (t > 0 && t < 1)
                    val -= t * std::log(t) + (1 - t) * std::log(1 - t);
                best = std::max(best, val);
            }
            CHECK(z_value(beta, h, theta) == doctest::Approx(best).epsilon(1e-8));
        }
    }
}

TEST_CASE("z derivative signs and values") {
    for (int theta : {2, 3, 4, 5}) {
        for (double beta : {0.1, 1.0, beta_critical(theta) + 1.0}) {
            auto [zp, zm] = z_derivatives(beta, theta);
            CHECK(zp >= -1e-12);
            CHECK(zm <= 1e-12);
        }
        auto [zp_low, zm_low] = z_derivatives(0.1, theta);
        CHECK(zp_low == doctest::Approx(0.0).epsilon(1e-12));
        CHECK(zm_low == doctest::Approx(0.0).epsilon(1e-12));
    }
    // theta = 2 at beta_c: continuous transition, z+ = 0
    auto [zp2, zm2] = z_derivatives(2.0, 2);
    CHECK(std::fabs(zp2) < 1e-9);
    CHECK(std::fabs(zm2) < 1e-9);
    // theta = 3 at beta_c: z+ = 1/3
    auto [zp3, zm3] = z_derivatives(beta_critical(3), 3);
    CHECK(zp3 == doctest::Approx(1.0 / 3.0).epsilon(1e-9));
    CHECK(zm3 == doctest::Approx(1.0 / 6.0 - 1.0 / 3.0).epsilon(1e-8));
}

TEST_CASE("discontinuity signature across the critical point") {
    for (int theta : {3, 4, 5}) {
        double bc = beta_critical(theta);
        CHECK(z_derivatives(bc - 1e-6, theta).first == doctest::Approx(0.0).epsilon(1e-12));
        double jump = z_derivatives(bc + 1e-6, theta).first;
        CHECK(jump >= (theta - 2.0) / theta * (1.0 - 1e-3));
    }
    CHECK(z_derivatives(2.0 + 1e-4, 2).first <= 0.02);
    CHECK(z_derivatives(2.0 + 1e-4, 2).first > 0.0);
}

TEST_CASE("z at zero field sits above the uniform value, strictly past beta_c") {
    for (int theta : {2, 3, 4}) {
        double bc = beta_critical(theta);
        double uni_low = std::log(theta) + 0.5 * (0.5 * bc) * (1.0 / theta - 1.0);
        CHECK(z_value(0.5 * bc, 0.0, theta) == doctest::Approx(uni_low).epsilon(1e-12));
        double uni_high = std::log(theta) + 0.5 * (2.0 * bc) * (1.0 / theta - 1.0);
        CHECK(z_value(2.0 * bc, 0.0, theta) > uni_high + 1e-6);
    }
}

TEST_CASE("critical temperature closed form and scan") {
    CHECK(beta_critical(2) == doctest::Approx(2.0));
    CHECK(beta_critical(3) == doctest::Approx(4.0 * std::log(2.0)).epsilon(1e-15));
    CHECK(beta_critical(3) == doctest::Approx(2.7725887222397812).epsilon(1e-12));
    for (int theta : {2, 3, 4, 5}) {
        CHECK(std::fabs(beta_critical_scan(theta) - beta_critical(theta)) <= 1e-6);
    }
    CHECK_THROWS_AS(beta_critical(1), std::domain_error);
}

TEST_CASE("R and rho identities") {
    // rho(1/theta) = beta_c for theta >= 3
    for (int theta : {3, 4, 5, 7}) {
        CHECK(rho(1.0 / theta, theta) == doctest::Approx(beta_critical(theta)).epsilon(1e-12));
    }
    // R((theta-r)/(r theta)) = rho(r/theta)
    for (int theta : {3, 4, 5}) {
        for (int r = 1; r <= theta / 2; ++r) {
            double t = (theta - r) / (static_cast<double>(r) * theta);
            if (t >= 1.0 / r) continue;
            CHECK(big_r(t, r, theta) ==
                  doctest::Approx(rho(static_cast<double>(r) / theta, theta)).epsilon(1e-10));
        }
    }
    // derivative vanishes at the interior minimum
    for (int theta : {3, 4}) {
        int r = 1;
        double t = (theta - r) / (static_cast<double>(r) * theta);
        double d = 1e-6;
        double slope = (big_r(t + d, r, theta) - big_r(t - d, r, theta)) / (2 * d);
        CHECK(std::fabs(slope) < 1e-4);
    }
    // theta=2, r=1: inf over t > 1/2 equals 2 (attained toward t -> 1/2)
    double inf_r = 1e300;
    for (int i = 1; i <= 20000; ++i) {
        double t = 0.5 + 0.4999 * i / 20001.0;
        inf_r = std::min(inf_r, big_r(t, 1, 2));
    }
    CHECK(inf_r == doctest::Approx(2.0).epsilon(1e-4));
    CHECK(big_r(0.5, 1, 2) == doctest::Approx(2.0).epsilon(1e-10));
    // right-edge limit: the e_1-vs-uniform tie at beta = 2 theta log(theta)/(theta-1)
    CHECK(big_r(1.0 - 1e-9, 1, 2) == doctest::Approx(4.0 * std::log(2.0)).epsilon(1e-6));
    // removable singularity is smooth: series and direct branches agree
    for (int theta : {2, 3, 5}) {
        double c = 1.0 / theta;
        double inner = big_r(c + 0.9e-4 / theta, 1, theta);
        double outer = big_r(c + 1.1e-4 / theta, 1, theta);
        CHECK(std::fabs(inner - outer) < 1e-4 * std::max(1.0, std::fabs(outer)));
    }
}

TEST_CASE("beta >= R(t) iff the two-level profile beats uniform") {
    SplitMixStream rng(2718, 1);
    for (int trial = 0; trial < 300; ++trial) {
        int theta = 2 + static_cast<int>(rng.next_below(4));
        int r = 1 + static_cast<int>(rng.next_below(static_cast<std::uint64_t>(theta - 1)));
        double t = 1.0 / theta + (1.0 / r - 1.0 / theta) * rng.next_unit() * 0.98;
        if (std::fabs(theta * t - 1.0) < 1e-6) continue;
        double beta = 0.2 + 6.0 * rng.next_unit();
        std::vector<double> x(theta, (1.0 - r * t) / (theta - r));
        for (int i = 0; i < r; ++i) x[i] = t;
        double diff = phi(SimplexPoint::of(x), beta) - phi(SimplexPoint::uniform(theta), beta);
        if (beta >= big_r(t, r, theta) + 1e-9) {
            CHECK(diff >= -1e-12);
        } else if (beta <= big_r(t, r, theta) - 1e-9) {
            CHECK(diff <= 1e-12);
        }
    }
}

TEST_CASE("finite-difference convexity sweeps") {
    auto sym = convexity_check(2.0, 2.0, 0.01, 0.99, 10000);
    CHECK(sym.max_violation <= 1e-8);
    CHECK(std::fabs(sym.g_at_recip_p) <= 1e-10);
    // R(t) convexity for theta=4, r=1 via s = rt, p = theta/r
    auto quartic = convexity_check(4.0, 4.0 / 3.0, 0.26, 0.99, 10000);
    CHECK(quartic.max_violation <= 1e-8);
    CHECK(std::fabs(quartic.g_at_recip_p) <= 1e-10);
    CHECK_THROWS_AS(convexity_check(2.0, 3.0, 0.1, 0.9, 100), std::domain_error);
}

TEST_CASE("dominance neighbour construction") {
    // extreme point is fixed
    SimplexPoint e1 = SimplexPoint::of({1.0, 0.0, 0.0});
    auto fixed = dominance_neighbor(e1, SimplexPoint::uniform(3), 1e-3);
    CHECK(fixed[0] == doctest::Approx(1.0));
    CHECK_THROWS_AS(dominance_neighbor(e1, SimplexPoint::uniform(3), 0.2), std::domain_error);

    SplitMixStream rng(55, 0);
    int trials = 0;
    for (; trials < 10000;) {
        int theta = 2 + static_cast<int>(rng.next_below(4));
        double eps = (0.2 + 0.75 * rng.next_unit()) / (static_cast<double>(theta) * theta);
        // random x, then y with ||x - y||_inf <= eps, then z dominating x
        std::vector<double> xv(theta);
        double sum = 0.0;
        for (double& v : xv) {
            v = -std::log(rng.next_unit());
            sum += v;
        }
        for (double& v : xv) v /= sum;
        std::sort(xv.begin(), xv.end(), std::greater<double>());
        // y: perturb within eps in sup norm, re-sort, renormalize via shifting
        std::vector<double> yv = xv;
        double shift = 0.0;
        for (int i = 0; i < theta; ++i) {
            double d = (rng.next_unit() - 0.5) * eps;  // |d| <= eps/2
            yv[i] = std::max(0.0, xv[i] + d);
            shift += yv[i] - xv[i];
        }
        // rebalance so the sum is 1 while keeping |y_i - x_i| <= eps
        yv[0] -= shift;
        if (yv[0] < 0.0 || std::fabs(yv[0] - xv[0]) > eps) continue;
        std::sort(yv.begin(), yv.end(), std::greater<double>());
        double inf_norm = 0.0;
        for (int i = 0; i < theta; ++i) inf_norm = std::max(inf_norm, std::fabs(xv[i] - yv[i]));
        if (inf_norm > eps) continue;
        SimplexPoint x = SimplexPoint::of(xv);
        SimplexPoint y = SimplexPoint::of(yv);
        // z in Delta(x): mix x with e_1
        double w = rng.next_unit();
        std::vector<double> zv(theta);
        for (int i = 0; i < theta; ++i) zv[i] = (1.0 - w) * xv[i] + (i == 0 ? w : 0.0);
        SimplexPoint z = SimplexPoint::of(zv);
        REQUIRE(simplex_dominates(z, x));

        SimplexPoint zp = dominance_neighbor(z, y, eps);
        CHECK(simplex_dominates(zp, y, 1e-12));
        double dist = 0.0;
        for (int i = 0; i < theta; ++i) dist = std::max(dist, std::fabs(zp[i] - z[i]));
        CHECK(dist <= (theta - 1.0) * std::sqrt(eps) + 1e-12);
        ++trials;
    }
    CHECK(trials == 10000);
}

TEST_CASE("Hausdorff consequence of the neighbour construction") {
    // sampled points of Delta(x) sit within theta sqrt(eps) of Delta(y)
    SplitMixStream rng(77, 1);
    const int theta = 3;
    const double eps = 0.5 / (theta * theta);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<double> xv{0.5, 0.3, 0.2};
        std::vector<double> yv = xv;
        double d = (rng.next_unit() - 0.5) * eps;
        yv[0] += d;
        yv[1] -= d;
        std::sort(yv.begin(), yv.end(), std::greater<double>());
        SimplexPoint x = SimplexPoint::of(xv);
        SimplexPoint y = SimplexPoint::of(yv);
        double w = rng.next_unit();
        std::vector<double> zv(theta);
        for (int i = 0; i < theta; ++i) zv[i] = (1.0 - w) * xv[i] + (i == 0 ? w : 0.0);
        SimplexPoint z = SimplexPoint::of(zv);
        SimplexPoint zp = dominance_neighbor(z, y, eps);
        double dist = 0.0;
        for (int i = 0; i < theta; ++i) dist = std::max(dist, std::fabs(zp[i] - z[i]));
        CHECK(dist < theta * std::sqrt(eps));
    }
}

TEST_CASE("free-energy limit matches the finite-n character sum (coarse)") {
    // |(1/n) log Z_n(beta,h) - z(beta,h)| small at n=200, nonzero field
    double limit2 = z_value(1.0, 0.5, 2);
    double finite2 = CharacterEngine(200, 2).free_energy_density(1.0, 0.5);
    CHECK(std::fabs(finite2 - limit2) < 0.05);
    double limit3 = z_value(1.0, 0.5, 3);
    double finite3 = CharacterEngine(200, 3).free_energy_density(1.0, 0.5);
    CHECK(std::fabs(finite3 - limit3) < 0.05);
}

TEST_CASE("projection lands in the dominance polytope") {
    SplitMixStream rng(8, 8);
    for (int trial = 0; trial < 2000; ++trial) {
        int theta = 2 + static_cast<int>(rng.next_below(4));
        std::vector<double> xv(theta);
        double sum = 0.0;
        for (double& v : xv) {
            v = -std::log(rng.next_unit());
            sum += v;
        }
        for (double& v : xv) v /= sum;
        std::sort(xv.begin(), xv.end(), std::greater<double>());
        SimplexPoint floor_point = SimplexPoint::of(xv);
        std::vector<double> raw(theta);
        for (double& v : raw) v = 3.0 * rng.next_unit() - 1.0;
        SimplexPoint proj = project_to_dominance(raw, floor_point);
        CHECK(simplex_dominates(proj, floor_point, 1e-9));
        double s = 0.0;
        for (int i = 0; i < theta; ++i) s += proj[i];
        CHECK(s == doctest::Approx(1.0).epsilon(1e-12));
    }
}
