#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>

#include "mfspin/character_engine.hpp"
#include "mfspin/exact_quantum.hpp"
#include "mfspin/interchange_mc.hpp"

using namespace mfspin;

TEST_CASE("poisson_draw mean and determinism") {
    SplitMixStream s1(11, 0), s2(11, 0);
    for (int i = 0; i < 50; ++i) CHECK(poisson_draw(37.5, s1) == poisson_draw(37.5, s2));
    SplitMixStream s3(12, 0);
    const int trials = 20000;
    double sum = 0.0, sq = 0.0;
    for (int i = 0; i < trials; ++i) {
        double v = static_cast<double>(poisson_draw(9.0, s3));
        sum += v;
        sq += v * v;
    }
    double mean = sum / trials;
    double var = sq / trials - mean * mean;
    CHECK(std::fabs(mean - 9.0) < 4.0 * std::sqrt(9.0 / trials));
    CHECK(std::fabs(var - 9.0) < 0.5);
    CHECK(poisson_draw(0.0, s3) == 0);
}

TEST_CASE("sample_events: determinism, ordering, expected count") {
    SplitMixStream a(3, 1), b(3, 1);
    auto e1 = sample_events(10, 2.0, a);
    auto e2 = sample_events(10, 2.0, b);
    REQUIRE(e1.events.size() == e2.events.size());
    for (std::size_t i = 0; i < e1.events.size(); ++i) {
        CHECK(e1.events[i].x == e2.events[i].x);
        CHECK(e1.events[i].y == e2.events[i].y);
        CHECK(e1.events[i].t == e2.events[i].t);
    }
    SplitMixStream s(4, 0);
    double total = 0.0;
    const int trials = 20000;
    for (int i = 0; i < trials; ++i) {
        auto ev = sample_events(10, 2.0, s);
        total += static_cast<double>(ev.events.size());
        for (std::size_t j = 0; j < ev.events.size(); ++j) {
            CHECK(ev.events[j].x < ev.events[j].y);
            CHECK(ev.events[j].t >= 0.0);
            CHECK(ev.events[j].t <= ev.horizon);
            if (j > 0) CHECK(ev.events[j].t > ev.events[j - 1].t);
        }
    }
    // mean event count (n-1) beta / 2 = 9
    double mean = total / trials;
    CHECK(std::fabs(mean - 9.0) < 4.0 * std::sqrt(9.0 / trials));
    // n = 1: never any events
    auto none = sample_events(1, 5.0, s);
    CHECK(none.events.empty());
}

TEST_CASE("compose basics") {
    EventList empty;
    empty.horizon = 0.5;
    auto id = compose(empty, 5);
    for (int i = 0; i < 5; ++i) CHECK(id[i] == i);

    EventList one;
    one.horizon = 0.5;
    one.events.push_back(Event{2, 4, 0.1});
    auto tau = compose(one, 5);
    CHECK(tau[1] == 3);
    CHECK(tau[3] == 1);
    CHECK(tau[0] == 0);
}

TEST_CASE("cycle statistics on the figure permutation") {
    // sigma = (1,3)(2,6,7,4)(9,10)(5)(8) on n = 10, as a 0-based image map
    std::vector<int> sigma(10);
    sigma[0] = 2;  // 1 -> 3
    sigma[2] = 0;  // 3 -> 1
    sigma[1] = 5;  // 2 -> 6
    sigma[5] = 6;  // 6 -> 7
    sigma[6] = 3;  // 7 -> 4
    sigma[3] = 1;  // 4 -> 2
    sigma[8] = 9;  // 9 -> 10
    sigma[9] = 8;  // 10 -> 9
    sigma[4] = 4;  // 5 fixed
    sigma[7] = 7;  // 8 fixed
    auto stats = cycle_stats(sigma);
    CHECK(stats.ell == 5);
    CHECK(stats.cycle_lengths == std::vector<int>{4, 2, 2, 1, 1});
    CHECK(stats.x_mass(2) == doctest::Approx(0.8));
    CHECK(stats.x_mass(1) == doctest::Approx(1.0));
    CHECK(stats.x_mass(5) == doctest::Approx(0.0));

    auto ident = cycle_stats(std::vector<int>{0, 1, 2, 3, 4, 5, 6, 7, 8, 9});
    CHECK(ident.ell == 10);
    CHECK(ident.x_mass(2) == doctest::Approx(0.0));
}

TEST_CASE("cycle type is invariant under event reversal") {
    SplitMixStream s(9, 2);
    for (int trial = 0; trial < 1000; ++trial) {
        auto ev = sample_events(12, 3.0, s);
        auto fwd = cycle_stats(compose(ev, 12)).cycle_lengths;
        EventList rev = ev;
        std::reverse(rev.events.begin(), rev.events.end());
        for (std::size_t i = 0; i < rev.events.size(); ++i)
            rev.events[i].t = ev.horizon - rev.events[i].t +
                              1e-12 * static_cast<double>(i);  // keep times increasing
        auto bwd = cycle_stats(compose(rev, 12)).cycle_lengths;
        CHECK(fwd == bwd);
    }
}

TEST_CASE("estimate_z exact edge cases") {
    McConfig cfg;
    cfg.n = 1;
    cfg.theta = 3.0;
    cfg.beta = 2.0;
    cfg.sample_count = 500;
    cfg.seed = 1;
    auto est = estimate_z(cfg);
    CHECK(est.mean == doctest::Approx(3.0).epsilon(1e-15));
    CHECK(est.std_error == doctest::Approx(0.0));
    CHECK(est.effective_sample_size == doctest::Approx(500.0).epsilon(1e-12));

    cfg.n = 6;
    cfg.theta = 1.0;
    auto flat = estimate_z(cfg);
    CHECK(flat.mean == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(flat.std_error == doctest::Approx(0.0));
}

TEST_CASE("estimate_z is bit-identical across reruns and thread counts") {
    McConfig cfg;
    cfg.n = 8;
    cfg.theta = 2.0;
    cfg.beta = 1.5;
    cfg.sample_count = 20000;
    cfg.seed = 4242;
    auto a = estimate_z(cfg);
    auto b = estimate_z(cfg);
    CHECK(a.mean == b.mean);
    CHECK(a.std_error == b.std_error);
    cfg.threads = 4;
    auto c = estimate_z(cfg);
    CHECK(a.mean == c.mean);
    CHECK(a.std_error == c.std_error);
}

TEST_CASE("estimate_z matches the exact engines at theta=2") {
    McConfig cfg;
    cfg.theta = 2.0;
    cfg.sample_count = 30000;
    cfg.seed = 20240817;
    for (int n = 2; n <= 6; ++n) {
        CharacterEngine engine(n, 2);
        for (double beta : {0.5, 1.0, 2.0}) {
            cfg.n = n;
            cfg.beta = beta;
            auto est = estimate_z(cfg);
            double exact = std::exp(engine.log_z(beta));
            CHECK(std::fabs(est.mean - exact) < 3.0 * est.std_error);
        }
    }
}

TEST_CASE("estimate_z_field reduces to estimate_z at h=0 and is exact at n=1") {
    McConfig cfg;
    cfg.n = 5;
    cfg.theta = 2.0;
    cfg.beta = 1.0;
    cfg.h = 0.0;
    cfg.sample_count = 4000;
    cfg.seed = 7;
    auto plain = estimate_z(cfg);
    auto field = estimate_z_field(cfg);
    CHECK(plain.mean == doctest::Approx(field.mean).epsilon(1e-12));

    cfg.n = 1;
    cfg.theta = 4.0;
    cfg.h = 0.8;
    auto single = estimate_z_field(cfg);
    double want = std::exp(-0.8 / 4.0) * (std::exp(0.8) + 3.0);
    CHECK(single.mean == doctest::Approx(want).epsilon(1e-12));
    CHECK(single.std_error == doctest::Approx(0.0));
}

TEST_CASE("estimate_z_field matches z_field_exact at n=6") {
    McConfig cfg;
    cfg.n = 6;
    cfg.theta = 2.0;
    cfg.beta = 1.0;
    cfg.h = 0.3;
    cfg.sample_count = 40000;
    cfg.seed = 90125;
    auto est = estimate_z_field(cfg);
    double exact = z_field_exact(6, 2, 1.0, 0.3).linear();
    CHECK(std::fabs(est.mean - exact) < 3.0 * est.std_error);
}

TEST_CASE("empirical cycle-type law matches the exact S_3 jump chain") {
    // continuous-time walk on the three conjugacy classes of S_3:
    // event count ~ Po(beta), per event: e->tau, tau->{e w.p. 1/3, c3 w.p. 2/3},
    // c3->tau
    const double beta = 2.0;
    const int n = 3;
    double pe = 0.0, pt = 0.0, pc = 0.0;
    {
        double ce = 1.0, ct = 0.0, cc = 0.0;
        double pk = std::exp(-beta);  // P(N = k), k = 0
        for (int k = 0; k <= 60; ++k) {
            pe += pk * ce;
            pt += pk * ct;
            pc += pk * cc;
            double ne = ct / 3.0;
            double nc = 2.0 * ct / 3.0;
            double nt = ce + cc;
            ce = ne;
            ct = nt;
            cc = nc;
            pk *= beta / (k + 1);
        }
    }
    CHECK(pe + pt + pc == doctest::Approx(1.0).epsilon(1e-12));

    const long long samples = 100000;
    SplitMixStream stream(314159, 0);
    std::map<std::vector<int>, long long> counts;
    for (long long i = 0; i < samples; ++i) {
        auto ev = sample_events(n, beta, stream);
        counts[cycle_stats(compose(ev, n)).cycle_lengths] += 1;
    }
    auto frac = [&](std::vector<int> type) {
        return static_cast<double>(counts[type]) / samples;
    };
    auto sigma4 = [&](double p) { return 4.0 * std::sqrt(p * (1.0 - p) / samples); };
    CHECK(std::fabs(frac({1, 1, 1}) - pe) < sigma4(pe));
    CHECK(std::fabs(frac({2, 1}) - pt) < sigma4(pt));
    CHECK(std::fabs(frac({3}) - pc) < sigma4(pc));
}

TEST_CASE("weighted_tail trivial values") {
    McConfig cfg;
    cfg.n = 12;
    cfg.theta = 2.0;
    cfg.beta = 1.0;
    cfg.sample_count = 2000;
    cfg.seed = 5;
    auto all = weighted_tail(cfg, 3, 0.0);
    CHECK(all.estimate == doctest::Approx(1.0).epsilon(1e-14));
    auto k1 = weighted_tail(cfg, 1, 1.0);
    CHECK(k1.estimate == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("weighted_tail agrees with exhaustive reweighting on S_3") {
    // P_theta(X_3(3) >= 1) = P_theta(sigma is a 3-cycle); exact value from the
    // jump chain of the previous test reweighted by theta^ell
    const double beta = 2.0, theta = 2.0;
    double pe = 0.0, pt = 0.0, pc = 0.0;
    {
        double ce = 1.0, ct = 0.0, cc = 0.0;
        double pk = std::exp(-beta);
        for (int k = 0; k <= 60; ++k) {
            pe += pk * ce;
            pt += pk * ct;
            pc += pk * cc;
            double ne = ct / 3.0;
            double nc = 2.0 * ct / 3.0;
            double nt = ce + cc;
            ce = ne;
            ct = nt;
            cc = nc;
            pk *= beta / (k + 1);
        }
    }
    double w3 = theta * theta * theta, w2 = theta * theta, w1 = theta;
    double exact = (pc * w1) / (pe * w3 + pt * w2 + pc * w1);

    McConfig cfg;
    cfg.n = 3;
    cfg.theta = theta;
    cfg.beta = beta;
    cfg.sample_count = 200000;
    cfg.seed = 608;
    auto est = weighted_tail(cfg, 3, 1.0);
    CHECK(std::fabs(est.estimate - exact) < 4.0 * est.std_error);
    CHECK(est.effective_sample_size > 1000.0);
}

TEST_CASE("weighted_tail keeps a healthy effective sample size at n=400") {
    McConfig cfg;
    cfg.n = 400;
    cfg.theta = 2.0;
    cfg.beta = 1.0;
    cfg.sample_count = 4000;
    cfg.seed = 1234;
    auto est = weighted_tail(cfg, 20, 0.5);
    CHECK(est.estimate <= 0.01);
    CHECK(est.effective_sample_size >= 100.0);
    CHECK_FALSE(est.low_ess_warning);
    // rerun is bit-identical
    auto again = weighted_tail(cfg, 20, 0.5);
    CHECK(est.estimate == again.estimate);
    CHECK(est.effective_sample_size == again.effective_sample_size);
}

TEST_CASE("weighted_tail flags a collapsing effective sample size at rate 1") {
    McConfig cfg;
    cfg.n = 200;
    cfg.theta = 2.0;
    cfg.beta = 1.0;
    cfg.sample_count = 2000;
    cfg.seed = 77;
    auto naive = weighted_tail(cfg, 10, 0.5, 1.0);  // force the untilted proposal
    CHECK(naive.low_ess_warning);
    CHECK(naive.effective_sample_size < 100.0);
}

TEST_CASE("config validation") {
    McConfig cfg;
    cfg.n = 4;
    cfg.theta = 0.5;
    cfg.beta = 1.0;
    CHECK_THROWS_AS(estimate_z(cfg), std::domain_error);
    cfg.theta = 2.0;
    cfg.sample_count = 0;
    CHECK_THROWS_AS(estimate_z(cfg), std::domain_error);
    cfg.sample_count = 10;
    CHECK_THROWS_AS(weighted_tail(cfg, 2, 1.5), std::domain_error);
}
