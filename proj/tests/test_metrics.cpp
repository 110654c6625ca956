#include <doctest.h>

#include <bit>
#include <cmath>
#include <numbers>
#include <random>

#include "hyperwalk/metrics.hpp"
#include "hyperwalk/spectral.hpp"
#include "hyperwalk/walk.hpp"

using namespace hyperwalk;

namespace {

Distribution random_distribution(int n, std::mt19937_64& gen) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    Distribution d;
    d.n = n;
    d.probs.resize(std::size_t{1} << n);
    double total = 0.0;
    for (double& p : d.probs) {
        p = u(gen) + 1e-12;
        total += p;
    }
    for (double& p : d.probs) p /= total;
    return d;
}

}  // namespace

TEST_CASE("tvd basics") {
    const Distribution u = Distribution::uniform(4);
    CHECK(metrics::tvd(u, u) == 0.0);

    const Distribution a = Distribution::point_mass(3, 0);
    const Distribution b = Distribution::point_mass(3, 5);
    CHECK(metrics::tvd(a, b) == doctest::Approx(2.0));

    Distribution wrong;
    wrong.n = 2;
    wrong.probs = {1.0, 0.0};
    CHECK_THROWS_AS(metrics::tvd(a, wrong), std::invalid_argument);

    // level of the flat averaged-TVD-to-uniform curve at n=8; the limiting
    // distribution is distinctly non-uniform
    const double flat = metrics::tvd(spectral::stationary_pi_closed(8), Distribution::uniform(8));
    CHECK(flat == doctest::Approx(0.8811035156).epsilon(1e-9));
    CHECK(flat > 0.3);
}

TEST_CASE("tvd is a metric") {
    std::mt19937_64 gen(404);
    for (int rep = 0; rep < 100; ++rep) {
        const Distribution a = random_distribution(4, gen);
        const Distribution b = random_distribution(4, gen);
        const Distribution c = random_distribution(4, gen);
        const double ab = metrics::tvd(a, b);
        const double ba = metrics::tvd(b, a);
        const double ac = metrics::tvd(a, c);
        const double cb = metrics::tvd(c, b);
        CHECK(ab == ba);
        CHECK(ab >= 0.0);
        CHECK(ab <= 2.0);
        CHECK(ab <= ac + cb + 1e-14);
        CHECK(metrics::tvd(a, a) == 0.0);
        if (ab == 0.0) {
            for (std::size_t i = 0; i < a.probs.size(); ++i) CHECK(a.probs[i] == b.probs[i]);
        }
    }
}

TEST_CASE("time_averaged and the incremental mean") {
    SUBCASE("T=1 returns the first distribution; constant history is a fixed point") {
        std::mt19937_64 gen(7);
        const Distribution d = random_distribution(3, gen);
        const std::vector<Distribution> hist(5, d);
        const Distribution t1 = metrics::time_averaged(hist, 1);
        const Distribution t5 = metrics::time_averaged(hist, 5);
        for (std::size_t i = 0; i < d.probs.size(); ++i) {
            CHECK(t1.probs[i] == d.probs[i]);
            CHECK(t5.probs[i] == doctest::Approx(d.probs[i]).epsilon(1e-14));
        }
        CHECK_THROWS_AS(metrics::time_averaged(hist, 6), std::invalid_argument);
        CHECK_THROWS_AS(metrics::time_averaged(hist, 0), std::invalid_argument);
    }
    SUBCASE("n=2 walk averaged over T=4 reproduces the hand-computed mean") {
        // P0=(1,0,0,0), P1=(0,1/2,1/2,0), P2=(0,0,0,1), P3=(0,1/2,1/2,0)
        walk::WalkerState s = walk::initial_state_symmetric(2);
        const walk::CoinMatrix coin = walk::grover_coin(2);
        std::vector<Distribution> hist;
        for (int t = 0; t < 4; ++t) {
            hist.push_back(walk::position_distribution(s));
            walk::step_inplace(s, coin, EdgeMask{});
        }
        const Distribution mean = metrics::time_averaged(hist, 4);
        for (int x = 0; x < 4; ++x) CHECK(mean.probs[x] == doctest::Approx(0.25).epsilon(1e-14));
    }
    SUBCASE("incremental equals batch") {
        std::mt19937_64 gen(17);
        std::vector<Distribution> hist;
        metrics::CesaroAverage inc(8);
        for (int t = 0; t < 33; ++t) {
            hist.push_back(random_distribution(3, gen));
            inc.add(hist.back().probs.data());
        }
        const Distribution batch = metrics::time_averaged(hist, 33);
        const std::vector<double> m = inc.mean();
        for (std::size_t i = 0; i < m.size(); ++i)
            CHECK(m[i] == doctest::Approx(batch.probs[i]).epsilon(1e-12));
    }
}

TEST_CASE("average mixing time") {
    const int n = 6;
    const Distribution pi = spectral::stationary_pi_closed(n);
    const std::int64_t horizon = metrics::default_t_max(n);

    SUBCASE("epsilon = 2 gives time 0") {
        const auto r = metrics::average_mixing_time(n, 2.0, pi, horizon);
        CHECK(r.time == 0);
    }
    SUBCASE("monotone in epsilon") {
        const auto m04 = metrics::average_mixing_time(n, 0.4, pi, horizon);
        const auto m02 = metrics::average_mixing_time(n, 0.2, pi, horizon);
        const auto m01 = metrics::average_mixing_time(n, 0.1, pi, horizon);
        REQUIRE(m04.found());
        REQUIRE(m02.found());
        REQUIRE(m01.found());
        CHECK(m04.time <= m02.time);
        CHECK(m02.time <= m01.time);
        CHECK(m01.time > 0);
    }
    SUBCASE("bounded by the Aharonov crossing time") {
        for (double eps : {0.4, 0.2}) {
            const auto r = metrics::average_mixing_time(n, eps, pi, horizon);
            REQUIRE(r.found());
            // first T with bound <= eps
            std::int64_t crossing = 1;
            while (metrics::aharonov_bound(n, crossing) > eps) ++crossing;
            CHECK(r.time <= crossing + 1);
        }
    }
    SUBCASE("invalid epsilon") {
        CHECK_THROWS_AS(metrics::average_mixing_time(n, 0.0, pi, horizon), std::invalid_argument);
        CHECK_THROWS_AS(metrics::average_mixing_time(n, 2.5, pi, horizon), std::invalid_argument);
    }
}

TEST_CASE("mixing_time_from_curve backward scan") {
    // T:      1    2    3    4    5
    const std::vector<double> curve = {1.0, 0.3, 0.6, 0.2, 0.1};
    CHECK(metrics::mixing_time_from_curve(curve, 0.5) == 4);   // last exceedance at T=3
    CHECK(metrics::mixing_time_from_curve(curve, 0.15) == 5);  // last exceedance at T=4
    CHECK(metrics::mixing_time_from_curve(curve, 2.0) == 0);
    CHECK(metrics::mixing_time_from_curve(curve, 0.05) == -1);
}

TEST_CASE("instantaneous mixing time") {
    SUBCASE("epsilon = 2 gives t = 0") {
        const auto r = metrics::instantaneous_mixing_time(4, 2.0, metrics::ReferenceKind::uniform, 20);
        CHECK(r.time == 0);
    }
    SUBCASE("uniform reference is reached near (pi/4) n") {
        const int n = 8;
        const auto r = metrics::instantaneous_mixing_time(n, 0.3, metrics::ReferenceKind::uniform,
                                                          metrics::default_t_max(n));
        REQUIRE(r.found());
        CHECK(std::fabs(double(r.time) - std::numbers::pi / 4.0 * n) <= 2.5);
    }
    SUBCASE("wrong-parity mass stays numerically zero") {
        const int n = 5;
        walk::WalkerState s = walk::initial_state_symmetric(n);
        const walk::CoinMatrix coin = walk::grover_coin(n);
        for (int t = 0; t < 30; ++t) {
            const Distribution d = walk::position_distribution(s);
            double off_parity = 0.0;
            for (std::size_t x = 0; x < d.probs.size(); ++x)
                if ((std::popcount(x) & 1) != (t & 1)) off_parity += d.probs[x];
            CHECK(off_parity < 1e-12);
            walk::step_inplace(s, coin, EdgeMask{});
        }
    }
}

TEST_CASE("parity-restricted references") {
    const Distribution u = Distribution::uniform(5);
    const Distribution even = metrics::restrict_to_parity(u, 0);
    double total = 0.0;
    for (std::size_t x = 0; x < even.probs.size(); ++x) {
        if (std::popcount(x) % 2 == 0) CHECK(even.probs[x] == doctest::Approx(1.0 / 16.0));
        else CHECK(even.probs[x] == 0.0);
        total += even.probs[x];
    }
    CHECK(total == doctest::Approx(1.0));
}

TEST_CASE("aharonov bound") {
    SUBCASE("monotone decreasing in T") {
        double prev = metrics::aharonov_bound(8, 1);
        for (std::int64_t T = 2; T < 100; ++T) {
            const double b = metrics::aharonov_bound(8, T);
            CHECK(b < prev);
            prev = b;
        }
    }
    SUBCASE("spectral gap is 2/sqrt(n)") {
        for (int n = 3; n <= 12; ++n) {
            double min_sep = 10.0;
            for (int h = 1; h <= n - 1; ++h) {
                const double w = spectral::omega(n, h);
                min_sep = std::min(min_sep, std::abs(std::polar(1.0, w) - std::complex<double>{1.0, 0.0}));
            }
            CHECK(min_sep == doctest::Approx(2.0 / std::sqrt(double(n))).epsilon(1e-12));
        }
    }
    SUBCASE("dominates the measured averaged TVD for small n") {
        for (int n : {3, 5}) {
            const Distribution pi = spectral::stationary_pi_closed(n);
            const auto curve = metrics::averaged_tvd_curve(n, pi, 2000);
            for (std::size_t i = 0; i < curve.size(); ++i) {
                REQUIRE(curve[i] <= metrics::aharonov_bound(n, std::int64_t(i) + 1) + 1e-12);
            }
        }
    }
}

TEST_CASE("linear_fit recovers an exact line") {
    const std::vector<double> x = {1, 2, 3, 4, 5};
    const std::vector<double> y = {3.5, 5.0, 6.5, 8.0, 9.5};
    const auto f = metrics::linear_fit(x, y);
    CHECK(f.slope == doctest::Approx(1.5));
    CHECK(f.intercept == doctest::Approx(2.0));
    CHECK(f.r2 == doctest::Approx(1.0));
}
