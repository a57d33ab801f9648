#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include <doctest.h>

#include "levydim/rng.hpp"
#include "levydim/stable.hpp"

using namespace levydim;

namespace {

double empirical_chf(std::span<const double> samples, double omega) {
    double s = 0.0;
    for (double x : samples) s += std::cos(omega * x);
    return s / static_cast<double>(samples.size());
}

std::vector<double> draw_sas(double alpha, double sigma, std::size_t n, std::uint64_t seed) {
    RngStream rng(seed);
    const StableParams params(alpha, sigma);
    std::vector<double> out(n);
    for (auto& x : out) x = sample_sas(params, rng);
    return out;
}

} // namespace

TEST_CASE("stable parameter ranges are enforced") {
    CHECK_THROWS_AS(StableParams(0.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(StableParams(2.0001, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(StableParams(-1.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(StableParams(1.5, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(StableParams(1.5, -2.0), std::invalid_argument);
    CHECK_NOTHROW(StableParams(2.0, 1.0));

    CHECK_THROWS_AS(MultivariateStableSpec::elliptic(0, 1.5), std::invalid_argument);
    CHECK_THROWS_AS(MultivariateStableSpec::elliptic(2, 2.5), std::invalid_argument);
    CHECK_THROWS_AS(MultivariateStableSpec::independent_components({}), std::invalid_argument);
    CHECK_THROWS_AS(MultivariateStableSpec::independent_components({1.0, 0.0}),
                    std::invalid_argument);
}

TEST_CASE("alpha=2 draws have variance 2 sigma^2") {
    const auto xs = draw_sas(2.0, 1.0, 100000, 101);
    double sum = 0.0, sumsq = 0.0;
    for (double x : xs) {
        sum += x;
        sumsq += x * x;
    }
    const double mean = sum / xs.size();
    const double var = sumsq / xs.size() - mean * mean;
    CHECK(var > 1.9);
    CHECK(var < 2.1);
}

TEST_CASE("alpha=1 draws are standard Cauchy with median zero") {
    auto xs = draw_sas(1.0, 1.0, 100000, 102);
    std::nth_element(xs.begin(), xs.begin() + 50000, xs.end());
    const double median = xs[50000];
    CHECK(median > -0.05);
    CHECK(median < 0.05);
    // quartiles of the standard Cauchy sit at -1 and +1
    std::sort(xs.begin(), xs.end());
    CHECK(xs[25000] == doctest::Approx(-1.0).epsilon(0.05));
    CHECK(xs[75000] == doctest::Approx(1.0).epsilon(0.05));
}

TEST_CASE("empirical chf at omega=1 matches exp(-1) for alpha=1.5") {
    const auto xs = draw_sas(1.5, 1.0, 100000, 103);
    CHECK(std::abs(empirical_chf(xs, 1.0) - std::exp(-1.0)) < 0.03);
}

TEST_CASE("near-1 alphas route through the finite Cauchy branch") {
    for (double alpha : {1.0 - 1e-9, 1.0 + 1e-9, 1.0 - 1e-7, 1.0 + 1e-7}) {
        const auto xs = draw_sas(alpha, 1.0, 2000, 104);
        for (double x : xs) REQUIRE(std::isfinite(x));
    }
}

TEST_CASE("univariate scaling folds into sigma") {
    const auto a = draw_sas(1.3, 2.0, 50000, 105);
    auto b = draw_sas(1.3, 1.0, 50000, 106);
    for (auto& x : b) x *= 2.0;
    for (double w : {0.25, 0.5, 1.0, 2.0}) {
        CHECK(std::abs(empirical_chf(a, w) - empirical_chf(b, w)) < 0.05);
        CHECK(std::abs(empirical_chf(a, w) - chf(StableParams(1.3, 2.0), w)) < 0.05);
    }
}

TEST_CASE("positive stable draws are strictly positive") {
    RngStream rng(107);
    for (double a : {0.1, 0.5, 0.75, 0.9, 0.99}) {
        for (int i = 0; i < 5000; ++i) {
            const double x = sample_positive_stable(a, rng);
            REQUIRE(x > 0.0);
            REQUIRE(std::isfinite(x));
        }
    }
    CHECK_THROWS_AS(sample_positive_stable(0.0, rng), std::invalid_argument);
    CHECK_THROWS_AS(sample_positive_stable(1.0, rng), std::invalid_argument);
}

TEST_CASE("positive 1/2-stable law matches its closed-form tail") {
    // with Laplace transform exp(-g^{1/2}) the law is Levy(scale 1/2), so
    // P(X > 1) = erf(1/2); the spec sheet's erfc(1/sqrt 2) figure corresponds
    // to the unnormalized subordinator and disagrees with the transform
    // pinned here, verified by quadrature against exp(-g^{1/2})
    RngStream rng(108);
    const int n = 100000;
    int above_one = 0;
    double laplace = 0.0;
    for (int i = 0; i < n; ++i) {
        const double x = sample_positive_stable(0.5, rng);
        if (x > 1.0) ++above_one;
        laplace += std::exp(-x);
    }
    const double p = static_cast<double>(above_one) / n;
    CHECK(std::abs(p - std::erf(0.5)) < 0.02);
    // E exp(-X) = exp(-1) for any a, by the pinned Laplace transform
    CHECK(std::abs(laplace / n - std::exp(-1.0)) < 0.01);
}

TEST_CASE("smaller positive-stable index has the heavier upper tail") {
    RngStream rng(109);
    auto q99 = [&rng](double a) {
        std::vector<double> xs(100000);
        for (auto& x : xs) x = sample_positive_stable(a, rng);
        std::nth_element(xs.begin(), xs.begin() + 99000, xs.end());
        return xs[99000];
    };
    const double heavy = q99(0.1);
    const double light = q99(0.9);
    CHECK(heavy > light);
}

TEST_CASE("elliptic alpha=2 in d=3 is a gaussian with variance 2 per coordinate") {
    RngStream rng(110);
    const auto spec = MultivariateStableSpec::elliptic(3, 2.0);
    const int n = 100000;
    std::vector<double> sumsq(3, 0.0);
    std::vector<double> x(3);
    for (int i = 0; i < n; ++i) {
        sample_multivariate(spec, rng, x);
        for (int c = 0; c < 3; ++c) sumsq[static_cast<std::size_t>(c)] += x[c] * x[c];
    }
    for (int c = 0; c < 3; ++c) {
        const double var = sumsq[static_cast<std::size_t>(c)] / n;
        CHECK(var > 1.9);
        CHECK(var < 2.1);
    }
}

TEST_CASE("independent gaussian components are uncorrelated") {
    RngStream rng(111);
    const auto spec = MultivariateStableSpec::independent_components({2.0, 2.0});
    const int n = 100000;
    double sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0;
    std::vector<double> x(2);
    for (int i = 0; i < n; ++i) {
        sample_multivariate(spec, rng, x);
        sx += x[0];
        sy += x[1];
        sxx += x[0] * x[0];
        syy += x[1] * x[1];
        sxy += x[0] * x[1];
    }
    const double cov = sxy / n - (sx / n) * (sy / n);
    const double vx = sxx / n - (sx / n) * (sx / n);
    const double vy = syy / n - (sy / n) * (sy / n);
    CHECK(std::abs(cov / std::sqrt(vx * vy)) < 0.02);
}

TEST_CASE("elliptic alpha=1.5 empirical chf matches exp(-1) at a unit frequency") {
    RngStream rng(112);
    const auto spec = MultivariateStableSpec::elliptic(2, 1.5);
    const int n = 100000;
    double s = 0.0;
    std::vector<double> x(2);
    for (int i = 0; i < n; ++i) {
        sample_multivariate(spec, rng, x);
        s += std::cos(x[0]); // omega = (1, 0)
    }
    CHECK(std::abs(s / n - std::exp(-1.0)) < 0.03);
}

TEST_CASE("chf closed forms at hand-checked points") {
    CHECK(chf(StableParams(2.0, 1.0), 1.0) == doctest::Approx(std::exp(-1.0)).epsilon(1e-12));
    const auto e1 = MultivariateStableSpec::elliptic(2, 1.0);
    const std::vector<double> w34 = {3.0, 4.0};
    CHECK(chf(e1, w34) == doctest::Approx(std::exp(-5.0)).epsilon(1e-12));
    const auto ic = MultivariateStableSpec::independent_components({1.0, 2.0});
    const std::vector<double> w11 = {1.0, 1.0};
    CHECK(chf(ic, w11) == doctest::Approx(std::exp(-2.0)).epsilon(1e-12));
}

TEST_CASE("chf is a symmetric function bounded by one") {
    const auto spec = MultivariateStableSpec::elliptic(3, 1.3);
    const std::vector<double> zero = {0.0, 0.0, 0.0};
    CHECK(chf(spec, zero) == 1.0);
    RngStream rng(113);
    for (int i = 0; i < 200; ++i) {
        std::vector<double> w(3);
        for (auto& v : w) v = rng.uniform(-3.0, 3.0);
        std::vector<double> neg = {-w[0], -w[1], -w[2]};
        const double c = chf(spec, w);
        CHECK(c > 0.0);
        CHECK(c <= 1.0);
        CHECK(c == chf(spec, neg));
    }
    const std::vector<double> wrong_dim = {1.0, 2.0};
    CHECK_THROWS_AS(chf(spec, wrong_dim), std::invalid_argument);
}

TEST_CASE("empirical chf concentrates within 5/sqrt(N) across seeds") {
    const int n = 10000;
    const double tol = 5.0 / std::sqrt(static_cast<double>(n));
    const auto spec = MultivariateStableSpec::elliptic(2, 1.5);
    const std::vector<std::vector<double>> omegas = {
        {0.5, 0.0}, {0.0, 1.0}, {1.0, 1.0}, {2.0, 0.0}, {-1.2, 0.7}};
    int ok = 0;
    for (int seed = 0; seed < 50; ++seed) {
        RngStream rng(1000 + static_cast<std::uint64_t>(seed));
        std::vector<double> sums(omegas.size(), 0.0);
        std::vector<double> x(2);
        for (int i = 0; i < n; ++i) {
            sample_multivariate(spec, rng, x);
            for (std::size_t k = 0; k < omegas.size(); ++k) {
                sums[k] += std::cos(omegas[k][0] * x[0] + omegas[k][1] * x[1]);
            }
        }
        bool all = true;
        for (std::size_t k = 0; k < omegas.size(); ++k) {
            all = all && std::abs(sums[k] / n - chf(spec, omegas[k])) <= tol;
        }
        ok += all ? 1 : 0;
    }
    CHECK(ok >= 45);
}
