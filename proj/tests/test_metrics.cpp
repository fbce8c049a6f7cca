#include <doctest.h>

#include "electra/metrics.hpp"
#include "electra/special_functions.hpp"

#include <cmath>
#include <numbers>
#include <random>

using namespace electra;

namespace {

IntegerLaw random_law(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> off(-5, 5), len(1, 8);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    IntegerLaw l{off(rng), std::vector<double>(static_cast<std::size_t>(len(rng)))};
    double s = 0.0;
    for (double& p : l.probs) s += (p = u(rng));
    for (double& p : l.probs) p /= s;
    return l;
}

}  // namespace

TEST_CASE("distance basics") {
    IntegerLaw l{2, {0.25, 0.5, 0.25}};
    CHECK(dtv(l, l) == 0.0);
    CHECK(dw(l, l) == 0.0);
    CHECK(dtv(IntegerLaw::point_mass(0), IntegerLaw::point_mass(1)) == 1.0);
    CHECK(dw(l, l.shifted(1)) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(dw(IntegerLaw::point_mass(0), IntegerLaw::point_mass(3)) == 3.0);
    CHECK_THROWS_AS((IntegerLaw{0, {0.5, 0.6}}.validate()), DomainError);
    CHECK_THROWS_AS((IntegerLaw{0, {1.5, -0.5}}.validate()), DomainError);
}

TEST_CASE("metric properties on random pairs") {
    std::mt19937_64 rng(99);
    for (int i = 0; i < 300; ++i) {
        auto a = random_law(rng), b = random_law(rng), c = random_law(rng);
        CHECK(dtv(a, b) <= dw(a, b) + 1e-15);
        CHECK(dtv(a, b) == doctest::Approx(dtv(b, a)));
        CHECK(dw(a, b) == doctest::Approx(dw(b, a)));
        CHECK(dtv(a, c) <= dtv(a, b) + dtv(b, c) + 1e-15);
        CHECK(dw(a, c) <= dw(a, b) + dw(b, c) + 1e-12);
        CHECK(dtv(a, b) <= 1.0 + 1e-15);
        // Moving any mass makes both distances positive.
        auto p = a;
        if (p.probs.size() >= 2) {
            p.probs[0] += 1e-6;
            p.probs[1] -= 1e-6;
            CHECK(dtv(a, p) > 0.0);
            CHECK(dw(a, p) > 0.0);
        }
    }
}

TEST_CASE("exact distances") {
    RationalDist a{0, {Rational(1, 2), Rational(1, 2)}};
    RationalDist b{1, {Rational(1, 2), Rational(1, 2)}};
    CHECK(exact_dtv(a, b) == Rational(1, 2));
    CHECK(exact_dw(a, b) == 1);
}

TEST_CASE("toy X_6 equals the law of ceil(Z + log2 6)") {
    auto t = compute_phase_table(SurvivorModel::toy_halving(), 6);
    auto x6 = exact_phase_law(t, 6);
    // Build the ceil law exactly from F(j - log2 6).
    RationalDist ceil_law{0, {}};
    for (int j = 0; j <= t.j_max(); ++j) ceil_law.probs.push_back(toy_exact_cdf(6, j) - (j ? toy_exact_cdf(6, j - 1) : 0));
    CHECK(exact_dtv(x6, ceil_law) == 0);
    auto F = [](double x) { return toy_closed_forms(x).F; };
    CHECK(dtv(phase_law(t, 6), ceil_shift_law(F, std::log2(6.0))) < 1e-14);
}

TEST_CASE("fair coin neighbouring laws get closer") {
    auto t = compute_phase_table(SurvivorModel::fair_coin(), 129);
    double prev = 1e9;
    for (int n : {16, 32, 64, 128}) {
        const double d = dw(phase_law(t, n), phase_law(t, n + 1));
        CAPTURE(n);
        CHECK(d > 0.0);
        CHECK(d < prev);
        CHECK(n * d < 2.0);  // d = O(1/n)
        prev = d;
    }
}

TEST_CASE("toy closed forms") {
    CHECK(toy_closed_forms(0.0).F == 1.0);
    CHECK(toy_closed_forms(-1.0).F == 0.0);
    CHECK(toy_closed_forms(-0.5).F == doctest::Approx(2 - std::sqrt(2.0)));
    for (int x = -3; x <= 5; ++x) CHECK(toy_closed_forms(x).phi == 0.0);
    CHECK(toy_closed_forms(std::log2(6.0)).pi2 < 1e-15);
    CHECK(toy_exact_pi2(6) == 0);
    CHECK(toy_exact_pi2(5) == Rational(1, 2));
    CHECK(toy_exact_mean(6) == Rational(5, 2));
    CHECK(toy_exact_cdf(6, 3) == 1);
    CHECK(toy_exact_cdf(6, 2) == Rational(1, 2));
}

TEST_CASE("complex gamma and zeta") {
    auto near = [](cplx a, cplx b, double tol) { return std::abs(a - b) <= tol * std::abs(b); };
    CHECK(near(gamma({1.0, 1.0}), {0.498015668118356042713691117462, -0.154949828301810685124955130484}, 1e-13));
    CHECK(near(gamma({0.3, -4.5}), {-0.000598222596344536171978805805209, -0.00146274438921040039808090865646}, 1e-12));
    CHECK(near(gamma({5.0, 0.0}), {24.0, 0.0}, 1e-14));
    CHECK(near(zeta({1.0, 1.0}), {0.582158059752003648199463167914, -0.926848564330807076536424313918}, 1e-13));
    CHECK(near(zeta({0.5, 30.0}), {-0.120642287590043699914021147312, -0.583691214763706288757635825664}, 1e-12));
    CHECK(near(zeta({2.0, 0.0}), {std::numbers::pi * std::numbers::pi / 6.0, 0.0}, 1e-14));
    CHECK(near(zeta({-1.0, 0.0}), {-1.0 / 12.0, 0.0}, 1e-12));
    const cplx s1(1.0, -2.0 * std::numbers::pi / std::numbers::ln2);
    CHECK(near(zeta(s1), {1.34657954283631703147353, -0.1098831367962696375666192}, 1e-12));
    CHECK(near(gamma(s1), {3.17662264521537152098737751947e-6, 3.7861079985648222372732892691e-6}, 1e-11));
}

TEST_CASE("fair coin phi") {
    CHECK(fair_coin_phi(1.0) == doctest::Approx(0.499986457141367392).epsilon(1e-12));
    CHECK(fair_coin_phi(1024.0) == doctest::Approx(0.499986457141367392).epsilon(1e-12));
    CHECK(fair_coin_phi(1.5) == doctest::Approx(0.500004685748924454).epsilon(1e-12));
    for (double t : {1.0, 1.3, 2.7, 100.0, 1500.0}) CHECK(std::abs(fair_coin_phi(t) - fair_coin_phi(2 * t)) < 1e-8);
    // Period average equals the constant term.
    double avg = 0.0;
    const int m = 256;
    for (int i = 0; i < m; ++i) avg += fair_coin_phi(std::exp2(static_cast<double>(i) / m));
    CHECK(avg / m == doctest::Approx(fair_coin_phi_constant()).epsilon(1e-12));
    CHECK_THROWS_AS(fair_coin_phi(0.0), DomainError);
}

TEST_CASE("empirical limit of the toy chain collapses exactly") {
    auto t = compute_phase_table(SurvivorModel::toy_halving().with_exact_cutoff(512), 512);
    auto lim = empirical_limit(t, 0.5, 4, 512);
    REQUIRE_FALSE(lim.samples.empty());
    CHECK(lim.max_deviation([](double x) { return toy_closed_forms(x).F; }) < 1e-12);
    CHECK(lim.spread < 1e-4);
    CHECK(lim.monotone_violations == 0);
    CHECK_THROWS_AS(empirical_limit(t, 0.5, 10, 5), DomainError);
    CHECK_THROWS_AS(empirical_limit(t, 0.5, 4, 513), DomainError);
}

TEST_CASE("fair coin limit") {
    auto t = compute_phase_table(SurvivorModel::fair_coin(), 4096);
    auto lim = empirical_limit(t, 0.5, 256, 4096);
    CHECK(lim.max_deviation(fair_coin_F) < 0.01);
    CHECK(lim.monotone_violations == 0);
}

TEST_CASE("the other initialization has a non-monotone limit") {
    EngineOptions o;
    o.init = InitConvention::AltCost;
    auto t = compute_phase_table(SurvivorModel::peaks(PeakVariant::LinearI), 500, o);
    auto lim = empirical_limit(t, 1.0 / 3.0, 5, 500);
    CHECK(lim.monotone_violations > 0);
}
