#include <doctest.h>

#include "electra/metrics.hpp"
#include "electra/peak_math.hpp"

#include <sstream>

using namespace electra;

namespace {
const PeakVariant kAll[] = {PeakVariant::LinearI, PeakVariant::LinearII, PeakVariant::Circular};
}

TEST_CASE("linear (i) table against the reference rows") {
    auto t = PeakTable::build(PeakVariant::LinearI, 7);
    CHECK(t.prob(3, 1) == Rational(1, 3));
    CHECK(t.prob(5, 2) == Rational(2, 15));
    CHECK(t.prob(7, 3) == Rational(17, 315));
    CHECK(t.prob(2, 0) == 1);
    CHECK(t.prob(7, 0) == Rational(4, 315));
    CHECK(t.prob(7, 1) == Rational(38, 105));
    CHECK(t.prob(7, 2) == Rational(4, 7));
}

TEST_CASE("circular table against the reference rows") {
    auto t = PeakTable::build(PeakVariant::Circular, 7);
    CHECK(t.prob(7, 1) == Rational(2, 45));
    CHECK(t.prob(7, 2) == Rational(26, 45));
    CHECK(t.prob(7, 3) == Rational(17, 45));
    CHECK(t.prob(1, 1) == 1);
    CHECK(t.prob(4, 2) == Rational(1, 3));
}

TEST_CASE("brute force examples") {
    auto d = brute_force_peaks(PeakVariant::LinearI, 4);
    CHECK(d.at(0) == Rational(1, 3));
    CHECK(d.at(1) == Rational(2, 3));
    CHECK(brute_force_peaks(PeakVariant::LinearI, 1).at(0) == 1);
    // Enumeration of the 120 permutations of 5.
    auto l2 = brute_force_peaks(PeakVariant::LinearII, 5);
    CHECK(l2.at(1) == Rational(2, 15));
    CHECK(l2.at(2) == Rational(11, 15));
    CHECK(l2.at(3) == Rational(2, 15));
    CHECK(l2.total() == 1);
    CHECK_THROWS_AS(brute_force_peaks(PeakVariant::Circular, 11), DomainError);
}

TEST_CASE("recurrence equals enumeration for n <= 8") {
    for (auto v : kAll) {
        auto t = PeakTable::build(v, 8);
        for (int n = 1; n <= 8; ++n) {
            auto bf = brute_force_peaks(v, n);
            auto row = t.row(n);
            CAPTURE(to_string(v));
            CAPTURE(n);
            for (int k = -1; k <= n + 1; ++k) CHECK(row.at(k) == bf.at(k));
        }
    }
}

TEST_CASE("table invariants") {
    auto lin = PeakTable::build(PeakVariant::LinearI, 100);
    auto cir = PeakTable::build(PeakVariant::Circular, 100);
    auto l2 = PeakTable::build(PeakVariant::LinearII, 100);
    for (int n = 1; n <= 100; ++n) {
        CHECK(lin.row(n).total() == 1);
        CHECK(cir.row(n).total() == 1);
        CHECK(cir.prob(n, 0) == 0);
        CHECK(lin.prob(n, (n - 1) / 2 + 1) == 0);
        CHECK(lin.total(n) == cir.total(n));
        if (n >= 2) {
            for (int k = 1; k <= n; ++k) CHECK(cir.prob(n, k) == lin.prob(n - 1, k - 1));
        }
        for (int k = 0; k <= n; ++k) CHECK(l2.prob(n, k + 1) == lin.prob(n, k));
    }
}

TEST_CASE("cap is enforced") {
    CHECK_THROWS_AS(PeakTable::build(PeakVariant::LinearI, 121), ResourceError);
    CHECK_NOTHROW(PeakTable::build(PeakVariant::LinearI, 130, 130));
    CHECK_THROWS_AS(PeakTable::build(PeakVariant::LinearI, 0), DomainError);
}

TEST_CASE("closed-form moments") {
    auto m = peak_moments(PeakVariant::LinearI, 7);
    CHECK(m.mean == Rational(5, 3));
    REQUIRE(m.variance);
    CHECK(*m.variance == Rational(16, 45));
    CHECK(peak_moments(PeakVariant::Circular, 3).mean == 1);
    CHECK_FALSE(peak_moments(PeakVariant::Circular, 3).variance);
    CHECK_THROWS_AS(peak_moments(PeakVariant::LinearI, 1), DomainError);

    auto t = PeakTable::build(PeakVariant::LinearI, 20);
    auto row = t.row(20);
    Rational mean = 0, sq = 0;
    for (int k = row.lo(); k <= row.hi(); ++k) {
        mean += k * row.at(k);
        sq += k * k * row.at(k);
    }
    auto m20 = peak_moments(PeakVariant::LinearI, 20);
    CHECK(mean == m20.mean);
    CHECK(sq - mean * mean == *m20.variance);
}

TEST_CASE("gaussian rows") {
    auto g = gaussian_row(PeakVariant::LinearI, 76);
    CHECK(g.support_hi == 37);
    double total = 0.0;
    for (double p : g.pmf) total += p;
    CHECK(total == doctest::Approx(1.0).epsilon(1e-14));

    auto g200 = gaussian_row(PeakVariant::LinearI, 200);
    double mean = 0.0, mass = 0.0;
    for (int k = g200.support_lo; k <= g200.support_hi; ++k) {
        mean += k * g200.at(k);
        mass += g200.at(k);
    }
    CHECK(std::abs(mean - 66.0) < 0.01);
    CHECK(mass == doctest::Approx(1.0).epsilon(1e-14));

    auto gc = gaussian_row(PeakVariant::Circular, 1000);
    double mc = 0.0;
    for (int k = gc.support_lo; k <= gc.support_hi; ++k) mc += k * gc.at(k);
    CHECK(std::abs(mc - 1000.0 / 3.0) < 0.01);

    CHECK_THROWS_AS(gaussian_row(PeakVariant::LinearI, 75), DomainError);
}

TEST_CASE("gaussian gap to the exact row shrinks with n") {
    // Frozen from the first verified run (linear (i)): 0.0068467, 0.0059484, 0.0054640.
    auto t = PeakTable::build(PeakVariant::LinearI, 200, 200);
    auto gap = [&](int n) {
        auto g = gaussian_row(PeakVariant::LinearI, n, n - 1);
        return dtv(IntegerLaw::from(t.row(n)), IntegerLaw{g.support_lo, g.pmf});
    };
    const double g60 = gap(60), g70 = gap(70), g75 = gap(75);
    CHECK(g60 > g70);
    CHECK(g70 > g75);
    CHECK(g75 < 0.0055);
    CHECK(g60 == doctest::Approx(0.0068467).epsilon(1e-4));
    CHECK(gap(200) < 0.003);
}

TEST_CASE("table csv") {
    std::ostringstream s;
    PeakTable::build(PeakVariant::LinearI, 3).write_csv(s);
    CHECK(s.str() == "n,k,numerator,denominator\n1,0,1,1\n2,0,1,1\n3,0,2,3\n3,1,1,3\n");
}
