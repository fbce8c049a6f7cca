#pragma once

// Finite-range evidence for the three regularity conditions on Y_n:
//   (i)   stochastic monotonicity  Pr(Y_{n+1} <= k) <= Pr(Y_n <= k)
//   (ii)  mean increments          E Y_{n+1} - E Y_n -> alpha
//   (iii) concentration            Pr(|Y_n - alpha n| > delta_n n) = O(n^{-2-eps})
// plus the moment bound E|Y_n - alpha n|^p = O(n^{p/2}) that implies (iii).
// Asymptotic statements cannot be settled at finite n, so every check returns
// the raw series and a verdict against configurable bounds.

#include "electra/survivor_models.hpp"

#include <functional>
#include <string>
#include <vector>

namespace electra {

enum class Verdict { Pass, Fail, Inconclusive };

std::string to_string(Verdict v);

struct ConditionOptions {
    double monotone_tol = 1e-12;
    int increment_n0 = 30;  // increments are judged for n >= min(n0, n_max / 2)
    double increment_tol = 0.01;
    double delta_exponent = 0.25;  // delta_n = n^{-delta_exponent}
    double epsilon = 0.5;
    double concentration_bound = 1.0;  // on the upper half of the range
    int moment_p = 6;
    double moment_bound = 10.0;  // on the upper half of the range
};

struct MonotoneViolation {
    int n = 0;
    int k = 0;
    double gap = 0.0;  // Pr(Y_{n+1} <= k) - Pr(Y_n <= k)
};

struct MonotoneCheck {
    std::vector<MonotoneViolation> violations;  // ordered by n, then k
    Verdict verdict = Verdict::Inconclusive;
};

struct SeriesPoint {
    int n = 0;
    double value = 0.0;
};

struct IncrementCheck {
    std::vector<SeriesPoint> increments;  // d_n = E Y_{n+1} - E Y_n
    int n0 = 0;
    double max_deviation = 0.0;  // max_{n >= n0} |d_n - alpha|
    Verdict verdict = Verdict::Inconclusive;
};

struct SeriesCheck {
    std::vector<SeriesPoint> series;
    double tail_max = 0.0;  // max over n >= n_max / 2
    Verdict verdict = Verdict::Inconclusive;
};

MonotoneCheck check_monotone(const SurvivorModel& model, int n_max, const ConditionOptions& opts = {});

IncrementCheck check_mean_increment(const SurvivorModel& model, int n_max, const Rational& alpha,
                                    const ConditionOptions& opts = {});

/// Series Pr(|Y_n - alpha n| > delta(n) n) * n^{2+eps}. An empty delta uses
/// n^{-opts.delta_exponent}.
SeriesCheck check_concentration(const SurvivorModel& model, int n_max, const Rational& alpha,
                                const std::function<double(int)>& delta = {}, const ConditionOptions& opts = {});

/// Series E|Y_n - alpha n|^p / n^{p/2}; p must be even and >= 2.
SeriesCheck check_moment(const SurvivorModel& model, int n_max, const Rational& alpha, int p,
                         const ConditionOptions& opts = {});

struct ConditionReport {
    std::string model;
    int n_max = 0;
    Rational alpha;
    MonotoneCheck monotone;
    IncrementCheck increment;
    SeriesCheck concentration;
    SeriesCheck moment;

    Verdict overall() const;
    /// `condition PASS model=... i=PASS ii=PASS iii=PASS ymom=PASS`
    std::string summary_line() const;
};

ConditionReport check_conditions(const SurvivorModel& model, int n_max, const Rational& alpha,
                                 const ConditionOptions& opts = {});

}  // namespace electra
