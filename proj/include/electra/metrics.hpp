#pragma once

// Distances between laws on the integers, empirical limit functions, and the
// closed forms of the toy and fair-coin chains.

#include "electra/phase_engine.hpp"
#include "electra/rational.hpp"

#include <functional>
#include <vector>

namespace electra {

/// Law on offset, offset+1, ...; probs sum to 1 within 1e-10.
struct IntegerLaw {
    int offset = 0;
    std::vector<double> probs;

    int lo() const { return offset; }
    int hi() const { return offset + static_cast<int>(probs.size()) - 1; }
    double at(int k) const;
    double cdf(int k) const;
    /// Throws DomainError on negative entries or a total off by more than 1e-10.
    void validate() const;

    static IntegerLaw point_mass(int k);
    static IntegerLaw from(const RationalDist& d);
    IntegerLaw shifted(int by) const;
};

/// Total variation, (1/2) sum_k |A(k) - B(k)|.
double dtv(const IntegerLaw& a, const IntegerLaw& b);
/// Wasserstein distance, sum_k |A(<= k) - B(<= k)|. (This is the integer
/// formula that is sometimes printed under the total-variation label.)
double dw(const IntegerLaw& a, const IntegerLaw& b);

Rational exact_dtv(const RationalDist& a, const RationalDist& b);
Rational exact_dw(const RationalDist& a, const RationalDist& b);

/// Row n of a phase table as a law on j = 0..j_max.
IntegerLaw phase_law(const PhaseTable& table, int n);
/// Exact row; n must be an exact row of the table.
RationalDist exact_phase_law(const PhaseTable& table, int n);

/// Law of ceil(Z + s) for Z with distribution function F. Mass outside the
/// integers j with tail < F(j - s) < 1 - tail is dropped and the rest renormalised.
IntegerLaw ceil_shift_law(const std::function<double(double)>& F, double s, double tail = 1e-13);

/// log n in base 1/alpha.
double log_base(double n, double alpha);

// ---------------------------------------------------------------- limit fits

enum class LimitQuantity { Cdf, Pmf };  // Lambda(n, j) or Pi(n, j)

struct LimitSample {
    double x = 0.0;  // j - log_{1/alpha} n
    double value = 0.0;
    int n = 0;
    int j = 0;
};

struct EmpiricalLimit {
    std::vector<LimitSample> samples;  // sorted by x
    int n_lo = 0;
    int n_hi = 0;
    double bin_width = 0.05;
    /// Largest residual range inside one x-bin, after removing a local
    /// quadratic trend, over samples from the upper half of the n range.
    double spread = 0.0;
    /// Decreases of the bin means (upper-half samples, Cdf only).
    int monotone_violations = 0;

    /// sup |value - F(x)| over all samples.
    double max_deviation(const std::function<double(double)>& F) const;
};

/// Throws DomainError on an empty range or one the table does not cover.
/// Cdf samples are the j with 0 < Lambda(n, j) < 1, Pmf samples those with
/// Pi(n, j) > 0 (both up to 1e-12).
EmpiricalLimit empirical_limit(const PhaseTable& table, double alpha, int n_lo, int n_hi,
                               LimitQuantity quantity = LimitQuantity::Cdf, double bin_width = 0.05);

// -------------------------------------------------------------- closed forms

/// Halving toy chain, with f = x - floor(x):
///   F(x) = 2 - 2^{-x} on [-1, 0] (0 below, 1 above)
///   phi(2^x) = 2^f - f - 1
///   pi_2(2^x) = |2^{1+f} - 3|
struct ToyClosedForms {
    double F = 0.0;
    double phi = 0.0;
    double pi2 = 0.0;
};

ToyClosedForms toy_closed_forms(double x);

/// Exact versions at integer n (m = floor(log2 n)).
Rational toy_exact_cdf(int n, int j);  // F(j - log2 n)
Rational toy_exact_mean(int n);        // m + n/2^m - 1
Rational toy_exact_pi2(int n);         // |2^{1-m} n - 3|

/// Fair coin: F(x) = 2^{-x} / (exp(2^{-x}) - 1).
double fair_coin_F(double x);

/// Fair coin: phi(t) = 1/2 - (1/log 2) sum_{0<|k|<=L} zeta(1 - chi_k) Gamma(1 - chi_k) e^{2 k pi i log2 t},
/// chi_k = 2 k pi i / log 2.
double fair_coin_phi(double t, int L = 20);
/// Constant term of phi; the k != 0 terms average to zero over a period.
constexpr double fair_coin_phi_constant() { return 0.5; }

}  // namespace electra
