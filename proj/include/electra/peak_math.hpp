#pragma once

// Distribution of the number of peaks of a uniformly random permutation,
// arranged in a line or in a circle.
//
// A position i is a peak when its key exceeds both neighbours. Boundary
// conventions:
//   LinearI   ends have a +inf outside neighbour, so they are never peaks;
//   LinearII  ends have a -inf outside neighbour;
//   Circular  indices wrap; a ring of one element has one peak.
//
// All three laws come from a single integer table W(n,k), the number of
// permutations of n with k interior peaks:
//   W(1,0) = 1,  W(n,k) = (2k+2) W(n-1,k) + (n-2k) W(n-1,k-1).
// Removing the maximum of a ring of n+1 leaves a LinearI line of n, and
// removing the minimum leaves a LinearII line, so
//   P_LinearI(n,k)  = W(n,k) / n!
//   P_Circular(n,k) = W(n-1,k-1) / (n-1)!        (n >= 2)
//   P_LinearII(n,k) = W(n,k-1) / n!

#include "electra/rational.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace electra {

enum class PeakVariant { LinearI, LinearII, Circular };

std::string to_string(PeakVariant v);

inline constexpr int kDefaultPeakCap = 120;
inline constexpr int kDefaultExactCutoff = 75;

/// Smallest and largest possible peak counts for n elements.
int peak_support_lo(PeakVariant v, int n);
int peak_support_hi(PeakVariant v, int n);

class PeakTable {
  public:
    /// Throws DomainError for max_n < 1, ResourceError for max_n > cap.
    static PeakTable build(PeakVariant variant, int max_n, int cap = kDefaultPeakCap);

    PeakVariant variant() const { return variant_; }
    int max_n() const { return max_n_; }

    /// Permutation count with k peaks; the row total is n!.
    const BigInt& count(int n, int k) const;
    const BigInt& total(int n) const;

    Rational prob(int n, int k) const;
    /// Full row as exact probabilities over [peak_support_lo, peak_support_hi].
    RationalDist row(int n) const;

    /// CSV with header `n,k,numerator,denominator`, one line per support point.
    void write_csv(std::ostream& out) const;

  private:
    PeakTable(PeakVariant v, int max_n) : variant_(v), max_n_(max_n) {}

    PeakVariant variant_;
    int max_n_;
    std::vector<std::vector<BigInt>> counts_;  // counts_[n][k - lo(n)]
    std::vector<BigInt> totals_;
    BigInt zero_ = 0;
};

/// Exact law by enumerating all n! permutations. Independent of PeakTable.
RationalDist brute_force_peaks(PeakVariant variant, int n);

struct PeakMoments {
    Rational mean;
    std::optional<Rational> variance;  // absent below the variance formula's range
};

/// Closed-form mean and variance.
///   LinearI:  mean (n-2)/3 for n >= 2, variance 2(n+1)/45 for n >= 4
///   Circular: mean n/3 for n >= 3, variance 2n/45 for n >= 5
///   LinearII: the circular formulas at n+1
PeakMoments peak_moments(PeakVariant variant, int n);

struct GaussianApprox {
    double mean = 0.0;
    double variance = 0.0;
    int support_lo = 0;
    int support_hi = 0;
    std::vector<double> pmf;  // pmf[k - support_lo]

    double at(int k) const;
};

/// Normal approximation discretised at k +/- 1/2 and renormalised over the
/// true support. Requires n > crossover.
GaussianApprox gaussian_row(PeakVariant variant, int n, int crossover = kDefaultExactCutoff);

}  // namespace electra
