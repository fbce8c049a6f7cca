#pragma once

// Numerical Laplace transform of the sampled limit density and the Fourier
// reconstruction of the periodic part of E X_n:
//   psi~(a)  = sum_k e^{a y_k} Pi_k (y_{k+1} - y_{k-1}) / 2
//   m~_1     = psi~'(0)
//   w_1(x)   = sum_{l != 0} psi~'(2 pi l i) e^{2 pi l i x}
//   E X_n   ~= log_{1/alpha} n + m~_1 + w_1(log_{1/alpha} n)

#include "electra/phase_engine.hpp"
#include "electra/special_functions.hpp"

#include <vector>

namespace electra {

struct PeriodicitySample {
    double y = 0.0;
    double mass = 0.0;
};

/// (j - log_{1/alpha} n, Pi(n, j)) for n_lo <= n <= n_hi and Pi > 1e-15,
/// sorted by y. Samples closer than 1e-12 in y are merged by averaging their mass.
std::vector<PeriodicitySample> periodicity_samples(const PhaseTable& table, double alpha, int n_lo, int n_hi);

/// Quadrature weights; the two endpoints get half their one-sided gap.
std::vector<double> quadrature_weights(const std::vector<PeriodicitySample>& samples);

/// Throws DomainError for fewer than 3 samples.
cplx laplace_transform(const std::vector<PeriodicitySample>& samples, cplx a);

class PeriodicityFit {
  public:
    static constexpr double kStep = 1e-4;

    const std::vector<PeriodicitySample>& samples() const { return samples_; }
    int L() const { return L_; }
    double m1() const { return m1_; }
    /// psi~'(2 pi l i) for l = -L..L.
    cplx coefficient(int l) const { return coeffs_[static_cast<std::size_t>(l + L_)]; }

    cplx laplace(cplx a) const;
    cplx laplace_derivative(cplx a) const;
    double w1(double x) const;
    double reconstruct(double x) const { return m1_ + w1(x); }

  private:
    friend PeriodicityFit periodicity_reconstruct(std::vector<PeriodicitySample>, int);

    std::vector<PeriodicitySample> samples_;
    std::vector<double> weights_;
    int L_ = 0;
    double m1_ = 0.0;
    std::vector<cplx> coeffs_;
};

/// Throws DomainError for L < 1 or fewer than 3 samples.
PeriodicityFit periodicity_reconstruct(std::vector<PeriodicitySample> samples, int L = 5);

}  // namespace electra
