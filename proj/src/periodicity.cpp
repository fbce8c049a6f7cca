#include "electra/periodicity.hpp"

#include "electra/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace electra {

std::vector<PeriodicitySample> periodicity_samples(const PhaseTable& table, double alpha, int n_lo, int n_hi) {
    if (n_lo < 1 || n_hi < n_lo) throw DomainError("periodicity_samples: empty n range");
    if (n_hi > table.max_n()) throw DomainError("periodicity_samples: table stops at n = " + std::to_string(table.max_n()));
    std::vector<PeriodicitySample> raw;
    for (int n = n_lo; n <= n_hi; ++n) {
        const double shift = log_base(n, alpha);
        for (int j = 0; j <= table.j_max(); ++j) {
            const double p = table.prob(n, j);
            if (p > 1e-15) raw.push_back({j - shift, p});
        }
    }
    std::sort(raw.begin(), raw.end(), [](const auto& a, const auto& b) { return a.y < b.y; });
    // Equal y from distinct (n, j) are two readings of the same density value.
    std::vector<PeriodicitySample> out;
    for (std::size_t i = 0; i < raw.size();) {
        std::size_t k = i;
        double mass = 0.0;
        while (k < raw.size() && raw[k].y - raw[i].y < 1e-12) mass += raw[k++].mass;
        out.push_back({raw[i].y, mass / static_cast<double>(k - i)});
        i = k;
    }
    return out;
}

std::vector<double> quadrature_weights(const std::vector<PeriodicitySample>& s) {
    const std::size_t n = s.size();
    if (n < 3) throw DomainError("quadrature needs at least 3 samples");
    std::vector<double> w(n);
    w[0] = (s[1].y - s[0].y) / 2;
    w[n - 1] = (s[n - 1].y - s[n - 2].y) / 2;
    for (std::size_t k = 1; k + 1 < n; ++k) w[k] = (s[k + 1].y - s[k - 1].y) / 2;
    return w;
}

namespace {

cplx transform(const std::vector<PeriodicitySample>& s, const std::vector<double>& w, cplx a) {
    cplx sum = 0.0;
    for (std::size_t k = 0; k < s.size(); ++k) sum += std::exp(a * s[k].y) * (s[k].mass * w[k]);
    return sum;
}

}  // namespace

cplx laplace_transform(const std::vector<PeriodicitySample>& samples, cplx a) {
    return transform(samples, quadrature_weights(samples), a);
}

cplx PeriodicityFit::laplace(cplx a) const { return transform(samples_, weights_, a); }

cplx PeriodicityFit::laplace_derivative(cplx a) const {
    return (laplace(a + kStep) - laplace(a - kStep)) / (2.0 * kStep);
}

double PeriodicityFit::w1(double x) const {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    double sum = 0.0;
    for (int l = 1; l <= L_; ++l) {
        // l and -l pair up to 2 Re(c_l e^{2 pi l i x}) up to the asymmetry of the quadrature.
        sum += (coefficient(l) * std::polar(1.0, two_pi * l * x)).real();
        sum += (coefficient(-l) * std::polar(1.0, -two_pi * l * x)).real();
    }
    return sum;
}

PeriodicityFit periodicity_reconstruct(std::vector<PeriodicitySample> samples, int L) {
    if (L < 1) throw DomainError("periodicity_reconstruct needs L >= 1");
    std::sort(samples.begin(), samples.end(), [](const auto& a, const auto& b) { return a.y < b.y; });
    PeriodicityFit fit;
    fit.weights_ = quadrature_weights(samples);
    fit.samples_ = std::move(samples);
    fit.L_ = L;
    fit.m1_ = fit.laplace_derivative(0.0).real();
    constexpr double two_pi = 2.0 * std::numbers::pi;
    for (int l = -L; l <= L; ++l) fit.coeffs_.push_back(fit.laplace_derivative(cplx(0.0, two_pi * l)));
    return fit;
}

}  // namespace electra
