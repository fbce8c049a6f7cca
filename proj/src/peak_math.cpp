#include "electra/peak_math.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>

namespace electra {

namespace {

void require_positive(int n) {
    if (n < 1) throw DomainError("peak statistics need n >= 1, got " + std::to_string(n));
}

// W(m,k) for 1 <= m <= max_m, rows indexed from k = 0.
std::vector<std::vector<BigInt>> interior_peak_counts(int max_m) {
    std::vector<std::vector<BigInt>> w(static_cast<std::size_t>(max_m) + 1);
    if (max_m < 1) return w;
    w[1] = {BigInt(1)};
    for (int m = 2; m <= max_m; ++m) {
        const auto& prev = w[static_cast<std::size_t>(m) - 1];
        int hi = (m - 1) / 2;
        std::vector<BigInt> row(static_cast<std::size_t>(hi) + 1);
        for (int k = 0; k <= hi; ++k) {
            BigInt v = 0;
            if (k < static_cast<int>(prev.size())) v += (2 * k + 2) * prev[static_cast<std::size_t>(k)];
            if (k >= 1 && k - 1 < static_cast<int>(prev.size()))
                v += (m - 2 * k) * prev[static_cast<std::size_t>(k) - 1];
            row[static_cast<std::size_t>(k)] = v;
        }
        w[static_cast<std::size_t>(m)] = std::move(row);
    }
    return w;
}

double upper_tail(double z) { return 0.5 * std::erfc(z / std::sqrt(2.0)); }

// P(a < N(0,1) <= b) without cancellation in either tail.
double normal_interval(double a, double b) {
    if (a >= 0.0) return upper_tail(a) - upper_tail(b);
    if (b <= 0.0) return upper_tail(-b) - upper_tail(-a);
    return 1.0 - upper_tail(b) - upper_tail(-a);
}

}  // namespace

std::string to_string(PeakVariant v) {
    switch (v) {
        case PeakVariant::LinearI: return "linear-i";
        case PeakVariant::LinearII: return "linear-ii";
        case PeakVariant::Circular: return "circular";
    }
    return "unknown";
}

int peak_support_lo(PeakVariant v, int n) {
    require_positive(n);
    return v == PeakVariant::LinearI ? 0 : 1;
}

int peak_support_hi(PeakVariant v, int n) {
    require_positive(n);
    switch (v) {
        case PeakVariant::LinearI: return (n - 1) / 2;
        case PeakVariant::LinearII: return (n + 1) / 2;
        case PeakVariant::Circular: return n == 1 ? 1 : n / 2;
    }
    return 0;
}

PeakTable PeakTable::build(PeakVariant variant, int max_n, int cap) {
    require_positive(max_n);
    if (max_n > cap) {
        throw ResourceError("exact peak table up to n=" + std::to_string(max_n) +
                            " exceeds the cap of " + std::to_string(cap));
    }
    PeakTable t(variant, max_n);
    auto w = interior_peak_counts(max_n);
    t.counts_.resize(static_cast<std::size_t>(max_n) + 1);
    t.totals_.resize(static_cast<std::size_t>(max_n) + 1);
    BigInt fact = 1;
    for (int n = 1; n <= max_n; ++n) {
        fact *= n;
        auto& row = t.counts_[static_cast<std::size_t>(n)];
        switch (variant) {
            case PeakVariant::LinearI:
                row = w[static_cast<std::size_t>(n)];
                t.totals_[static_cast<std::size_t>(n)] = fact;
                break;
            case PeakVariant::LinearII:
                // Shifted by one: k peaks here <-> k-1 interior peaks.
                row = w[static_cast<std::size_t>(n)];
                t.totals_[static_cast<std::size_t>(n)] = fact;
                break;
            case PeakVariant::Circular:
                if (n == 1) {
                    row = {BigInt(1)};
                } else {
                    row.clear();
                    for (const auto& c : w[static_cast<std::size_t>(n) - 1]) row.push_back(n * c);
                }
                t.totals_[static_cast<std::size_t>(n)] = fact;
                break;
        }
        int width = peak_support_hi(variant, n) - peak_support_lo(variant, n) + 1;
        row.resize(static_cast<std::size_t>(width), BigInt(0));
    }
    return t;
}

const BigInt& PeakTable::count(int n, int k) const {
    if (n < 1 || n > max_n_) throw DomainError("row " + std::to_string(n) + " outside table");
    int lo = peak_support_lo(variant_, n);
    const auto& row = counts_[static_cast<std::size_t>(n)];
    if (k < lo || k - lo >= static_cast<int>(row.size())) return zero_;
    return row[static_cast<std::size_t>(k - lo)];
}

const BigInt& PeakTable::total(int n) const {
    if (n < 1 || n > max_n_) throw DomainError("row " + std::to_string(n) + " outside table");
    return totals_[static_cast<std::size_t>(n)];
}

Rational PeakTable::prob(int n, int k) const {
    Rational q(count(n, k), total(n));
    q.canonicalize();
    return q;
}

RationalDist PeakTable::row(int n) const {
    RationalDist d;
    d.offset = peak_support_lo(variant_, n);
    int hi = peak_support_hi(variant_, n);
    for (int k = d.offset; k <= hi; ++k) d.probs.push_back(prob(n, k));
    return d;
}

void PeakTable::write_csv(std::ostream& out) const {
    out << "n,k,numerator,denominator\n";
    for (int n = 1; n <= max_n_; ++n) {
        RationalDist d = row(n);
        for (int k = d.lo(); k <= d.hi(); ++k) {
            const Rational& q = d.probs[static_cast<std::size_t>(k - d.lo())];
            out << n << ',' << k << ',' << q.get_num().get_str() << ',' << q.get_den().get_str() << '\n';
        }
    }
}

RationalDist brute_force_peaks(PeakVariant variant, int n) {
    require_positive(n);
    if (n > 10) throw DomainError("brute-force enumeration is limited to n <= 10");
    std::vector<int> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 1);
    std::vector<long> hist(static_cast<std::size_t>(n) + 2, 0);
    const int lo_sentinel = variant == PeakVariant::LinearI ? n + 1 : 0;
    do {
        int peaks = 0;
        for (int i = 0; i < n; ++i) {
            int left = 0;
            int right = 0;
            if (variant == PeakVariant::Circular) {
                if (n == 1) {
                    ++peaks;
                    continue;
                }
                left = perm[static_cast<std::size_t>((i + n - 1) % n)];
                right = perm[static_cast<std::size_t>((i + 1) % n)];
            } else {
                left = i > 0 ? perm[static_cast<std::size_t>(i) - 1] : lo_sentinel;
                right = i < n - 1 ? perm[static_cast<std::size_t>(i) + 1] : lo_sentinel;
            }
            int v = perm[static_cast<std::size_t>(i)];
            if (v > left && v > right) ++peaks;
        }
        ++hist[static_cast<std::size_t>(peaks)];
    } while (std::next_permutation(perm.begin(), perm.end()));

    long total = std::accumulate(hist.begin(), hist.end(), 0L);
    int first = 0;
    while (hist[static_cast<std::size_t>(first)] == 0) ++first;
    int last = static_cast<int>(hist.size()) - 1;
    while (hist[static_cast<std::size_t>(last)] == 0) --last;
    RationalDist d;
    d.offset = first;
    for (int k = first; k <= last; ++k) {
        Rational q(hist[static_cast<std::size_t>(k)], total);
        q.canonicalize();
        d.probs.push_back(q);
    }
    return d;
}

PeakMoments peak_moments(PeakVariant variant, int n) {
    auto circular = [](int m, const char* label) {
        if (m < 3) throw DomainError(std::string(label) + ": peak mean formula needs a larger n");
        PeakMoments pm;
        pm.mean = Rational(m, 3);
        pm.mean.canonicalize();
        if (m >= 5) {
            Rational v(2 * m, 45);
            v.canonicalize();
            pm.variance = v;
        }
        return pm;
    };
    switch (variant) {
        case PeakVariant::LinearI: {
            if (n < 2) throw DomainError("linear-i: peak mean formula needs n >= 2");
            PeakMoments pm;
            pm.mean = Rational(n - 2, 3);
            pm.mean.canonicalize();
            if (n >= 4) {
                Rational v(2 * (n + 1), 45);
                v.canonicalize();
                pm.variance = v;
            }
            return pm;
        }
        case PeakVariant::Circular: return circular(n, "circular");
        case PeakVariant::LinearII: return circular(n + 1, "linear-ii");
    }
    throw DomainError("unknown peak variant");
}

double GaussianApprox::at(int k) const {
    if (k < support_lo || k > support_hi) return 0.0;
    return pmf[static_cast<std::size_t>(k - support_lo)];
}

GaussianApprox gaussian_row(PeakVariant variant, int n, int crossover) {
    if (n <= crossover) {
        throw DomainError("gaussian_row: n=" + std::to_string(n) + " is not above the crossover " +
                          std::to_string(crossover));
    }
    PeakMoments m = peak_moments(variant, n);
    GaussianApprox g;
    g.mean = to_double(m.mean);
    g.variance = to_double(*m.variance);
    g.support_lo = peak_support_lo(variant, n);
    g.support_hi = peak_support_hi(variant, n);
    const double sd = std::sqrt(g.variance);
    double total = 0.0;
    g.pmf.reserve(static_cast<std::size_t>(g.support_hi - g.support_lo + 1));
    for (int k = g.support_lo; k <= g.support_hi; ++k) {
        double p = normal_interval((k - 0.5 - g.mean) / sd, (k + 0.5 - g.mean) / sd);
        g.pmf.push_back(p);
        total += p;
    }
    for (double& p : g.pmf) p /= total;
    return g;
}

}  // namespace electra
