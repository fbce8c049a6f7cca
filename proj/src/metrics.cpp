#include "electra/metrics.hpp"

#include "electra/special_functions.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <numbers>

namespace electra {

double IntegerLaw::at(int k) const {
    if (k < lo() || k > hi()) return 0.0;
    return probs[static_cast<std::size_t>(k - offset)];
}

double IntegerLaw::cdf(int k) const {
    double acc = 0.0;
    for (int i = lo(); i <= std::min(k, hi()); ++i) acc += at(i);
    return acc;
}

void IntegerLaw::validate() const {
    double total = 0.0;
    for (double p : probs) {
        if (!(p >= 0.0)) throw DomainError("IntegerLaw: negative or NaN probability");
        total += p;
    }
    if (std::abs(total - 1.0) > 1e-10) throw DomainError("IntegerLaw: probabilities sum to " + std::to_string(total));
}

IntegerLaw IntegerLaw::point_mass(int k) { return IntegerLaw{k, {1.0}}; }

IntegerLaw IntegerLaw::from(const RationalDist& d) {
    IntegerLaw law{d.offset, {}};
    law.probs.reserve(d.probs.size());
    for (const auto& p : d.probs) law.probs.push_back(to_double(p));
    return law;
}

IntegerLaw IntegerLaw::shifted(int by) const { return IntegerLaw{offset + by, probs}; }

double dtv(const IntegerLaw& a, const IntegerLaw& b) {
    const int lo = std::min(a.lo(), b.lo());
    const int hi = std::max(a.hi(), b.hi());
    double s = 0.0;
    for (int k = lo; k <= hi; ++k) s += std::abs(a.at(k) - b.at(k));
    return 0.5 * s;
}

double dw(const IntegerLaw& a, const IntegerLaw& b) {
    const int lo = std::min(a.lo(), b.lo());
    const int hi = std::max(a.hi(), b.hi());
    double ca = 0.0, cb = 0.0, s = 0.0;
    for (int k = lo; k <= hi; ++k) {
        ca += a.at(k);
        cb += b.at(k);
        s += std::abs(ca - cb);
    }
    return s;
}

Rational exact_dtv(const RationalDist& a, const RationalDist& b) {
    const int lo = std::min(a.lo(), b.lo());
    const int hi = std::max(a.hi(), b.hi());
    Rational s = 0;
    for (int k = lo; k <= hi; ++k) s += abs(Rational(a.at(k) - b.at(k)));
    return s / 2;
}

Rational exact_dw(const RationalDist& a, const RationalDist& b) {
    const int lo = std::min(a.lo(), b.lo());
    const int hi = std::max(a.hi(), b.hi());
    Rational ca = 0, cb = 0, s = 0;
    for (int k = lo; k <= hi; ++k) {
        ca += a.at(k);
        cb += b.at(k);
        s += abs(Rational(ca - cb));
    }
    return s;
}

IntegerLaw phase_law(const PhaseTable& table, int n) {
    auto row = table.row(n);
    return IntegerLaw{0, std::vector<double>(row.begin(), row.end())};
}

RationalDist exact_phase_law(const PhaseTable& table, int n) {
    if (!table.is_exact(n)) throw DomainError("exact_phase_law: row " + std::to_string(n) + " is not exact");
    RationalDist d;
    d.offset = 0;
    for (int j = 0; j <= table.j_max(); ++j) d.probs.push_back(table.exact_prob(n, j));
    while (d.probs.size() > 1 && d.probs.back() == 0) d.probs.pop_back();
    return d;
}

IntegerLaw ceil_shift_law(const std::function<double(double)>& F, double s, double tail) {
    constexpr int kMaxSteps = 100000;
    int lo = static_cast<int>(std::ceil(s));
    for (int i = 0; i < kMaxSteps && F(lo - 1 - s) > tail; ++i) --lo;
    int hi = static_cast<int>(std::ceil(s));
    for (int i = 0; i < kMaxSteps && F(hi - s) < 1.0 - tail; ++i) ++hi;
    IntegerLaw law{lo, {}};
    double total = 0.0;
    for (int j = lo; j <= hi; ++j) {
        double p = std::max(0.0, F(j - s) - F(j - 1 - s));
        law.probs.push_back(p);
        total += p;
    }
    if (total <= 0.0) throw DomainError("ceil_shift_law: no mass");
    for (double& p : law.probs) p /= total;
    return law;
}

double log_base(double n, double alpha) { return std::log(n) / std::log(1.0 / alpha); }

// ---------------------------------------------------------------- limit fits

namespace {

// Range of residuals after a least-squares polynomial fit of degree <= 2.
double detrended_range(const std::vector<const LimitSample*>& pts) {
    if (pts.size() < 2) return 0.0;
    std::vector<double> xs;
    for (const auto* p : pts) xs.push_back(p->x);
    std::sort(xs.begin(), xs.end());
    const auto distinct =
        std::unique(xs.begin(), xs.end(), [](double a, double b) { return std::abs(a - b) < 1e-12; }) - xs.begin();
    const int d1 = static_cast<int>(std::min<std::ptrdiff_t>(3, distinct));
    const double cx = 0.5 * (xs.front() + xs.back());
    const double scale = std::max(1e-12, xs.back() - xs.front());

    // Normal equations in u = (x - cx) / scale, solved by Gauss-Jordan.
    std::array<std::array<double, 4>, 3> m{};
    for (const auto* p : pts) {
        const double u = (p->x - cx) / scale;
        const std::array<double, 3> b = {1.0, u, u * u};
        for (int r = 0; r < d1; ++r) {
            for (int c = 0; c < d1; ++c) m[r][c] += b[r] * b[c];
            m[r][3] += b[r] * p->value;
        }
    }
    for (int c = 0; c < d1; ++c) {
        int piv = c;
        for (int r = c + 1; r < d1; ++r)
            if (std::abs(m[r][c]) > std::abs(m[piv][c])) piv = r;
        std::swap(m[c], m[piv]);
        if (m[c][c] == 0.0) continue;
        for (int r = 0; r < d1; ++r) {
            if (r == c) continue;
            const double f = m[r][c] / m[c][c];
            for (int k = c; k < 4; ++k) m[r][k] -= f * m[c][k];
        }
    }
    std::array<double, 3> coef{};
    for (int r = 0; r < d1; ++r) coef[r] = m[r][r] == 0.0 ? 0.0 : m[r][3] / m[r][r];

    double lo = 0.0, hi = 0.0;
    bool first = true;
    for (const auto* p : pts) {
        const double u = (p->x - cx) / scale;
        const double res = p->value - (coef[0] + coef[1] * u + coef[2] * u * u);
        if (first) lo = hi = res;
        lo = std::min(lo, res);
        hi = std::max(hi, res);
        first = false;
    }
    return hi - lo;
}

}  // namespace

double EmpiricalLimit::max_deviation(const std::function<double(double)>& F) const {
    double m = 0.0;
    for (const auto& s : samples) m = std::max(m, std::abs(s.value - F(s.x)));
    return m;
}

EmpiricalLimit empirical_limit(const PhaseTable& table, double alpha, int n_lo, int n_hi, LimitQuantity quantity,
                               double bin_width) {
    if (n_lo < 1 || n_hi < n_lo) throw DomainError("empirical_limit: empty n range");
    if (n_hi > table.max_n()) throw DomainError("empirical_limit: table stops at n = " + std::to_string(table.max_n()));
    if (!(bin_width > 0.0)) throw DomainError("empirical_limit: bin width must be positive");
    constexpr double eps = 1e-12;
    EmpiricalLimit out;
    out.n_lo = n_lo;
    out.n_hi = n_hi;
    out.bin_width = bin_width;
    for (int n = n_lo; n <= n_hi; ++n) {
        const double shift = log_base(n, alpha);
        for (int j = 0; j <= table.j_max(); ++j) {
            const double v = quantity == LimitQuantity::Cdf ? table.cdf(n, j) : table.prob(n, j);
            const bool keep = quantity == LimitQuantity::Cdf ? (v > eps && v < 1.0 - eps) : v > eps;
            if (keep) out.samples.push_back({j - shift, v, n, j});
        }
    }
    std::sort(out.samples.begin(), out.samples.end(),
              [](const LimitSample& a, const LimitSample& b) { return a.x < b.x || (a.x == b.x && a.n < b.n); });

    const int n_mid = n_lo + (n_hi - n_lo) / 2;
    std::map<long, std::vector<const LimitSample*>> bins;
    for (const auto& s : out.samples) {
        if (s.n >= n_mid) bins[static_cast<long>(std::floor(s.x / bin_width))].push_back(&s);
    }
    double prev_mean = 0.0;
    bool have_prev = false;
    for (const auto& [idx, pts] : bins) {
        out.spread = std::max(out.spread, detrended_range(pts));
        if (quantity != LimitQuantity::Cdf) continue;
        double mean = 0.0;
        for (const auto* p : pts) mean += p->value;
        mean /= static_cast<double>(pts.size());
        if (have_prev && mean < prev_mean - 1e-9) ++out.monotone_violations;
        prev_mean = mean;
        have_prev = true;
    }
    return out;
}

// -------------------------------------------------------------- closed forms

ToyClosedForms toy_closed_forms(double x) {
    ToyClosedForms t;
    if (x >= 0.0) {
        t.F = 1.0;
    } else if (x > -1.0) {
        t.F = 2.0 - std::exp2(-x);
    }
    const double f = x - std::floor(x);
    t.phi = std::exp2(f) - f - 1.0;
    t.pi2 = std::abs(std::exp2(1.0 + f) - 3.0);
    return t;
}

namespace {

int floor_log2(int n) {
    if (n < 1) throw DomainError("toy closed form needs n >= 1");
    int m = 0;
    while ((2LL << m) <= n) ++m;
    return m;
}

Rational pow2(int e) {
    Rational r = 1;
    if (e >= 0) {
        mpz_class z;
        mpz_ui_pow_ui(z.get_mpz_t(), 2, static_cast<unsigned long>(e));
        r = Rational(z);
    } else {
        mpz_class z;
        mpz_ui_pow_ui(z.get_mpz_t(), 2, static_cast<unsigned long>(-e));
        r = Rational(1) / Rational(z);
    }
    return r;
}

}  // namespace

Rational toy_exact_cdf(int n, int j) {
    if (n < 1) throw DomainError("toy_exact_cdf needs n >= 1");
    // x = j - log2 n; 2^{-x} = n / 2^j.
    const Rational two_pow_minus_x = Rational(n) / pow2(j);
    if (two_pow_minus_x <= 1) return 1;
    if (two_pow_minus_x >= 2) return 0;
    return 2 - two_pow_minus_x;
}

Rational toy_exact_mean(int n) {
    const int m = floor_log2(n);
    return Rational(m) + Rational(n) / pow2(m) - 1;
}

Rational toy_exact_pi2(int n) {
    const int m = floor_log2(n);
    return abs(Rational(pow2(1 - m) * n - 3));
}

double fair_coin_F(double x) {
    const double u = std::exp2(-x);
    if (u == 0.0) return 1.0;
    return u / std::expm1(u);
}

double fair_coin_phi(double t, int L) {
    if (!(t > 0.0)) throw DomainError("fair_coin_phi needs t > 0");
    if (L < 1) throw DomainError("fair_coin_phi needs L >= 1");
    constexpr double pi = std::numbers::pi;
    const double ln2 = std::numbers::ln2;
    const double lt = std::log2(t);
    double sum = 0.0;
    for (int k = 1; k <= L; ++k) {
        const cplx chi(0.0, 2.0 * pi * k / ln2);
        const cplx s = 1.0 - chi;
        const cplx term = zeta(s) * std::exp(log_gamma(s)) * std::polar(1.0, 2.0 * pi * k * lt);
        sum += 2.0 * term.real();  // k and -k are conjugate
    }
    return fair_coin_phi_constant() - sum / ln2;
}

}  // namespace electra
