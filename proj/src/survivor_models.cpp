#include "electra/survivor_models.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <map>
#include <sstream>

namespace electra {

namespace {

// Dense probability vector over [lo, lo + v.size()).
template <class T>
struct Dense {
    int lo = 0;
    std::vector<T> v;

    int hi() const { return lo + static_cast<int>(v.size()) - 1; }
    T at(int k) const { return (k < lo || k > hi()) ? T(0) : v[static_cast<std::size_t>(k - lo)]; }
    void add(int k, const T& x) {
        if (v.empty()) {
            lo = k;
            v.push_back(x);
            return;
        }
        if (k < lo) {
            v.insert(v.begin(), static_cast<std::size_t>(lo - k), T(0));
            lo = k;
        } else if (k > hi()) {
            v.resize(static_cast<std::size_t>(k - lo) + 1, T(0));
        }
        v[static_cast<std::size_t>(k - lo)] += x;
    }
};

Rational rpow(const Rational& base, unsigned long e) {
    BigInt num, den;
    mpz_pow_ui(num.get_mpz_t(), base.get_num_mpz_t(), e);
    mpz_pow_ui(den.get_mpz_t(), base.get_den_mpz_t(), e);
    Rational r(num, den);
    r.canonicalize();
    return r;
}

Dense<Rational> exact_binomial(int n, const Rational& p) {
    Dense<Rational> d;
    d.lo = 0;
    Rational q = 1 - p;
    BigInt c = 1;
    for (int k = 0; k <= n; ++k) {
        Rational term = Rational(c) * rpow(p, static_cast<unsigned long>(k)) *
                        rpow(q, static_cast<unsigned long>(n - k));
        term.canonicalize();
        d.v.push_back(term);
        c = c * (n - k) / (k + 1);
    }
    return d;
}

// Binomial(n, p) with each tail of mass below kTailMass dropped.
Dense<double> float_binomial(int n, double p) {
    const double q = 1.0 - p;
    int mode = static_cast<int>(std::floor((n + 1) * p));
    mode = std::clamp(mode, 0, n);
    const double log_mode = std::lgamma(n + 1.0) - std::lgamma(mode + 1.0) - std::lgamma(n - mode + 1.0) +
                            mode * std::log(p) + (n - mode) * std::log(q);
    const double at_mode = std::exp(log_mode);

    std::vector<double> up;  // k = mode+1, ...
    double b = at_mode;
    for (int k = mode + 1; k <= n; ++k) {
        b *= static_cast<double>(n - k + 1) / k * (p / q);
        double r = k < n ? static_cast<double>(n - k) / (k + 1) * (p / q) : 0.0;
        double tail_bound = r < 1.0 ? b / (1.0 - r) : INFINITY;
        if (tail_bound < kTailMass) break;
        up.push_back(b);
    }
    std::vector<double> down;  // k = mode-1, mode-2, ...
    b = at_mode;
    for (int k = mode - 1; k >= 0; --k) {
        b *= static_cast<double>(k + 1) / (n - k) * (q / p);
        double r = k > 0 ? static_cast<double>(k) / (n - k + 1) * (q / p) : 0.0;
        double tail_bound = r < 1.0 ? b / (1.0 - r) : INFINITY;
        if (tail_bound < kTailMass) break;
        down.push_back(b);
    }
    Dense<double> d;
    d.lo = mode - static_cast<int>(down.size());
    d.v.assign(down.rbegin(), down.rend());
    d.v.push_back(at_mode);
    d.v.insert(d.v.end(), up.begin(), up.end());
    double total = 0.0;
    for (double x : d.v) total += x;
    for (double& x : d.v) x /= total;
    return d;
}

// Survivor law from the heads count W_n for the coin families.
template <class T>
Dense<T> coin_survivors(ModelKind kind, int n, const Dense<T>& w, const T& nu) {
    Dense<T> y;
    switch (kind) {
        case ModelKind::FairCoin:
        case ModelKind::BiasedCoin:
            for (int k = std::max(w.lo, 1); k <= w.hi(); ++k) y.add(k, w.at(k));
            if (w.lo == 0) y.add(n, w.at(0));
            break;
        case ModelKind::CoinMaxOne:
            for (int k = std::max(w.lo, 2); k <= w.hi(); ++k) y.add(k, w.at(k));
            if (w.lo <= 1) y.add(1, w.at(0) + w.at(1));
            break;
        case ModelKind::DemonCoin: {
            const T keep = T(1) - nu;
            for (int k = std::max(w.lo - 1, 1); k <= w.hi(); ++k) y.add(k, keep * w.at(k) + nu * w.at(k + 1));
            if (w.lo <= 1) y.add(0, keep * w.at(0) + nu * (w.at(0) + w.at(1)));
            break;
        }
        default:
            throw DomainError("not a coin model");
    }
    return y;
}

Pmf to_pmf(Dense<Rational> d) {
    while (!d.v.empty() && d.v.back() == 0) d.v.pop_back();
    while (!d.v.empty() && d.v.front() == 0) {
        d.v.erase(d.v.begin());
        ++d.lo;
    }
    Pmf out;
    out.lo = d.lo;
    out.exact = std::move(d.v);
    out.probs.reserve(out.exact.size());
    for (const auto& q : out.exact) out.probs.push_back(to_double(q));
    return out;
}

Pmf to_pmf(Dense<double> d) {
    Pmf out;
    out.lo = d.lo;
    out.probs = std::move(d.v);
    return out;
}

Pmf shift_up(Pmf pmf) {
    pmf.lo += 1;
    return pmf;
}

void require_probability(const Rational& x, bool open, const char* what) {
    bool ok = open ? (x > 0 && x < 1) : (x >= 0 && x <= 1);
    if (!ok) {
        throw DomainError(std::string(what) + " must lie in " + (open ? "(0,1)" : "[0,1]") + ", got " +
                          to_string(x));
    }
}

}  // namespace

double Pmf::at(int k) const {
    if (k < lo || k > hi()) return 0.0;
    return probs[static_cast<std::size_t>(k - lo)];
}

Rational Pmf::exact_at(int k) const {
    if (!is_exact()) throw DomainError("row is not in the exact regime");
    if (k < lo || k > hi()) return Rational(0);
    return exact[static_cast<std::size_t>(k - lo)];
}

SurvivorModel SurvivorModel::toy_halving() {
    SurvivorModel m;
    m.name_ = "toy";
    m.kind_ = ModelKind::ToyHalving;
    m.alpha_ = Rational(1, 2);
    return m;
}

SurvivorModel SurvivorModel::deterministic_halving() {
    SurvivorModel m;
    m.name_ = "det-halving";
    m.kind_ = ModelKind::DeterministicHalving;
    m.alpha_ = Rational(1, 2);
    return m;
}

SurvivorModel SurvivorModel::fair_coin() {
    SurvivorModel m;
    m.name_ = "fair-coin";
    m.kind_ = ModelKind::FairCoin;
    m.p_ = Rational(1, 2);
    m.alpha_ = Rational(1, 2);
    return m;
}

SurvivorModel SurvivorModel::biased_coin(const Rational& p) {
    require_probability(p, true, "p");
    SurvivorModel m;
    m.name_ = "biased-coin(p=" + to_string(p) + ")";
    m.kind_ = ModelKind::BiasedCoin;
    m.p_ = p;
    m.alpha_ = p;
    return m;
}

SurvivorModel SurvivorModel::coin_max_one(const Rational& p) {
    require_probability(p, true, "p");
    SurvivorModel m;
    m.name_ = "coin-max-one(p=" + to_string(p) + ")";
    m.kind_ = ModelKind::CoinMaxOne;
    m.p_ = p;
    m.alpha_ = p;
    return m;
}

SurvivorModel SurvivorModel::demon_coin(const Rational& p, const Rational& nu) {
    require_probability(p, true, "p");
    require_probability(nu, false, "nu");
    SurvivorModel m;
    m.name_ = "demon(p=" + to_string(p) + ",nu=" + to_string(nu) + ")";
    m.kind_ = ModelKind::DemonCoin;
    m.zero_state_ = ZeroState::Absorbing;
    m.p_ = p;
    m.nu_ = nu;
    m.alpha_ = p;
    return m;
}

SurvivorModel SurvivorModel::peaks(PeakVariant variant, int exact_cutoff, int cap) {
    SurvivorModel m;
    m.name_ = "peak-" + to_string(variant);
    switch (variant) {
        case PeakVariant::LinearI:
            m.kind_ = ModelKind::PeakLinearI;
            m.zero_state_ = ZeroState::EmergencyExit;
            break;
        case PeakVariant::LinearII: m.kind_ = ModelKind::PeakLinearII; break;
        case PeakVariant::Circular: m.kind_ = ModelKind::PeakCircular; break;
    }
    m.alpha_ = Rational(1, 3);
    m.exact_cutoff_ = exact_cutoff;
    m.peaks_ = std::make_shared<const PeakTable>(PeakTable::build(variant, std::max(exact_cutoff, 1), cap));
    return m;
}

SurvivorModel SurvivorModel::explicit_matrix(std::vector<RationalDist> rows) {
    if (rows.size() < 2) throw DomainError("explicit matrix needs at least row 1");
    SurvivorModel m;
    m.name_ = "explicit";
    m.kind_ = ModelKind::ExplicitMatrix;
    m.max_n_ = static_cast<int>(rows.size()) - 1;
    if (rows[1].probs.empty()) rows[1] = RationalDist{1, {Rational(1)}};
    bool reaches_zero = false;
    for (int i = 1; i <= m.max_n_; ++i) {
        auto& row = rows[static_cast<std::size_t>(i)];
        if (row.probs.empty()) throw DomainError("explicit matrix: missing row " + std::to_string(i));
        if (row.lo() < 0 || row.hi() > i) {
            throw DomainError("explicit matrix: row " + std::to_string(i) + " has mass outside 0.." +
                              std::to_string(i));
        }
        Rational sum = 0;
        for (const auto& q : row.probs) {
            if (q < 0) throw DomainError("explicit matrix: negative probability in row " + std::to_string(i));
            sum += q;
        }
        if (std::abs(to_double(sum) - 1.0) > 1e-12) {
            throw DomainError("explicit matrix: row " + std::to_string(i) + " sums to " + to_string(sum));
        }
        for (auto& q : row.probs) {
            q /= sum;
            q.canonicalize();
        }
        if (i >= 2 && row.at(i) == 1) {
            throw DomainError("explicit matrix: P(" + std::to_string(i) + "," + std::to_string(i) + ") = 1");
        }
        if (row.at(0) > 0) reaches_zero = true;
    }
    m.zero_state_ = reaches_zero ? ZeroState::Absorbing : ZeroState::Unreachable;
    m.matrix_ = std::make_shared<const std::vector<RationalDist>>(std::move(rows));
    return m;
}

SurvivorModel SurvivorModel::explicit_matrix(std::istream& csv) {
    std::map<int, std::map<int, Rational>> cells;
    std::string line;
    int line_no = 0;
    while (std::getline(csv, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.find_first_not_of(" \t") == std::string::npos) continue;
        std::vector<std::string> fields;
        std::stringstream ss(line);
        std::string f;
        while (std::getline(ss, f, ',')) fields.push_back(f);
        if (line_no == 1 && !fields.empty() && fields[0].find('i') != std::string::npos) continue;
        if (fields.size() != 3) {
            throw DomainError("explicit matrix line " + std::to_string(line_no) + ": expected i,j,prob");
        }
        int i = 0;
        int j = 0;
        try {
            i = std::stoi(fields[0]);
            j = std::stoi(fields[1]);
        } catch (const std::exception&) {
            throw DomainError("explicit matrix line " + std::to_string(line_no) + ": bad index");
        }
        if (i < 1) throw DomainError("explicit matrix line " + std::to_string(line_no) + ": i must be >= 1");
        if (j < 0 || j > i) {
            throw DomainError("explicit matrix line " + std::to_string(line_no) + ": P(i,j) needs 0 <= j <= i");
        }
        cells[i][j] += parse_rational(fields[2]);
    }
    if (cells.empty()) throw DomainError("explicit matrix: no rows");
    int max_i = cells.rbegin()->first;
    std::vector<RationalDist> rows(static_cast<std::size_t>(max_i) + 1);
    for (const auto& [i, row] : cells) {
        RationalDist d;
        d.offset = row.begin()->first;
        d.probs.assign(static_cast<std::size_t>(row.rbegin()->first - d.offset) + 1, Rational(0));
        for (const auto& [j, q] : row) d.probs[static_cast<std::size_t>(j - d.offset)] = q;
        rows[static_cast<std::size_t>(i)] = std::move(d);
    }
    return explicit_matrix(std::move(rows));
}

SurvivorModel SurvivorModel::with_exact_cutoff(int cutoff, int cap) const {
    if (cutoff < 0) throw DomainError("exact cutoff must be >= 0");
    SurvivorModel m = *this;
    m.exact_cutoff_ = cutoff;
    if (peaks_) {
        m.peaks_ = std::make_shared<const PeakTable>(PeakTable::build(peaks_->variant(), std::max(cutoff, 1), cap));
    }
    return m;
}

SurvivorModel SurvivorModel::with_dummy() const {
    if (zero_state_ != ZeroState::Absorbing) {
        throw DomainError("dummy player only applies to chains that can absorb at 0");
    }
    SurvivorModel m = *this;
    m.dummy_ = true;
    m.zero_state_ = ZeroState::Unreachable;
    m.name_ = name_ + "+dummy";
    if (max_n_ != std::numeric_limits<int>::max()) m.max_n_ = max_n_ + 1;
    return m;
}

int SurvivorModel::min_n() const { return zero_state_ == ZeroState::Absorbing ? 0 : 1; }

Pmf SurvivorModel::raw_pmf(int n) const {
    const bool exact = n <= exact_cutoff_;
    switch (kind_) {
        case ModelKind::ToyHalving:
        case ModelKind::DeterministicHalving: {
            if (n == 1) return exact ? to_pmf(Dense<Rational>{1, {Rational(1)}}) : to_pmf(Dense<double>{1, {1.0}});
            const bool toy = kind_ == ModelKind::ToyHalving && n % 2 == 1;
            if (exact) {
                Dense<Rational> d;
                if (toy) {
                    d.add(n / 2, Rational(1, 2));
                    d.add(n / 2 + 1, Rational(1, 2));
                } else {
                    d.add(n / 2, Rational(1));
                }
                return to_pmf(d);
            }
            Dense<double> d;
            if (toy) {
                d.add(n / 2, 0.5);
                d.add(n / 2 + 1, 0.5);
            } else {
                d.add(n / 2, 1.0);
            }
            return to_pmf(d);
        }
        case ModelKind::FairCoin:
        case ModelKind::BiasedCoin:
        case ModelKind::CoinMaxOne:
        case ModelKind::DemonCoin: {
            if (n == 0) return to_pmf(Dense<Rational>{0, {Rational(1)}});
            if (exact) return to_pmf(coin_survivors<Rational>(kind_, n, exact_binomial(n, p_), nu_));
            Pmf out = to_pmf(coin_survivors<double>(kind_, n, float_binomial(n, to_double(p_)), to_double(nu_)));
            double total = 0.0;
            for (double x : out.probs) total += x;
            for (double& x : out.probs) x /= total;
            return out;
        }
        case ModelKind::PeakLinearI:
        case ModelKind::PeakLinearII:
        case ModelKind::PeakCircular: {
            if (exact) {
                RationalDist row = peaks_->row(n);
                return to_pmf(Dense<Rational>{row.offset, std::move(row.probs)});
            }
            GaussianApprox g = gaussian_row(peaks_->variant(), n, exact_cutoff_);
            int first = 0;
            int last = static_cast<int>(g.pmf.size()) - 1;
            while (first < last && g.pmf[static_cast<std::size_t>(first)] < kTailMass * 1e-2) ++first;
            while (last > first && g.pmf[static_cast<std::size_t>(last)] < kTailMass * 1e-2) --last;
            Dense<double> d;
            d.lo = g.support_lo + first;
            d.v.assign(g.pmf.begin() + first, g.pmf.begin() + last + 1);
            double total = 0.0;
            for (double x : d.v) total += x;
            for (double& x : d.v) x /= total;
            return to_pmf(d);
        }
        case ModelKind::ExplicitMatrix: {
            const RationalDist& row = (*matrix_)[static_cast<std::size_t>(n)];
            return to_pmf(Dense<Rational>{row.offset, row.probs});
        }
    }
    throw DomainError("unknown model kind");
}

Pmf SurvivorModel::pmf(int n) const {
    if (dummy_) {
        if (n < 1) throw DomainError(name_ + ": pmf needs n >= 1");
        if (n > max_n_) throw DomainError(name_ + ": no row " + std::to_string(n));
        if (n == 1) {
            return n <= exact_cutoff_ ? to_pmf(Dense<Rational>{1, {Rational(1)}}) : to_pmf(Dense<double>{1, {1.0}});
        }
        SurvivorModel raw = *this;
        raw.dummy_ = false;
        raw.zero_state_ = ZeroState::Absorbing;
        raw.max_n_ = max_n_ == std::numeric_limits<int>::max() ? max_n_ : max_n_ - 1;
        // Exactness follows the shifted index n, not n-1.
        raw.exact_cutoff_ = n <= exact_cutoff_ ? n - 1 : n - 2;
        return shift_up(raw.raw_pmf(n - 1));
    }
    if (n < min_n()) throw DomainError(name_ + ": pmf needs n >= " + std::to_string(min_n()));
    if (n > max_n_) throw DomainError(name_ + ": no row " + std::to_string(n));
    return raw_pmf(n);
}

double SurvivorModel::mean(int n) const {
    Pmf row = pmf(n);
    double s = 0.0;
    for (int k = row.lo; k <= row.hi(); ++k) s += k * row.at(k);
    return s;
}

double SurvivorModel::cdf(int n, int k) const {
    Pmf row = pmf(n);
    double s = 0.0;
    for (int j = row.lo; j <= std::min(k, row.hi()); ++j) s += row.at(j);
    return std::min(s, 1.0);
}

Rational SurvivorModel::exact_mean(int n) const {
    Pmf row = pmf(n);
    if (!row.is_exact()) throw DomainError(name_ + ": row " + std::to_string(n) + " is not exact");
    Rational s = 0;
    for (int k = row.lo; k <= row.hi(); ++k) s += k * row.exact_at(k);
    return s;
}

Rational SurvivorModel::exact_cdf(int n, int k) const {
    Pmf row = pmf(n);
    if (!row.is_exact()) throw DomainError(name_ + ": row " + std::to_string(n) + " is not exact");
    Rational s = 0;
    for (int j = row.lo; j <= std::min(k, row.hi()); ++j) s += row.exact_at(j);
    return s;
}

int SurvivorModel::sample(int n, std::mt19937_64& rng) const {
    Pmf row = pmf(n);
    double u = uniform01(rng);
    double acc = 0.0;
    for (int k = row.lo; k <= row.hi(); ++k) {
        acc += row.at(k);
        if (u < acc) return k;
    }
    // Rounding left u above the accumulated mass: take the last supported value.
    for (int k = row.hi(); k >= row.lo; --k) {
        if (row.at(k) > 0.0) return k;
    }
    return row.hi();
}

}  // namespace electra
