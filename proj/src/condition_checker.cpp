#include "electra/condition_checker.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace electra {

namespace {

// Row n as cumulative sums over 0..n, exact when available.
struct CumulativeRow {
    std::vector<double> cdf;
    std::vector<Rational> exact_cdf;
};

CumulativeRow cumulative(const SurvivorModel& model, int n) {
    Pmf p = model.pmf(n);
    CumulativeRow row;
    row.cdf.assign(static_cast<std::size_t>(n) + 1, 0.0);
    double acc = 0.0;
    for (int k = 0; k <= n; ++k) {
        acc += p.at(k);
        row.cdf[static_cast<std::size_t>(k)] = acc;
    }
    if (p.is_exact()) {
        row.exact_cdf.assign(static_cast<std::size_t>(n) + 1, Rational(0));
        Rational e = 0;
        for (int k = 0; k <= n; ++k) {
            e += p.exact_at(k);
            row.exact_cdf[static_cast<std::size_t>(k)] = e;
        }
    }
    return row;
}

double upper_half_max(const std::vector<SeriesPoint>& s, int n_max) {
    double m = 0.0;
    for (const auto& pt : s) {
        if (2 * pt.n >= n_max) m = std::max(m, pt.value);
    }
    return m;
}

int first_row(const SurvivorModel& model) { return model.absorbing_state() == 0 ? 0 : 1; }

}  // namespace

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::Pass: return "PASS";
        case Verdict::Fail: return "FAIL";
        case Verdict::Inconclusive: return "INCONCLUSIVE";
    }
    return "?";
}

MonotoneCheck check_monotone(const SurvivorModel& model, int n_max, const ConditionOptions& opts) {
    if (n_max < 2) throw DomainError("check_monotone needs n_max >= 2");
    MonotoneCheck out;
    CumulativeRow prev = cumulative(model, 1);
    for (int n = 1; n < n_max; ++n) {
        CumulativeRow next = cumulative(model, n + 1);
        const bool exact = !prev.exact_cdf.empty() && !next.exact_cdf.empty();
        for (int k = 0; k <= n; ++k) {
            const auto uk = static_cast<std::size_t>(k);
            double gap = exact ? to_double(Rational(next.exact_cdf[uk] - prev.exact_cdf[uk]))
                               : next.cdf[uk] - prev.cdf[uk];
            if (gap > opts.monotone_tol) out.violations.push_back({n, k, gap});
        }
        prev = std::move(next);
    }
    out.verdict = out.violations.empty() ? Verdict::Pass : Verdict::Fail;
    return out;
}

IncrementCheck check_mean_increment(const SurvivorModel& model, int n_max, const Rational& alpha,
                                    const ConditionOptions& opts) {
    if (n_max < 2) throw DomainError("check_mean_increment needs n_max >= 2");
    IncrementCheck out;
    out.n0 = std::max(1, std::min(opts.increment_n0, n_max / 2));
    const double a = to_double(alpha);
    for (int n = std::max(1, first_row(model)); n < n_max; ++n) {
        double d = 0.0;
        if (n + 1 <= model.exact_cutoff() && model.pmf(n + 1).is_exact() && model.pmf(n).is_exact()) {
            d = to_double(Rational(model.exact_mean(n + 1) - model.exact_mean(n)));
        } else {
            d = model.mean(n + 1) - model.mean(n);
        }
        out.increments.push_back({n, d});
        if (n >= out.n0) out.max_deviation = std::max(out.max_deviation, std::abs(d - a));
    }
    if (n_max < 4) {
        out.verdict = Verdict::Inconclusive;
    } else {
        out.verdict = out.max_deviation <= opts.increment_tol ? Verdict::Pass : Verdict::Fail;
    }
    return out;
}

SeriesCheck check_concentration(const SurvivorModel& model, int n_max, const Rational& alpha,
                                const std::function<double(int)>& delta, const ConditionOptions& opts) {
    if (n_max < 2) throw DomainError("check_concentration needs n_max >= 2");
    auto delta_n = delta ? delta : [&](int n) { return std::pow(static_cast<double>(n), -opts.delta_exponent); };
    const double a = to_double(alpha);
    SeriesCheck out;
    for (int n = 1; n <= n_max; ++n) {
        Pmf p = model.pmf(n);
        const double centre = a * n;
        const double radius = delta_n(n) * n;
        double tail = 0.0;
        for (int k = p.lo; k <= p.hi(); ++k) {
            if (std::abs(k - centre) > radius) tail += p.at(k);
        }
        out.series.push_back({n, tail * std::pow(static_cast<double>(n), 2.0 + opts.epsilon)});
    }
    out.tail_max = upper_half_max(out.series, n_max);
    out.verdict = out.tail_max <= opts.concentration_bound ? Verdict::Pass : Verdict::Fail;
    return out;
}

SeriesCheck check_moment(const SurvivorModel& model, int n_max, const Rational& alpha, int p,
                         const ConditionOptions& opts) {
    if (p < 2 || p % 2 != 0) throw DomainError("check_moment needs an even p >= 2, got " + std::to_string(p));
    if (n_max < 2) throw DomainError("check_moment needs n_max >= 2");
    SeriesCheck out;
    const double a = to_double(alpha);
    for (int n = 1; n <= n_max; ++n) {
        Pmf row = model.pmf(n);
        double moment = 0.0;
        if (row.is_exact()) {
            Rational m = 0;
            const Rational centre = alpha * n;
            for (int k = row.lo; k <= row.hi(); ++k) {
                Rational dev = k - centre;
                Rational pw = 1;
                for (int e = 0; e < p; ++e) pw *= dev;
                m += row.exact_at(k) * pw;
            }
            moment = to_double(m);
        } else {
            for (int k = row.lo; k <= row.hi(); ++k) moment += row.at(k) * std::pow(k - a * n, p);
        }
        out.series.push_back({n, moment / std::pow(static_cast<double>(n), p / 2.0)});
    }
    out.tail_max = upper_half_max(out.series, n_max);
    out.verdict = out.tail_max <= opts.moment_bound ? Verdict::Pass : Verdict::Fail;
    return out;
}

Verdict ConditionReport::overall() const {
    Verdict all[] = {monotone.verdict, increment.verdict, concentration.verdict, moment.verdict};
    if (std::find(std::begin(all), std::end(all), Verdict::Fail) != std::end(all)) return Verdict::Fail;
    if (std::find(std::begin(all), std::end(all), Verdict::Inconclusive) != std::end(all)) return Verdict::Inconclusive;
    return Verdict::Pass;
}

std::string ConditionReport::summary_line() const {
    std::ostringstream s;
    s << "condition " << to_string(overall()) << " model=" << model << " n_max=" << n_max
      << " alpha=" << to_string(alpha) << " i=" << to_string(monotone.verdict)
      << " ii=" << to_string(increment.verdict) << " iii=" << to_string(concentration.verdict)
      << " ymom=" << to_string(moment.verdict);
    return s.str();
}

ConditionReport check_conditions(const SurvivorModel& model, int n_max, const Rational& alpha,
                                 const ConditionOptions& opts) {
    ConditionReport r;
    r.model = model.name();
    r.n_max = n_max;
    r.alpha = alpha;
    r.monotone = check_monotone(model, n_max, opts);
    r.increment = check_mean_increment(model, n_max, alpha, opts);
    r.concentration = check_concentration(model, n_max, alpha, {}, opts);
    r.moment = check_moment(model, n_max, alpha, opts.moment_p, opts);
    return r;
}

}  // namespace electra
