#include "electra/phase_engine.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <string>

namespace electra {

namespace {

bool absorbing(int n, int threshold) { return threshold >= 1 ? n <= threshold : n == 0; }

int absorption_cost(int n, InitConvention init) { return (n == 0 && init == InitConvention::AltCost) ? 1 : 0; }

void validate_threshold(const SurvivorModel& model, int threshold) {
    if (threshold < 0) throw DomainError("threshold must be >= 0");
    if (threshold == 0 && model.zero_state() != ZeroState::Absorbing) {
        throw DomainError(model.name() + " cannot reach 0 players; threshold 0 does not apply");
    }
}

// Rows 0..max_n; absorbing rows stay empty.
std::vector<Pmf> load_transitions(const SurvivorModel& model, int max_n, int threshold) {
    if (max_n > model.max_n()) {
        throw DomainError(model.name() + " has no rows beyond n=" + std::to_string(model.max_n()));
    }
    std::vector<Pmf> rows(static_cast<std::size_t>(max_n) + 1);
    for (int n = 0; n <= max_n; ++n) {
        if (absorbing(n, threshold)) continue;
        Pmf row = model.pmf(n);
        if (row.lo < 0 || row.hi() > n) {
            throw DomainError(model.name() + ": row " + std::to_string(n) + " leaves 0.." + std::to_string(n));
        }
        if (row.at(n) >= 1.0) {
            throw DomainError(model.name() + ": P(" + std::to_string(n) + "," + std::to_string(n) + ") = 1");
        }
        if (row.lo == 0 && row.at(0) > 0.0 && model.zero_state() == ZeroState::Unreachable) {
            throw DomainError(model.name() + ": row " + std::to_string(n) + " reaches 0");
        }
        rows[static_cast<std::size_t>(n)] = std::move(row);
    }
    return rows;
}

// Largest m such that every transient row <= m is exact.
int exact_prefix(const std::vector<Pmf>& rows, int threshold) {
    int hi = -1;
    for (int n = 0; n < static_cast<int>(rows.size()); ++n) {
        if (!absorbing(n, threshold) && !rows[static_cast<std::size_t>(n)].is_exact()) break;
        hi = n;
    }
    return hi;
}

}  // namespace

bool PhaseTable::is_absorbing(int n) const { return absorbing(n, options_.threshold); }

void PhaseTable::check_row(int n) const {
    if (n < 0 || n > max_n_) throw DomainError("row " + std::to_string(n) + " outside phase table");
}

double PhaseTable::prob(int n, int j) const {
    check_row(n);
    if (j < 0 || j > j_max_) return 0.0;
    return pi_[static_cast<std::size_t>(n)][static_cast<std::size_t>(j)];
}

double PhaseTable::cdf(int n, int j) const {
    check_row(n);
    double s = 0.0;
    for (int i = 0; i <= std::min(j, j_max_); ++i) s += pi_[static_cast<std::size_t>(n)][static_cast<std::size_t>(i)];
    return std::min(s, 1.0);
}

Rational PhaseTable::exact_prob(int n, int j) const {
    check_row(n);
    if (!is_exact(n)) throw DomainError("row " + std::to_string(n) + " is not exact");
    if (j < 0 || j > j_max_) return Rational(0);
    return exact_[static_cast<std::size_t>(n)][static_cast<std::size_t>(j)];
}

Rational PhaseTable::exact_cdf(int n, int j) const {
    Rational s = 0;
    for (int i = 0; i <= std::min(j, j_max_); ++i) s += exact_prob(n, i);
    return s;
}

std::span<const double> PhaseTable::row(int n) const {
    check_row(n);
    return pi_[static_cast<std::size_t>(n)];
}

double PhaseTable::residual(int n) const { return std::max(0.0, 1.0 - cdf(n, j_max_)); }

const Pmf& PhaseTable::transition(int n) const {
    check_row(n);
    return (*transitions_)[static_cast<std::size_t>(n)];
}

void PhaseTable::write_csv(std::ostream& out) const {
    out << "n,j,prob\n" << std::setprecision(17);
    for (int n = 0; n <= max_n_; ++n) {
        for (int j = 0; j <= j_max_; ++j) {
            double p = pi_[static_cast<std::size_t>(n)][static_cast<std::size_t>(j)];
            if (p != 0.0) out << n << ',' << j << ',' << p << '\n';
        }
    }
}

void PhaseTable::write_exact_csv(std::ostream& out) const {
    out << "n,j,numerator,denominator\n";
    for (int n = 0; n <= exact_hi_; ++n) {
        for (int j = 0; j <= j_max_; ++j) {
            const Rational& q = exact_[static_cast<std::size_t>(n)][static_cast<std::size_t>(j)];
            if (q != 0) out << n << ',' << j << ',' << q.get_num().get_str() << ',' << q.get_den().get_str() << '\n';
        }
    }
}

PhaseTable compute_phase_table(const SurvivorModel& model, int max_n, const EngineOptions& options) {
    if (max_n < 1) throw DomainError("max_n must be >= 1");
    validate_threshold(model, options.threshold);
    if (options.threshold == 0 && options.init == InitConvention::AltCost) {
        throw DomainError("the alternative initialisation only applies to the emergency exit at 0");
    }

    PhaseTable t(model);
    t.options_ = options;
    t.max_n_ = max_n;
    t.transitions_ = std::make_shared<const std::vector<Pmf>>(load_transitions(model, max_n, options.threshold));
    const auto& rows = *t.transitions_;
    t.exact_hi_ = exact_prefix(rows, options.threshold);

    const auto size = static_cast<std::size_t>(max_n) + 1;
    t.pi_.assign(size, {});
    t.exact_.assign(static_cast<std::size_t>(t.exact_hi_ + 1), {});
    std::vector<double> lambda(size, 0.0);

    auto column_done = [&] {
        for (double l : lambda) {
            if (1.0 - l >= options.residual_tol) return false;
        }
        return true;
    };

    for (int j = 0;; ++j) {
        if (j > options.max_columns) {
            throw ResourceError("phase table did not reach residual " + std::to_string(options.residual_tol) +
                                " within " + std::to_string(options.max_columns) + " columns");
        }
        for (int n = 0; n <= max_n; ++n) {
            const auto un = static_cast<std::size_t>(n);
            double value = 0.0;
            if (absorbing(n, options.threshold)) {
                const bool hit = absorption_cost(n, options.init) == j;
                value = hit ? 1.0 : 0.0;
                if (n <= t.exact_hi_) t.exact_[un].emplace_back(hit ? 1 : 0);
            } else if (j == 0) {
                value = 0.0;
                if (n <= t.exact_hi_) t.exact_[un].emplace_back(0);
            } else if (n <= t.exact_hi_) {
                const Pmf& p = rows[un];
                Rational acc = 0;
                for (int k = p.lo; k <= p.hi(); ++k) {
                    const Rational& prev = t.exact_[static_cast<std::size_t>(k)][static_cast<std::size_t>(j) - 1];
                    if (sgn(prev) == 0) continue;
                    const Rational& pk = p.exact[static_cast<std::size_t>(k - p.lo)];
                    if (sgn(pk) == 0) continue;
                    acc += pk * prev;
                }
                value = to_double(acc);
                t.exact_[un].push_back(std::move(acc));
            } else {
                const Pmf& p = rows[un];
                for (int k = p.lo; k <= p.hi(); ++k) {
                    value += p.probs[static_cast<std::size_t>(k - p.lo)] *
                             t.pi_[static_cast<std::size_t>(k)][static_cast<std::size_t>(j) - 1];
                }
            }
            t.pi_[un].push_back(value);
            lambda[un] += value;
        }
        if (column_done()) {
            t.j_max_ = j;
            break;
        }
    }
    return t;
}

MeanPhases mean_phases(const PhaseTable& table) {
    const int max_n = table.max_n();
    MeanPhases m;
    m.from_table.assign(static_cast<std::size_t>(max_n) + 1, 0.0);
    m.from_recursion.assign(static_cast<std::size_t>(max_n) + 1, 0.0);
    m.exact_from_table.assign(static_cast<std::size_t>(table.exact_hi() + 1), Rational(0));
    m.exact_from_recursion.assign(static_cast<std::size_t>(table.exact_hi() + 1), Rational(0));

    for (int n = 0; n <= max_n; ++n) {
        const auto un = static_cast<std::size_t>(n);
        auto row = table.row(n);
        for (int j = 1; j <= table.j_max(); ++j) m.from_table[un] += j * row[static_cast<std::size_t>(j)];
        if (table.is_exact(n)) {
            for (int j = 1; j <= table.j_max(); ++j) m.exact_from_table[un] += j * table.exact_prob(n, j);
        }

        if (table.is_absorbing(n)) {
            int cost = absorption_cost(n, table.init());
            m.from_recursion[un] = cost;
            if (table.is_exact(n)) m.exact_from_recursion[un] = cost;
            continue;
        }
        const Pmf& p = table.transition(n);
        double acc = 1.0;
        for (int k = p.lo; k <= std::min(p.hi(), n - 1); ++k) acc += p.at(k) * m.from_recursion[static_cast<std::size_t>(k)];
        m.from_recursion[un] = acc / (1.0 - p.at(n));
        if (table.is_exact(n)) {
            Rational e = 1;
            for (int k = p.lo; k <= std::min(p.hi(), n - 1); ++k) {
                e += p.exact_at(k) * m.exact_from_recursion[static_cast<std::size_t>(k)];
            }
            e /= 1 - p.exact_at(n);
            m.exact_from_recursion[un] = e;
            m.from_recursion[un] = to_double(e);
        }
    }
    m.exact_rows_agree = true;
    for (std::size_t n = 0; n < m.exact_from_table.size(); ++n) {
        if (m.exact_from_table[n] != m.exact_from_recursion[n]) m.exact_rows_agree = false;
    }
    for (std::size_t n = 0; n < m.from_table.size(); ++n) {
        m.max_discrepancy = std::max(m.max_discrepancy, std::abs(m.from_table[n] - m.from_recursion[n]));
    }
    return m;
}

void write_means_csv(const PhaseTable& table, double alpha, std::ostream& out) {
    MeanPhases m = mean_phases(table);
    out << "n,x,log_alpha_n,phi_residual\n" << std::setprecision(17);
    const double base = std::log(1.0 / alpha);
    for (int n = 1; n <= table.max_n(); ++n) {
        double x = m.from_recursion[static_cast<std::size_t>(n)];
        double l = std::log(static_cast<double>(n)) / base;
        out << n << ',' << x << ',' << l << ',' << x - l << '\n';
    }
}

double EndingStateProbs::prob(int n, int i) const {
    if (n < 0 || n >= static_cast<int>(probs.size()) || i < 0 || i > threshold) return 0.0;
    return probs[static_cast<std::size_t>(n)][static_cast<std::size_t>(i)];
}

Rational EndingStateProbs::exact_prob(int n, int i) const {
    if (n < 0 || n >= static_cast<int>(exact.size())) throw DomainError("row " + std::to_string(n) + " is not exact");
    if (i < 0 || i > threshold) return Rational(0);
    return exact[static_cast<std::size_t>(n)][static_cast<std::size_t>(i)];
}

EndingStateProbs ending_state_probs(const SurvivorModel& model, int max_n, int threshold) {
    if (threshold < 1) throw DomainError("ending-state probabilities need a threshold >= 1");
    if (max_n < 1) throw DomainError("max_n must be >= 1");
    auto rows = load_transitions(model, max_n, threshold);
    const int exact_hi = exact_prefix(rows, threshold);
    const auto width = static_cast<std::size_t>(threshold) + 1;

    EndingStateProbs out;
    out.threshold = threshold;
    out.probs.assign(static_cast<std::size_t>(max_n) + 1, std::vector<double>(width, 0.0));
    out.exact.assign(static_cast<std::size_t>(exact_hi + 1), std::vector<Rational>(width, Rational(0)));

    for (int n = 0; n <= max_n; ++n) {
        const auto un = static_cast<std::size_t>(n);
        const bool exact = n <= exact_hi;
        if (n <= threshold) {
            int end = n;
            if (n == 0 && model.zero_state() != ZeroState::Absorbing) end = 1;
            out.probs[un][static_cast<std::size_t>(end)] = 1.0;
            if (exact) out.exact[un][static_cast<std::size_t>(end)] = 1;
            continue;
        }
        const Pmf& p = rows[un];
        for (std::size_t i = 0; i < width; ++i) {
            if (exact) {
                Rational acc = 0;
                for (int k = p.lo; k <= std::min(p.hi(), n - 1); ++k) {
                    acc += p.exact_at(k) * out.exact[static_cast<std::size_t>(k)][i];
                }
                acc /= 1 - p.exact_at(n);
                out.probs[un][i] = to_double(acc);
                out.exact[un][i] = std::move(acc);
            } else {
                double acc = 0.0;
                for (int k = p.lo; k <= std::min(p.hi(), n - 1); ++k) acc += p.at(k) * out.probs[static_cast<std::size_t>(k)][i];
                out.probs[un][i] = acc / (1.0 - p.at(n));
            }
        }
    }
    return out;
}

Occupancy occupancy_probs(const SurvivorModel& model, int start_n, double residual_tol) {
    if (start_n < 1) throw DomainError("occupancy needs a start of at least one player");
    const int threshold = model.absorbing_state() == 0 ? 0 : 1;
    auto rows = load_transitions(model, start_n, threshold);
    const bool exact = exact_prefix(rows, threshold) >= start_n;
    const auto size = static_cast<std::size_t>(start_n) + 1;
    const auto us = static_cast<std::size_t>(start_n);

    Occupancy occ;
    occ.start = start_n;
    occ.passage.assign(size, 0.0);
    occ.visits.assign(size, 0.0);

    // Entry probabilities h(k) of the jump chain (self-loops removed), which
    // visits distinct, decreasing states.
    std::vector<double> entry(size, 0.0);
    entry[us] = 1.0;
    for (int l = start_n; l >= 0; --l) {
        const auto ul = static_cast<std::size_t>(l);
        if (absorbing(l, threshold) || entry[ul] == 0.0) continue;
        const Pmf& p = rows[ul];
        const double leave = 1.0 - p.at(l);
        for (int k = p.lo; k <= std::min(p.hi(), l - 1); ++k) entry[static_cast<std::size_t>(k)] += entry[ul] * p.at(k) / leave;
    }
    if (exact) {
        std::vector<Rational> e(size, Rational(0));
        e[us] = 1;
        for (int l = start_n; l >= 0; --l) {
            const auto ul = static_cast<std::size_t>(l);
            if (absorbing(l, threshold) || sgn(e[ul]) == 0) continue;
            const Pmf& p = rows[ul];
            const Rational leave = 1 - p.exact_at(l);
            for (int k = p.lo; k <= std::min(p.hi(), l - 1); ++k) {
                e[static_cast<std::size_t>(k)] += e[ul] * p.exact_at(k) / leave;
            }
        }
        occ.exact_passage.assign(size, Rational(0));
        occ.exact_visits.assign(size, Rational(0));
        for (int k = 0; k < start_n; ++k) {
            const auto uk = static_cast<std::size_t>(k);
            occ.exact_passage[uk] = e[uk];
            occ.exact_visits[uk] = absorbing(k, threshold) ? e[uk] : Rational(e[uk] / (1 - rows[uk].exact_at(k)));
        }
        if (!absorbing(start_n, threshold)) {
            const Rational stay = rows[us].exact_at(start_n);
            occ.exact_passage[us] = stay;
            occ.exact_visits[us] = stay / (1 - stay);
        }
        for (std::size_t k = 0; k < size; ++k) {
            occ.passage[k] = to_double(occ.exact_passage[k]);
            occ.visits[k] = to_double(occ.exact_visits[k]);
        }
    } else {
        for (int k = 0; k < start_n; ++k) {
            const auto uk = static_cast<std::size_t>(k);
            occ.passage[uk] = entry[uk];
            occ.visits[uk] = absorbing(k, threshold) ? entry[uk] : entry[uk] / (1.0 - rows[uk].at(k));
        }
        if (!absorbing(start_n, threshold)) {
            const double stay = rows[us].at(start_n);
            occ.passage[us] = stay;
            occ.visits[us] = stay / (1.0 - stay);
        }
    }

    // Round-by-round law, truncated once the live mass is negligible.
    std::vector<double> current(size, 0.0);
    current[us] = 1.0;
    occ.rounds.push_back(current);
    for (int j = 1; j <= 100000; ++j) {
        std::vector<double> next(size, 0.0);
        double live = 0.0;
        for (int l = 0; l <= start_n; ++l) {
            const auto ul = static_cast<std::size_t>(l);
            if (absorbing(l, threshold) || current[ul] == 0.0) continue;
            const Pmf& p = rows[ul];
            for (int k = p.lo; k <= p.hi(); ++k) next[static_cast<std::size_t>(k)] += current[ul] * p.at(k);
        }
        for (int l = 0; l <= start_n; ++l) {
            if (!absorbing(l, threshold)) live += next[static_cast<std::size_t>(l)];
        }
        occ.rounds.push_back(next);
        if (live < residual_tol) break;
        current = std::move(next);
    }
    return occ;
}

}  // namespace electra
