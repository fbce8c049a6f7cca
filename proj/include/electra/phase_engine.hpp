#pragma once

// Exact law of the number of rounds X_n until the survivor chain stops.
//
//   Pi(n, j)     = Pr(X_n = j)
//   Lambda(n, j) = Pr(X_n <= j)
//   Pi(n, j)     = sum_k P(n, k) Pi(k, j - 1)      for transient n, j >= 1
//
// States 1..a are absorbing (stop as soon as at most a players remain). State
// 0 is absorbing too; it is either unreachable, the emergency exit of the
// linear peak model, or the target of an absorb-at-zero chain (threshold 0).
// Rows n <= model.exact_cutoff() are computed in exact rationals, the rows
// above in doubles that read the exact rows.

#include "electra/survivor_models.hpp"

#include <iosfwd>
#include <memory>
#include <span>
#include <vector>

namespace electra {

/// Cost of the emergency exit at state 0.
///   Standard: Pi(0,0) = 1, picking the survivor is free.
///   AltCost:  Pi(0,1) = 1, picking the survivor costs one more round.
enum class InitConvention { Standard, AltCost };

struct EngineOptions {
    int threshold = 1;
    InitConvention init = InitConvention::Standard;
    double residual_tol = 1e-9;  // stop adding columns once every row has 1 - Lambda below this
    int max_columns = 20000;
};

class PhaseTable {
  public:
    const SurvivorModel& model() const { return model_; }
    int max_n() const { return max_n_; }
    int j_max() const { return j_max_; }
    int threshold() const { return options_.threshold; }
    InitConvention init() const { return options_.init; }
    const EngineOptions& options() const { return options_; }

    bool is_absorbing(int n) const;
    bool is_exact(int n) const { return n >= 0 && n <= exact_hi_; }
    /// Highest row kept in exact arithmetic (-1 if none).
    int exact_hi() const { return exact_hi_; }

    double prob(int n, int j) const;
    double cdf(int n, int j) const;
    Rational exact_prob(int n, int j) const;
    Rational exact_cdf(int n, int j) const;
    std::span<const double> row(int n) const;

    /// Tail mass not represented in the table, 1 - Lambda(n, j_max).
    double residual(int n) const;

    /// Transition row used for n (empty for absorbing states).
    const Pmf& transition(int n) const;

    /// `n,j,prob` for every row; zero entries are skipped.
    void write_csv(std::ostream& out) const;
    /// `n,j,numerator,denominator` for the exact rows.
    void write_exact_csv(std::ostream& out) const;

  private:
    friend PhaseTable compute_phase_table(const SurvivorModel&, int, const EngineOptions&);

    explicit PhaseTable(SurvivorModel m) : model_(std::move(m)) {}
    void check_row(int n) const;

    SurvivorModel model_;
    EngineOptions options_;
    int max_n_ = 0;
    int j_max_ = 0;
    int exact_hi_ = -1;
    std::vector<std::vector<double>> pi_;       // pi_[n][j]
    std::vector<std::vector<Rational>> exact_;  // exact_[n][j], n <= exact_hi_
    std::shared_ptr<const std::vector<Pmf>> transitions_;
};

/// Throws DomainError on a model/threshold mismatch (threshold 0 needs a
/// chain that can reach 0) and ResourceError if max_columns is exhausted.
PhaseTable compute_phase_table(const SurvivorModel& model, int max_n, const EngineOptions& options = {});

struct MeanPhases {
    std::vector<double> from_table;      // sum_j j Pi(n, j)
    std::vector<double> from_recursion;  // x(n) = (1 + sum_{k != n} P(n,k) x(k)) / (1 - P(n,n))
    std::vector<Rational> exact_from_table;
    std::vector<Rational> exact_from_recursion;
    double max_discrepancy = 0.0;
    /// Rational equality on every exact row (only expected when X_n has
    /// finite support, i.e. no truncated tail).
    bool exact_rows_agree = false;
};

MeanPhases mean_phases(const PhaseTable& table);

/// `n,x,log_alpha_n,phi_residual` with x from the recursion.
void write_means_csv(const PhaseTable& table, double alpha, std::ostream& out);

/// Probability of stopping with exactly i players, i = 0..a. Column 0 is only
/// non-zero for chains that can absorb at 0; the emergency exit of the linear
/// peak model ends with one player and is booked under i = 1.
struct EndingStateProbs {
    int threshold = 1;
    std::vector<std::vector<double>> probs;       // probs[n][i]
    std::vector<std::vector<Rational>> exact;     // rows n <= exact cutoff

    double prob(int n, int i) const;
    Rational exact_prob(int n, int i) const;
};

EndingStateProbs ending_state_probs(const SurvivorModel& model, int max_n, int threshold);

/// Occupancy of the chain started at n players (stopped at threshold 1, or at
/// 0 for absorb-at-zero chains).
///   passage[k]  Pr(some round j >= 1 ends with exactly k players)
///   visits[k]   expected number of rounds j >= 1 ending with k players
///   rounds[j][k] Pr(round j ends with k players), R(0,k) = [k == n]
/// visits == passage when the chain cannot stay put, and sum_k visits[k] = E X_n.
struct Occupancy {
    int start = 0;
    std::vector<double> passage;
    std::vector<double> visits;
    std::vector<Rational> exact_passage;  // present when start <= exact cutoff
    std::vector<Rational> exact_visits;
    std::vector<std::vector<double>> rounds;
};

Occupancy occupancy_probs(const SurvivorModel& model, int start_n, double residual_tol = 1e-12);

}  // namespace electra
