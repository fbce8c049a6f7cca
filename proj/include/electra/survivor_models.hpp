#pragma once

// Survivor laws Y_n: how many of n players remain after one elimination round.

#include "electra/peak_math.hpp"
#include "electra/rational.hpp"

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace electra {

enum class ModelKind {
    ToyHalving,
    DeterministicHalving,
    FairCoin,
    BiasedCoin,
    CoinMaxOne,
    DemonCoin,
    PeakLinearI,
    PeakLinearII,
    PeakCircular,
    ExplicitMatrix,
};

/// What reaching zero survivors means for a chain.
enum class ZeroState {
    Unreachable,    // Y_n >= 1 always
    EmergencyExit,  // zero peaks: one player is picked at random, game over
    Absorbing,      // everyone can be killed; the chain absorbs at 0
};

/// Truncation for floating binomial rows: each dropped tail carries less mass.
inline constexpr double kTailMass = 1e-15;

/// One row of the transition matrix, P(n, lo..hi).
struct Pmf {
    int lo = 0;
    std::vector<double> probs;
    std::vector<Rational> exact;  // filled (same length as probs) for exact rows

    bool is_exact() const { return !exact.empty(); }
    int hi() const { return lo + static_cast<int>(probs.size()) - 1; }
    double at(int k) const;
    Rational exact_at(int k) const;
};

class SurvivorModel {
  public:
    /// Y_n = floor((n + I)/2) with I a fair bit.
    static SurvivorModel toy_halving();
    /// Y_n = floor(n/2); violates the mean-increment condition.
    static SurvivorModel deterministic_halving();
    /// Heads survive; if every coin shows tails, everybody stays.
    static SurvivorModel fair_coin();
    static SurvivorModel biased_coin(const Rational& p);
    /// Heads survive; all tails ends the game with one player.
    static SurvivorModel coin_max_one(const Rational& p);
    /// Heads survive, then a demon kills one survivor with probability nu.
    /// Raw chain on {0,1,...}; see with_dummy().
    static SurvivorModel demon_coin(const Rational& p, const Rational& nu);
    static SurvivorModel peaks(PeakVariant variant, int exact_cutoff = kDefaultExactCutoff,
                               int cap = kDefaultPeakCap);
    /// Rows `i,j,prob` with prob given as a decimal or as `p/q`. A header row is
    /// allowed. Row 1 defaults to {1: 1}.
    static SurvivorModel explicit_matrix(std::istream& csv);
    static SurvivorModel explicit_matrix(std::vector<RationalDist> rows);  // rows[i]

    /// Same law, with rows n <= cutoff computed exactly. Peak models rebuild
    /// their table, so `cap` must admit the cutoff.
    SurvivorModel with_exact_cutoff(int cutoff, int cap = kDefaultPeakCap) const;

    /// Adds a player that is never eliminated: Y'_n = Y_{n-1} + 1, Y'_1 = 1.
    /// Turns absorption at 0 into absorption at 1; X_n(raw) = X'_{n+1}.
    SurvivorModel with_dummy() const;

    const std::string& name() const { return name_; }
    ModelKind kind() const { return kind_; }
    ZeroState zero_state() const { return zero_state_; }
    int absorbing_state() const { return zero_state_ == ZeroState::Absorbing ? 0 : 1; }
    bool dummy_shifted() const { return dummy_; }
    int exact_cutoff() const { return exact_cutoff_; }
    std::optional<Rational> declared_alpha() const { return alpha_; }
    /// Largest n with a defined row (only finite for explicit matrices).
    int max_n() const { return max_n_; }
    const Rational& p() const { return p_; }
    const Rational& nu() const { return nu_; }

    Pmf pmf(int n) const;

    double mean(int n) const;
    double cdf(int n, int k) const;
    /// Exact versions; throw DomainError when row n is not in the exact regime.
    Rational exact_mean(int n) const;
    Rational exact_cdf(int n, int k) const;

    /// Inverse-CDF draw from pmf(n).
    int sample(int n, std::mt19937_64& rng) const;

  private:
    SurvivorModel() = default;

    int min_n() const;
    Pmf raw_pmf(int n) const;

    std::string name_;
    ModelKind kind_ = ModelKind::ToyHalving;
    ZeroState zero_state_ = ZeroState::Unreachable;
    bool dummy_ = false;
    int exact_cutoff_ = kDefaultExactCutoff;
    int max_n_ = std::numeric_limits<int>::max();
    Rational p_ = Rational(1, 2);
    Rational nu_ = 0;
    std::optional<Rational> alpha_;
    std::shared_ptr<const PeakTable> peaks_;
    std::shared_ptr<const std::vector<RationalDist>> matrix_;
};

/// 53-bit uniform double in [0,1) from one 64-bit draw.
inline double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace electra
