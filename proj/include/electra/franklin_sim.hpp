#pragma once

// Monte Carlo of the Franklin ring election. TruePersistent keeps every
// player's original key; the Redraw variants draw fresh keys each round and
// are the recursive chains handled by the phase engine.

#include "electra/rational.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace electra {

enum class SimVariant { TruePersistent, RedrawCircular, RedrawLinearI, RedrawLinearII };

std::string to_string(SimVariant v);
SimVariant parse_sim_variant(const std::string& s);

struct SimConfig {
    SimVariant variant = SimVariant::TruePersistent;
    int n = 2;
    long trials = 1;
    std::uint64_t seed = 1;
    int stop_threshold = 1;
    unsigned threads = 0;  // 0: hardware concurrency
    bool trace = true;     // keep the survivors-per-round trace

    /// Throws DomainError unless n >= 2, trials >= 1, stop_threshold >= 1.
    void validate() const;
};

struct TrialRecord {
    long trial = 0;
    int rounds = 0;
    /// Every player relays two messages per round: 2 n per round.
    std::uint64_t messages = 0;
    /// Messages sent by players still in the race, sum over rounds of 2 * alive.
    std::uint64_t active_messages = 0;
    std::vector<int> survivors;  // survivors[r] after round r + 1
    int redraws = 0;             // trials restarted because two compared keys tied
};

/// Deterministic for a given config, whatever the thread count.
std::vector<TrialRecord> run_election(const SimConfig& config);

/// Substream seed for one trial.
std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t trial);

struct SimEstimate {
    std::string statistic;
    double point = 0.0;
    double std_error = 0.0;  // sample sd / sqrt(trials)
    long trials = 0;
    std::vector<long> histogram;  // by value, where the statistic is integer valued
};

SimEstimate rounds_estimate(const std::vector<TrialRecord>& records);
SimEstimate messages_estimate(const std::vector<TrialRecord>& records);
/// Mean over trials of S_{r+1} / S_r for each round r with S_r > 1 in some trial.
std::vector<double> survival_ratios(const std::vector<TrialRecord>& records, int n);

/// (3e^4 - 48e^2 + 233) / 384.
double c2_closed_form();

/// Mean survivors after two rounds, divided by n.
SimEstimate estimate_c2(SimVariant variant, int n, long trials, std::uint64_t seed, unsigned threads = 0);

/// Exhaustive count over all rings of `n` distinct keys (n <= 10) under
/// persistent keys: rings with `first` survivors after round one, and among
/// them those with `second` survivors after round two.
struct RingCount {
    long conditioning = 0;
    long favourable = 0;
    Rational probability() const;
};

RingCount exact_ring_conditional(int n = 8, int first = 4, int second = 2);

struct ConditionalCheck {
    SimEstimate estimate;  // conditional frequency of 2 survivors given 4, on 8 players
    Rational exact;        // enumeration for TruePersistent, P_C(4, 2) for the redraw ring
    long events = 0;
};

/// Throws DomainError for linear variants and when fewer than `min_events`
/// conditioning rings occur.
ConditionalCheck conditional_second_round_check(SimVariant variant, long trials, std::uint64_t seed,
                                                long min_events = 1000, unsigned threads = 0);

/// `variant,n,trial,rounds,messages`
void write_results_csv(SimVariant variant, int n, const std::vector<TrialRecord>& records, std::ostream& out);
/// `variant,n,stat,point,stderr,trials`
void write_summary_csv(SimVariant variant, int n, const std::vector<SimEstimate>& stats, std::ostream& out);

}  // namespace electra
