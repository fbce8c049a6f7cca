#include "electra/franklin_sim.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <random>
#include <thread>

namespace electra {

std::string to_string(SimVariant v) {
    switch (v) {
        case SimVariant::TruePersistent: return "true-persistent";
        case SimVariant::RedrawCircular: return "redraw-circular";
        case SimVariant::RedrawLinearI: return "redraw-linear-i";
        case SimVariant::RedrawLinearII: return "redraw-linear-ii";
    }
    return "?";
}

SimVariant parse_sim_variant(const std::string& s) {
    for (auto v : {SimVariant::TruePersistent, SimVariant::RedrawCircular, SimVariant::RedrawLinearI,
                   SimVariant::RedrawLinearII}) {
        if (s == to_string(v)) return v;
    }
    throw DomainError("unknown simulation variant '" + s + "'");
}

void SimConfig::validate() const {
    if (n < 2) throw DomainError("simulation needs n >= 2");
    if (trials < 1) throw DomainError("simulation needs trials >= 1");
    if (stop_threshold < 1) throw DomainError("simulation needs stop threshold >= 1");
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

enum class Topology { Circular, LinearI, LinearII };

Topology topology(SimVariant v) {
    switch (v) {
        case SimVariant::RedrawLinearI: return Topology::LinearI;
        case SimVariant::RedrawLinearII: return Topology::LinearII;
        default: return Topology::Circular;
    }
}

// Writes the peaks of `keys` (in order) into `out`. Returns false if two
// compared keys are equal.
bool find_peaks(const std::vector<std::uint64_t>& keys, Topology topo, std::vector<std::uint64_t>& out) {
    out.clear();
    const std::size_t m = keys.size();
    for (std::size_t i = 0; i < m; ++i) {
        const std::uint64_t k = keys[i];
        bool peak = true;
        auto compare = [&](std::size_t j) {
            if (keys[j] == k) return false;
            if (keys[j] > k) peak = false;
            return true;
        };
        if (topo == Topology::Circular) {
            if (m == 1) {
                out.push_back(k);
                continue;
            }
            if (!compare((i + m - 1) % m) || !compare((i + 1) % m)) return false;
        } else {
            const bool at_edge = i == 0 || i + 1 == m;
            if (at_edge && topo == Topology::LinearI) peak = false;
            if (i > 0 && !compare(i - 1)) return false;
            if (i + 1 < m && !compare(i + 1)) return false;
        }
        if (peak) out.push_back(k);
    }
    return true;
}

TrialRecord run_trial(const SimConfig& cfg, long trial) {
    std::mt19937_64 rng(trial_seed(cfg.seed, static_cast<std::uint64_t>(trial)));
    const Topology topo = topology(cfg.variant);
    const bool redraw = cfg.variant != SimVariant::TruePersistent;
    const auto n = static_cast<std::size_t>(cfg.n);
    TrialRecord rec;
    rec.trial = trial;
    std::vector<std::uint64_t> alive, next;
    alive.reserve(n);
    next.reserve(n);
    for (;;) {
        alive.resize(n);
        for (auto& k : alive) k = rng();
        rec.rounds = 0;
        rec.messages = 0;
        rec.active_messages = 0;
        rec.survivors.clear();
        bool tied = false;
        while (alive.size() > static_cast<std::size_t>(cfg.stop_threshold)) {
            if (redraw && rec.rounds > 0) {
                for (auto& k : alive) k = rng();
            }
            if (!find_peaks(alive, topo, next)) {
                tied = true;
                break;
            }
            ++rec.rounds;
            rec.messages += 2 * n;
            rec.active_messages += 2 * alive.size();
            if (cfg.trace) rec.survivors.push_back(static_cast<int>(next.size()));
            if (next.empty()) break;  // linear (i) emergency exit: one player is picked, game over
            std::swap(alive, next);
        }
        if (!tied) return rec;
        ++rec.redraws;
    }
}

double mean_and_se(const std::vector<double>& xs, double& se) {
    const double n = static_cast<double>(xs.size());
    const double mean = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
    double ss = 0.0;
    for (double x : xs) ss += (x - mean) * (x - mean);
    se = xs.size() > 1 ? std::sqrt(ss / (n - 1.0) / n) : 0.0;
    return mean;
}

}  // namespace

std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t trial) { return splitmix64(seed ^ splitmix64(trial)); }

std::vector<TrialRecord> run_election(const SimConfig& config) {
    config.validate();
    std::vector<TrialRecord> records(static_cast<std::size_t>(config.trials));
    unsigned threads = config.threads ? config.threads : std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<long>(threads, config.trials));
    auto work = [&](unsigned t) {
        for (long i = t; i < config.trials; i += threads) records[static_cast<std::size_t>(i)] = run_trial(config, i);
    };
    if (threads <= 1) {
        work(0);
    } else {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t);
    }
    return records;
}

SimEstimate rounds_estimate(const std::vector<TrialRecord>& records) {
    SimEstimate e;
    e.statistic = "rounds";
    e.trials = static_cast<long>(records.size());
    std::vector<double> xs;
    for (const auto& r : records) {
        xs.push_back(r.rounds);
        if (e.histogram.size() <= static_cast<std::size_t>(r.rounds)) e.histogram.resize(r.rounds + 1, 0);
        ++e.histogram[static_cast<std::size_t>(r.rounds)];
    }
    if (!xs.empty()) e.point = mean_and_se(xs, e.std_error);
    return e;
}

SimEstimate messages_estimate(const std::vector<TrialRecord>& records) {
    SimEstimate e;
    e.statistic = "messages";
    e.trials = static_cast<long>(records.size());
    std::vector<double> xs;
    for (const auto& r : records) xs.push_back(static_cast<double>(r.messages));
    if (!xs.empty()) e.point = mean_and_se(xs, e.std_error);
    return e;
}

std::vector<double> survival_ratios(const std::vector<TrialRecord>& records, int n) {
    std::vector<double> sum;
    std::vector<long> count;
    for (const auto& r : records) {
        int prev = n;
        for (std::size_t i = 0; i < r.survivors.size(); ++i) {
            if (sum.size() <= i) {
                sum.resize(i + 1, 0.0);
                count.resize(i + 1, 0);
            }
            sum[i] += static_cast<double>(r.survivors[i]) / prev;
            ++count[i];
            prev = r.survivors[i];
        }
    }
    for (std::size_t i = 0; i < sum.size(); ++i) sum[i] /= static_cast<double>(count[i]);
    return sum;
}

double c2_closed_form() {
    const double e2 = std::exp(2.0);
    return (3.0 * e2 * e2 - 48.0 * e2 + 233.0) / 384.0;
}

SimEstimate estimate_c2(SimVariant variant, int n, long trials, std::uint64_t seed, unsigned threads) {
    if (topology(variant) != Topology::Circular) throw DomainError("c2 is defined for the ring variants");
    SimConfig cfg{variant, n, trials, seed, 1, threads, true};
    auto records = run_election(cfg);
    std::vector<double> xs;
    for (const auto& r : records) {
        int s2 = r.survivors.empty() ? n : r.survivors[std::min<std::size_t>(1, r.survivors.size() - 1)];
        xs.push_back(static_cast<double>(s2) / n);
    }
    SimEstimate e;
    e.statistic = "c2";
    e.trials = trials;
    e.point = mean_and_se(xs, e.std_error);
    return e;
}

Rational RingCount::probability() const {
    if (conditioning == 0) throw DomainError("no conditioning rings");
    Rational p(favourable, conditioning);
    p.canonicalize();
    return p;
}

RingCount exact_ring_conditional(int n, int first, int second) {
    if (n < 2 || n > 10) throw DomainError("exact_ring_conditional needs 2 <= n <= 10");
    std::vector<std::uint64_t> keys(static_cast<std::size_t>(n));
    std::iota(keys.begin(), keys.end(), 1);
    RingCount c;
    std::vector<std::uint64_t> r1, r2;
    do {
        find_peaks(keys, Topology::Circular, r1);
        if (static_cast<int>(r1.size()) != first) continue;
        ++c.conditioning;
        find_peaks(r1, Topology::Circular, r2);
        if (static_cast<int>(r2.size()) == second) ++c.favourable;
    } while (std::next_permutation(keys.begin(), keys.end()));
    return c;
}

ConditionalCheck conditional_second_round_check(SimVariant variant, long trials, std::uint64_t seed,
                                                long min_events, unsigned threads) {
    if (topology(variant) != Topology::Circular) throw DomainError("the 8-ring check needs a ring variant");
    SimConfig cfg{variant, 8, trials, seed, 1, threads, true};
    auto records = run_election(cfg);
    ConditionalCheck out;
    long hits = 0;
    for (const auto& r : records) {
        if (r.survivors.empty() || r.survivors[0] != 4) continue;
        ++out.events;
        if (r.survivors.size() > 1 && r.survivors[1] == 2) ++hits;
    }
    if (out.events < min_events) {
        throw DomainError("only " + std::to_string(out.events) + " conditioning rings in " + std::to_string(trials) +
                          " trials, need " + std::to_string(min_events));
    }
    const double p = static_cast<double>(hits) / static_cast<double>(out.events);
    out.estimate.statistic = "p_second_round_2_given_4";
    out.estimate.point = p;
    out.estimate.std_error = std::sqrt(p * (1.0 - p) / static_cast<double>(out.events));
    out.estimate.trials = trials;
    out.exact = variant == SimVariant::TruePersistent ? exact_ring_conditional().probability() : Rational(1, 3);
    return out;
}

void write_results_csv(SimVariant variant, int n, const std::vector<TrialRecord>& records, std::ostream& out) {
    out << "variant,n,trial,rounds,messages\n";
    const std::string v = to_string(variant);
    for (const auto& r : records) out << v << ',' << n << ',' << r.trial << ',' << r.rounds << ',' << r.messages << '\n';
}

void write_summary_csv(SimVariant variant, int n, const std::vector<SimEstimate>& stats, std::ostream& out) {
    out << "variant,n,stat,point,stderr,trials\n";
    const auto old = out.precision(17);
    for (const auto& s : stats) {
        out << to_string(variant) << ',' << n << ',' << s.statistic << ',' << s.point << ',' << s.std_error << ','
            << s.trials << '\n';
    }
    out.precision(old);
}

}  // namespace electra
