#include "cli.hpp"

#include "electra/condition_checker.hpp"
#include "electra/csv.hpp"
#include "electra/fixtures.hpp"
#include "electra/franklin_sim.hpp"
#include "electra/metrics.hpp"
#include "electra/periodicity.hpp"
#include "electra/phase_engine.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <ostream>
#include <sstream>

namespace electra::cli {

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Options {
    std::string command;
    std::string model = "peak-linear-i";
    std::string p = "1/2";
    std::string nu = "0";
    std::string matrix;
    bool dummy = false;
    int max_n = 7;
    int threshold = 1;
    std::string init = "standard";
    int exact_cutoff = -1;  // -1: model default
    std::uint64_t seed = 1;
    long trials = 10000;
    std::string out;
    bool check_fixtures = false;
    std::string alpha;
    int n_max = 200;
    std::string variant = "true-persistent";
    std::string estimate = "rounds";
    int n = 100;
    int n_lo = 50;
    int n_hi = 500;
    int L = 5;
    std::string figure;
    bool overlays = false;
    unsigned threads = 0;
    double residual_tol = 1e-9;
    ConditionOptions cond;
};

// ------------------------------------------------------------------ models

SurvivorModel build_model(const Options& o, int exact_rows = -1) {
    auto rat = [](const std::string& s, const char* what) {
        try {
            return parse_rational(s);
        } catch (const DomainError&) {
            throw UsageError(std::string("bad ") + what + " '" + s + "'");
        }
    };
    int cutoff = o.exact_cutoff >= 0 ? o.exact_cutoff : kDefaultExactCutoff;
    if (exact_rows > cutoff) cutoff = exact_rows;
    const int cap = std::max(kDefaultPeakCap, cutoff);
    SurvivorModel m = [&] {
        const std::string& k = o.model;
        if (k == "toy") return SurvivorModel::toy_halving();
        if (k == "det-halving") return SurvivorModel::deterministic_halving();
        if (k == "fair-coin") return SurvivorModel::fair_coin();
        if (k == "biased-coin") return SurvivorModel::biased_coin(rat(o.p, "--p"));
        if (k == "coin-max-one") return SurvivorModel::coin_max_one(rat(o.p, "--p"));
        if (k == "demon-coin") return SurvivorModel::demon_coin(rat(o.p, "--p"), rat(o.nu, "--nu"));
        if (k == "peak-linear-i") return SurvivorModel::peaks(PeakVariant::LinearI, cutoff, cap);
        if (k == "peak-linear-ii") return SurvivorModel::peaks(PeakVariant::LinearII, cutoff, cap);
        if (k == "peak-circular") return SurvivorModel::peaks(PeakVariant::Circular, cutoff, cap);
        if (k == "explicit") {
            if (o.matrix.empty()) throw UsageError("--model explicit needs --matrix FILE");
            std::ifstream in(o.matrix);
            if (!in) throw UsageError("cannot read " + o.matrix);
            return SurvivorModel::explicit_matrix(in);
        }
        throw UsageError("unknown model '" + k + "'");
    }();
    if (m.exact_cutoff() != cutoff) m = m.with_exact_cutoff(cutoff, cap);
    if (o.dummy) m = m.with_dummy();
    return m;
}

Rational resolve_alpha(const Options& o, const SurvivorModel& m) {
    if (!o.alpha.empty()) {
        try {
            return parse_rational(o.alpha);
        } catch (const DomainError&) {
            throw UsageError("bad --alpha '" + o.alpha + "'");
        }
    }
    if (auto a = m.declared_alpha()) return *a;
    throw UsageError("model " + m.name() + " declares no alpha; pass --alpha");
}

InitConvention parse_init(const std::string& s) {
    if (s == "standard") return InitConvention::Standard;
    if (s == "altcost") return InitConvention::AltCost;
    throw UsageError("--init must be standard or altcost");
}

// ------------------------------------------------------------------ output

class Output {
  public:
    Output(fs::path dir, const Options& o, const std::vector<std::string>& args) : dir_(std::move(dir)) {
        config_ = {{"command", o.command},
                   {"args", args},
                   {"model", o.model},
                   {"p", o.p},
                   {"nu", o.nu},
                   {"matrix", o.matrix},
                   {"dummy", o.dummy},
                   {"max_n", o.max_n},
                   {"threshold", o.threshold},
                   {"init", o.init},
                   {"exact_cutoff", o.exact_cutoff},
                   {"seed", o.seed},
                   {"trials", o.trials},
                   {"alpha", o.alpha},
                   {"n_max", o.n_max},
                   {"variant", o.variant},
                   {"estimate", o.estimate},
                   {"n", o.n},
                   {"n_lo", o.n_lo},
                   {"n_hi", o.n_hi},
                   {"L", o.L},
                   {"figure", o.figure},
                   {"residual_tol", o.residual_tol},
                   {"increment_tol", o.cond.increment_tol},
                   {"moment_p", o.cond.moment_p},
                   {"moment_bound", o.cond.moment_bound},
                   {"concentration_bound", o.cond.concentration_bound},
                   {"epsilon", o.cond.epsilon},
                   {"delta_exponent", o.cond.delta_exponent}};
    }

    void write(const std::string& name, const std::function<void(std::ostream&)>& body) {
        atomic_write(dir_ / name, body);
        files_.push_back(name);
    }

    void finish(const std::string& summary, int status) {
        write("config.json", [&](std::ostream& s) { s << config_.dump(2) << '\n'; });
        json manifest = {{"command", config_["command"]}, {"summary", summary}, {"exit_code", status}, {"files", files_}};
        atomic_write(dir_ / "manifest.json", [&](std::ostream& s) { s << manifest.dump(2) << '\n'; });
    }

  private:
    fs::path dir_;
    json config_;
    std::vector<std::string> files_;
};

struct PlotRow {
    double x;
    double y;
    std::string series;
};

void write_plot(Output& o, const std::string& name, const std::vector<PlotRow>& rows) {
    o.write(name, [&](std::ostream& s) {
        s << "x,y,series\n";
        for (const auto& r : rows) s << format_double(r.x) << ',' << format_double(r.y) << ',' << r.series << '\n';
    });
}

// ------------------------------------------------------------------ table

int cmd_table(const Options& o, Output& output, std::ostream& out) {
    if (o.max_n < 1) throw UsageError("--max-n must be >= 1");
    const int exact_rows = o.check_fixtures ? o.max_n : -1;
    SurvivorModel model = build_model(o, exact_rows);
    EngineOptions eo{o.threshold, parse_init(o.init), o.residual_tol};
    PhaseTable table = compute_phase_table(model, o.max_n, eo);

    output.write("pmf.csv", [&](std::ostream& s) {
        s << "n,k,prob,numerator,denominator\n";
        for (int n = 1; n <= o.max_n; ++n) {
            Pmf p = model.pmf(n);
            for (int k = p.lo; k <= p.hi(); ++k) {
                if (p.at(k) == 0.0 && (!p.is_exact() || p.exact_at(k) == 0)) continue;
                s << n << ',' << k << ',' << format_double(p.at(k)) << ',';
                if (p.is_exact()) {
                    Rational q = p.exact_at(k);
                    s << q.get_num().get_str() << ',' << q.get_den().get_str();
                } else {
                    s << ',';
                }
                s << '\n';
            }
        }
    });
    output.write("phase.csv", [&](std::ostream& s) { table.write_csv(s); });
    if (table.exact_hi() >= 0) output.write("phase_exact.csv", [&](std::ostream& s) { table.write_exact_csv(s); });
    const double alpha = model.declared_alpha() ? to_double(*model.declared_alpha()) : 0.5;
    output.write("means.csv", [&](std::ostream& s) { write_means_csv(table, alpha, s); });

    std::ostringstream summary;
    int status = kExitPass;
    if (!o.check_fixtures) {
        summary << "table complete model=" << model.name() << " max_n=" << o.max_n << " j_max=" << table.j_max();
    } else {
        std::vector<int> ids;
        std::vector<std::string> mismatches;
        if (o.threshold != 1) throw UsageError("--check-fixtures needs threshold 1");
        if (o.model == "peak-linear-i") {
            ids = eo.init == InitConvention::AltCost ? std::vector<int>{1, 4} : std::vector<int>{1, 2};
        } else if (o.model == "peak-circular" && eo.init == InitConvention::Standard) {
            ids = {5, 6};
        } else if (o.model == "toy" && eo.init == InitConvention::Standard) {
            for (int n = 1; n <= o.max_n; ++n)
                for (int j = 0; j <= table.j_max(); ++j)
                    if (table.exact_cdf(n, j) != toy_exact_cdf(n, j))
                        mismatches.push_back("toy n=" + std::to_string(n) + " j=" + std::to_string(j));
        } else {
            throw UsageError("no fixtures for model " + o.model + " with init " + o.init);
        }
        for (int id : ids) {
            auto m = check_fixture(id, o.max_n);
            mismatches.insert(mismatches.end(), m.begin(), m.end());
        }
        for (const auto& m : mismatches) out << "mismatch: " << m << '\n';
        status = mismatches.empty() ? kExitPass : kExitFail;
        summary << "table " << (status == kExitPass ? "PASS" : "FAIL") << " model=" << model.name()
                << " max_n=" << o.max_n << " mismatches=" << mismatches.size();
        if (!ids.empty()) {
            summary << " fixtures=";
            for (std::size_t i = 0; i < ids.size(); ++i) summary << (i ? "," : "") << ids[i];
        }
    }
    out << summary.str() << '\n';
    output.finish(summary.str(), status);
    return status;
}

// ------------------------------------------------------------------ figures

struct FigureSpec {
    PeakVariant variant;
    InitConvention init;
    enum Kind { Residual, Cdf, Pmf, Fit, Compare } kind;
    int n_lo;
    int n_hi;
};

FigureSpec figure_spec(const std::string& id) {
    using K = FigureSpec;
    const auto L = PeakVariant::LinearI;
    const auto C = PeakVariant::Circular;
    const auto S = InitConvention::Standard;
    const auto A = InitConvention::AltCost;
    if (id == "fig1") return {L, S, K::Residual, 50, 500};
    if (id == "fig2") return {L, S, K::Cdf, 20, 500};
    if (id == "fig3") return {L, S, K::Pmf, 150, 500};
    if (id == "fig4") return {L, S, K::Pmf, 1, 40};
    if (id == "fig5") return {L, A, K::Cdf, 5, 500};
    if (id == "fig6") return {L, A, K::Pmf, 5, 500};
    if (id == "fig7") return {L, A, K::Pmf, 1, 100};
    if (id == "fig8") return {L, S, K::Fit, 50, 500};
    if (id == "fig9") return {C, S, K::Cdf, 5, 500};
    if (id == "fig10") return {C, S, K::Compare, 20, 500};
    if (id == "fig11") return {C, S, K::Pmf, 1, 40};
    if (id == "fig12") return {C, S, K::Fit, 50, 500};
    throw UsageError("unknown figure '" + id + "' (fig1..fig12)");
}

// Moments of the limit law read off the largest row: mean of X_n - log n and variance of X_n.
std::pair<double, double> limit_moments(const PhaseTable& t, int n, double alpha) {
    double m = 0.0, m2 = 0.0;
    for (int j = 0; j <= t.j_max(); ++j) {
        m += j * t.prob(n, j);
        m2 += static_cast<double>(j) * j * t.prob(n, j);
    }
    return {m - log_base(n, alpha), std::max(1e-12, m2 - m * m)};
}

double gumbel_cdf(double x, double mean, double var) {
    const double beta = std::sqrt(6.0 * var) / std::numbers::pi;
    const double mu = mean - std::numbers::egamma * beta;
    return std::exp(-std::exp(-(x - mu) / beta));
}

double normal_cdf(double x, double mean, double var) { return 0.5 * std::erfc(-(x - mean) / std::sqrt(2.0 * var)); }

int cmd_figure(const Options& o, Output& output, std::ostream& out) {
    const FigureSpec spec = figure_spec(o.figure);
    constexpr double alpha = 1.0 / 3.0;
    Options mo = o;
    mo.model = spec.variant == PeakVariant::Circular ? "peak-circular" : "peak-linear-i";
    SurvivorModel model = build_model(mo);
    EngineOptions eo{1, spec.init, o.residual_tol};
    PhaseTable table = compute_phase_table(model, spec.n_hi, eo);
    std::vector<PlotRow> rows;
    std::ostringstream summary;
    summary << "figure " << o.figure << " complete model=" << model.name() << " n=" << spec.n_lo << ".." << spec.n_hi;

    auto residuals = [&](const PhaseTable& t) {
        auto mp = mean_phases(t);
        std::vector<PlotRow> r;
        for (int n = spec.n_lo; n <= spec.n_hi; ++n) {
            const double x = log_base(n, alpha);
            r.push_back({x, mp.from_recursion[static_cast<std::size_t>(n)] - x, "observed"});
        }
        return r;
    };

    switch (spec.kind) {
        case FigureSpec::Residual: {
            rows = residuals(table);
            auto [lo, hi] = std::minmax_element(rows.begin(), rows.end(),
                                                [](const PlotRow& a, const PlotRow& b) { return a.y < b.y; });
            summary << " amplitude=" << format_double(hi->y - lo->y) << " min=" << format_double(lo->y)
                    << " max=" << format_double(hi->y);
            break;
        }
        case FigureSpec::Cdf:
        case FigureSpec::Pmf: {
            const auto q = spec.kind == FigureSpec::Cdf ? LimitQuantity::Cdf : LimitQuantity::Pmf;
            auto lim = empirical_limit(table, alpha, spec.n_lo, spec.n_hi, q);
            for (const auto& s : lim.samples) rows.push_back({s.x, s.value, "observed"});
            summary << " points=" << lim.samples.size() << " spread=" << format_double(lim.spread);
            if (q == LimitQuantity::Cdf) summary << " monotone_violations=" << lim.monotone_violations;
            if (o.overlays && !lim.samples.empty()) {
                auto [mean, var] = limit_moments(table, spec.n_hi, alpha);
                const double x0 = lim.samples.front().x, x1 = lim.samples.back().x;
                for (int i = 0; i <= 200; ++i) {
                    const double x = x0 + (x1 - x0) * i / 200.0;
                    if (q == LimitQuantity::Cdf) {
                        rows.push_back({x, gumbel_cdf(x, mean, var), "gumbel_ref"});
                    } else {
                        rows.push_back({x, normal_cdf(x, mean, var) - normal_cdf(x - 1.0, mean, var), "gauss_ref"});
                    }
                }
            }
            break;
        }
        case FigureSpec::Fit: {
            rows = residuals(table);
            auto fit = periodicity_reconstruct(periodicity_samples(table, alpha, spec.n_lo, spec.n_hi), o.L);
            double gap = 0.0;
            const std::size_t observed = rows.size();
            for (std::size_t i = 0; i < observed; ++i) {
                const double r = fit.reconstruct(rows[i].x);
                gap = std::max(gap, std::abs(r - rows[i].y));
                rows.push_back({rows[i].x, r, "reconstruction"});
            }
            summary << " L=" << o.L << " m1=" << format_double(fit.m1()) << " sup_gap=" << format_double(gap);
            break;
        }
        case FigureSpec::Compare: {
            Options lo = o;
            lo.model = "peak-linear-i";
            PhaseTable lin = compute_phase_table(build_model(lo), spec.n_hi, eo);
            for (const auto& [t, tag] : {std::pair{&table, "observed_circular"}, std::pair{&lin, "observed_linear"}}) {
                auto lim = empirical_limit(*t, alpha, spec.n_lo, spec.n_hi, LimitQuantity::Cdf);
                for (const auto& s : lim.samples) rows.push_back({s.x, s.value, tag});
            }
            break;
        }
    }
    write_plot(output, o.figure + ".csv", rows);
    out << summary.str() << '\n';
    output.finish(summary.str(), kExitPass);
    return kExitPass;
}

// ------------------------------------------------------------------ check

int cmd_check(const Options& o, Output& output, std::ostream& out) {
    if (o.n_max < 2) throw UsageError("--n-max must be >= 2");
    // Peak rows are kept exact over the whole range so the Gaussian crossover cannot fake a violation.
    const bool peaks = o.model.rfind("peak-", 0) == 0;
    SurvivorModel model = build_model(o, peaks && o.exact_cutoff < 0 ? o.n_max + 1 : -1);
    const Rational alpha = resolve_alpha(o, model);
    ConditionReport r = check_conditions(model, o.n_max, alpha, o.cond);

    output.write("monotone.csv", [&](std::ostream& s) {
        s << "n,k,gap\n";
        for (const auto& v : r.monotone.violations) s << v.n << ',' << v.k << ',' << format_double(v.gap) << '\n';
    });
    const double a = to_double(alpha);
    output.write("increments.csv", [&](std::ostream& s) {
        s << "n,increment,deviation\n";
        for (const auto& p : r.increment.increments)
            s << p.n << ',' << format_double(p.value) << ',' << format_double(p.value - a) << '\n';
    });
    output.write("concentration.csv", [&](std::ostream& s) {
        s << "n,value\n";
        for (const auto& p : r.concentration.series) s << p.n << ',' << format_double(p.value) << '\n';
    });
    output.write("moment.csv", [&](std::ostream& s) {
        s << "n,ratio\n";
        for (const auto& p : r.moment.series) s << p.n << ',' << format_double(p.value) << '\n';
    });

    if (!r.monotone.violations.empty()) {
        const auto& w = r.monotone.violations.front();
        out << "witness (i): n=" << w.n << " k=" << w.k << " gap=" << format_double(w.gap) << '\n';
    }
    out << "increment max deviation (n >= " << r.increment.n0 << "): " << format_double(r.increment.max_deviation)
        << '\n';
    const std::string summary = r.summary_line();
    out << summary << '\n';
    const int status = r.overall() == Verdict::Pass ? kExitPass : kExitFail;
    output.finish(summary, status);
    return status;
}

// ------------------------------------------------------------------ simulate

int cmd_simulate(const Options& o, Output& output, std::ostream& out) {
    SimVariant v = [&] {
        try {
            return parse_sim_variant(o.variant);
        } catch (const DomainError& e) {
            throw UsageError(e.what());
        }
    }();
    std::ostringstream summary;
    summary << "simulate complete variant=" << to_string(v) << " estimate=" << o.estimate;
    std::vector<SimEstimate> stats;
    int n = o.n;
    if (o.estimate == "rounds") {
        SimConfig cfg{v, o.n, o.trials, o.seed, o.threshold, o.threads, true};
        auto recs = run_election(cfg);
        auto r = rounds_estimate(recs);
        auto m = messages_estimate(recs);
        stats = {r, m};
        output.write("results.csv", [&](std::ostream& s) { write_results_csv(v, o.n, recs, s); });
        output.write("rounds_histogram.csv", [&](std::ostream& s) {
            s << "rounds,count\n";
            for (std::size_t j = 0; j < r.histogram.size(); ++j) s << j << ',' << r.histogram[j] << '\n';
        });
        output.write("survival_ratios.csv", [&](std::ostream& s) {
            s << "round,ratio\n";
            auto ratios = survival_ratios(recs, o.n);
            for (std::size_t j = 0; j < ratios.size(); ++j) s << j + 1 << ',' << format_double(ratios[j]) << '\n';
        });
        const double l3 = std::log(static_cast<double>(o.n)) / std::log(3.0);
        summary << " n=" << o.n << " trials=" << o.trials << " mean_rounds=" << format_double(r.point)
                << " stderr=" << format_double(r.std_error)
                << " messages_ratio=" << format_double(m.point / (2.0 * o.n * l3));
    } else if (o.estimate == "c2") {
        auto e = estimate_c2(v, o.n, o.trials, o.seed, o.threads);
        stats = {e};
        const double c2 = c2_closed_form();
        summary << " n=" << o.n << " trials=" << o.trials << " point=" << format_double(e.point)
                << " stderr=" << format_double(e.std_error) << " c2=" << format_double(c2)
                << " z=" << format_double((e.point - c2) / e.std_error)
                << " z_one_ninth=" << format_double((e.point - 1.0 / 9.0) / e.std_error);
    } else if (o.estimate == "conditional") {
        auto c = conditional_second_round_check(v, o.trials, o.seed, 1000, o.threads);
        stats = {c.estimate};
        n = 8;
        summary << " n=8 trials=" << o.trials << " events=" << c.events << " point=" << format_double(c.estimate.point)
                << " stderr=" << format_double(c.estimate.std_error) << " exact=" << to_string(c.exact);
    } else {
        throw UsageError("--estimate must be rounds, c2 or conditional");
    }
    output.write("summary.csv", [&](std::ostream& s) { write_summary_csv(v, n, stats, s); });
    out << summary.str() << '\n';
    output.finish(summary.str(), kExitPass);
    return kExitPass;
}

// ------------------------------------------------------------------ periodicity

int cmd_periodicity(const Options& o, Output& output, std::ostream& out) {
    if (o.n_lo < 1 || o.n_hi <= o.n_lo) throw UsageError("need 1 <= --n-lo < --n-hi");
    SurvivorModel model = build_model(o);
    const double alpha = to_double(resolve_alpha(o, model));
    EngineOptions eo{o.threshold, parse_init(o.init), o.residual_tol};
    PhaseTable table = compute_phase_table(model, o.n_hi, eo);
    auto fit = periodicity_reconstruct(periodicity_samples(table, alpha, o.n_lo, o.n_hi), o.L);
    auto mp = mean_phases(table);
    std::vector<PlotRow> rows;
    double gap = 0.0;
    for (int n = o.n_lo; n <= o.n_hi; ++n) {
        const double x = log_base(n, alpha);
        const double y = mp.from_recursion[static_cast<std::size_t>(n)] - x;
        const double r = fit.reconstruct(x);
        gap = std::max(gap, std::abs(y - r));
        rows.push_back({x, y, "observed"});
        rows.push_back({x, r, "reconstruction"});
    }
    write_plot(output, "periodicity.csv", rows);
    output.write("coefficients.csv", [&](std::ostream& s) {
        s << "l,re,im\n";
        for (int l = -o.L; l <= o.L; ++l) {
            auto c = fit.coefficient(l);
            s << l << ',' << format_double(c.real()) << ',' << format_double(c.imag()) << '\n';
        }
    });
    const double mass = fit.laplace(0.0).real();
    std::ostringstream summary;
    summary << "periodicity complete model=" << model.name() << " n=" << o.n_lo << ".." << o.n_hi << " L=" << o.L
            << " m1=" << format_double(fit.m1()) << " mass=" << format_double(mass)
            << " sup_gap=" << format_double(gap);
    out << summary.str() << '\n';
    output.finish(summary.str(), kExitPass);
    return kExitPass;
}

fs::path output_dir(const Options& o) {
    if (!o.out.empty()) return o.out;
    if (const char* env = std::getenv("ELECTRA_OUT"); env && *env) return env;
    return "electra_out";
}

void add_model_flags(CLI::App* c, Options& o) {
    c->add_option("--model", o.model,
                  "toy, det-halving, fair-coin, biased-coin, coin-max-one, demon-coin, peak-linear-i, "
                  "peak-linear-ii, peak-circular, explicit");
    c->add_option("--p", o.p, "Coin bias (decimal or p/q)");
    c->add_option("--nu", o.nu, "Demon kill probability");
    c->add_option("--matrix", o.matrix, "CSV i,j,prob for --model explicit");
    c->add_flag("--dummy", o.dummy, "Add the never-eliminated player (absorb-at-zero chains)");
    c->add_option("--exact-cutoff", o.exact_cutoff, "Largest n kept in exact arithmetic (default 75)");
}

void add_output_flag(CLI::App* c, Options& o) { c->add_option("--out", o.out, "Output directory (default $ELECTRA_OUT)"); }

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Options o;
    CLI::App app{"Phase-count distributions and simulations for elimination-round leader election"};
    app.require_subcommand(1);

    auto* table = app.add_subcommand("table", "Survivor and phase tables");
    add_model_flags(table, o);
    table->add_option("--max-n", o.max_n, "Largest n");
    table->add_option("--threshold", o.threshold, "Stop once at most this many players remain");
    table->add_option("--init", o.init, "standard or altcost");
    table->add_option("--residual-tol", o.residual_tol, "Tail mass left out of each row");
    table->add_flag("--check-fixtures", o.check_fixtures, "Compare against the reference tables");
    add_output_flag(table, o);

    auto* figure = app.add_subcommand("figure", "Plot data for fig1..fig12");
    figure->add_option("id", o.figure, "Figure id")->required();
    figure->add_option("--exact-cutoff", o.exact_cutoff, "Largest n kept in exact arithmetic");
    figure->add_option("--L", o.L, "Fourier terms for fig8/fig12");
    figure->add_flag("--overlays", o.overlays, "Add Gumbel/Gaussian reference curves");
    add_output_flag(figure, o);

    auto* check = app.add_subcommand("check", "Regularity-condition checks");
    add_model_flags(check, o);
    check->add_option("--alpha", o.alpha, "Limit ratio (default: declared by the model)");
    check->add_option("--n-max", o.n_max, "Scan 1..n-max");
    check->add_option("--increment-tol", o.cond.increment_tol, "Allowed |d_n - alpha| (default 0.01)");
    check->add_option("--increment-n0", o.cond.increment_n0, "First n held to the increment tolerance (default 30)");
    check->add_option("--monotone-tol", o.cond.monotone_tol, "Allowed cdf ordering violation (default 1e-12)");
    check->add_option("--delta-exponent", o.cond.delta_exponent, "Window half-width is n^(1-e) (default 0.25)");
    check->add_option("--epsilon", o.cond.epsilon, "Tail mass is scaled by n^(2+eps) (default 0.5)");
    check->add_option("--concentration-bound", o.cond.concentration_bound, "Largest scaled tail mass (default 1)");
    check->add_option("--moment-p", o.cond.moment_p, "Even moment order (default 6)");
    check->add_option("--moment-bound", o.cond.moment_bound, "Largest scaled central moment (default 10)");
    add_output_flag(check, o);

    auto* simulate = app.add_subcommand("simulate", "Monte Carlo of the ring election");
    simulate->add_option("--variant", o.variant, "true-persistent, redraw-circular, redraw-linear-i, redraw-linear-ii");
    simulate->add_option("--estimate", o.estimate, "rounds, c2 or conditional");
    simulate->add_option("--n", o.n, "Players");
    simulate->add_option("--trials", o.trials, "Trials");
    simulate->add_option("--seed", o.seed, "Seed");
    simulate->add_option("--threshold", o.threshold, "Stop once at most this many players remain");
    simulate->add_option("--threads", o.threads, "Worker threads (0: all cores)");
    add_output_flag(simulate, o);

    auto* periodicity = app.add_subcommand("periodicity", "Laplace/Fourier fit of E X_n - log n");
    add_model_flags(periodicity, o);
    periodicity->add_option("--alpha", o.alpha, "Limit ratio (default: declared by the model)");
    periodicity->add_option("--n-lo", o.n_lo, "Smallest n");
    periodicity->add_option("--n-hi", o.n_hi, "Largest n");
    periodicity->add_option("--L", o.L, "Fourier terms");
    periodicity->add_option("--threshold", o.threshold, "Stop once at most this many players remain");
    periodicity->add_option("--init", o.init, "standard or altcost");
    add_output_flag(periodicity, o);

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitPass : kExitUsage;
    }

    try {
        CLI::App* sub = app.get_subcommands().front();
        o.command = sub->get_name();
        Output output(output_dir(o), o, args);
        if (sub == table) return cmd_table(o, output, out);
        if (sub == figure) return cmd_figure(o, output, out);
        if (sub == check) return cmd_check(o, output, out);
        if (sub == simulate) return cmd_simulate(o, output, out);
        return cmd_periodicity(o, output, out);
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitFail;
    }
}

}  // namespace electra::cli
