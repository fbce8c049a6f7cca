#include "electra/fixtures.hpp"

#include "electra/phase_engine.hpp"

#include <algorithm>

namespace electra {

namespace {

FixtureTable make(int id, std::string title, int first_row, std::vector<std::vector<const char*>> cells) {
    FixtureTable t{id, std::move(title), first_row, {}};
    for (const auto& row : cells) {
        std::vector<Rational> r;
        for (const char* c : row) r.push_back(parse_rational(c));
        t.rows.push_back(std::move(r));
    }
    return t;
}

}  // namespace

const std::vector<FixtureTable>& fixture_tables() {
    static const std::vector<FixtureTable> tables = {
        make(1, "P_L(n,k)", 1,
             {{"1", "0", "0", "0", "0"},
              {"1", "0", "0", "0", "0"},
              {"2/3", "1/3", "0", "0", "0"},
              {"1/3", "2/3", "0", "0", "0"},
              {"2/15", "11/15", "2/15", "0", "0"},
              {"2/45", "26/45", "17/45", "0", "0"},
              {"4/315", "38/105", "4/7", "17/315", "0"}}),
        make(2, "Pi_L(n,j)", 0,
             {{"1", "0", "0", "0"},
              {"1", "0", "0", "0"},
              {"0", "1", "0", "0"},
              {"0", "1", "0", "0"},
              {"0", "1", "0", "0"},
              {"0", "13/15", "2/15", "0"},
              {"0", "28/45", "17/45", "0"},
              {"0", "118/315", "197/315", "0"}}),
        make(4, "Pi(n,j) AltCost", 0,
             {{"0", "1", "0", "0"},
              {"1", "0", "0", "0"},
              {"0", "0", "1", "0"},
              {"0", "1/3", "2/3", "0"},
              {"0", "2/3", "1/3", "0"},
              {"0", "11/15", "2/15", "2/15"}}),
        make(5, "P_C(n,k)", 1,
             {{"0", "1", "0", "0", "0"},
              {"0", "1", "0", "0", "0"},
              {"0", "1", "0", "0", "0"},
              {"0", "2/3", "1/3", "0", "0"},
              {"0", "1/3", "2/3", "0", "0"},
              {"0", "2/15", "11/15", "2/15", "0"},
              {"0", "2/45", "26/45", "17/45", "0"}}),
        make(6, "Pi_C(n,j)", 0,
             {{"1", "0", "0", "0"},
              {"1", "0", "0", "0"},
              {"0", "1", "0", "0"},
              {"0", "1", "0", "0"},
              {"0", "2/3", "1/3", "0"},
              {"0", "1/3", "2/3", "0"},
              {"0", "2/15", "13/15", "0"},
              {"0", "2/45", "43/45", "0"}}),
    };
    return tables;
}

const FixtureTable& fixture_table(int id) {
    for (const auto& t : fixture_tables()) {
        if (t.id == id) return t;
    }
    throw DomainError("no fixture table " + std::to_string(id));
}

std::vector<std::string> check_fixture(int id, int max_n) {
    const FixtureTable& fx = fixture_table(id);
    const int last = std::min(max_n, fx.last_row());
    std::vector<std::string> out;
    auto compare = [&](int n, int col, const Rational& actual) {
        const Rational& expected = fx.rows[static_cast<std::size_t>(n - fx.first_row)][static_cast<std::size_t>(col)];
        if (expected != actual) {
            out.push_back("table " + std::to_string(id) + " n=" + std::to_string(n) + " col=" + std::to_string(col) +
                          ": expected " + to_string(expected) + ", got " + to_string(actual));
        }
    };
    if (id == 1 || id == 5) {
        const auto variant = id == 1 ? PeakVariant::LinearI : PeakVariant::Circular;
        const PeakTable pt = PeakTable::build(variant, std::max(1, last));
        for (int n = fx.first_row; n <= last; ++n) {
            for (int k = 0; k < static_cast<int>(fx.rows[0].size()); ++k) compare(n, k, pt.prob(n, k));
        }
        return out;
    }
    const auto variant = id == 6 ? PeakVariant::Circular : PeakVariant::LinearI;
    EngineOptions opts;
    opts.init = id == 4 ? InitConvention::AltCost : InitConvention::Standard;
    const PhaseTable table = compute_phase_table(SurvivorModel::peaks(variant), std::max(1, last), opts);
    for (int n = fx.first_row; n <= last; ++n) {
        for (int j = 0; j < static_cast<int>(fx.rows[0].size()); ++j) compare(n, j, table.exact_prob(n, j));
    }
    return out;
}

}  // namespace electra
