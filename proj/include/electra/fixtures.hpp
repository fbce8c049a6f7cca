#pragma once

// Reference small-n tables of the peak chains, as exact rationals.
//   1: P_L(n, k), linear (i) peaks, n = 1..7, k = 0..4
//   2: Pi_L(n, j), n = 0..7, j = 0..3
//   4: Pi(n, j) with the AltCost start, n = 0..5, j = 0..3
//   5: P_C(n, k), circular peaks, n = 1..7, k = 0..4
//   6: Pi_C(n, j), n = 0..7, j = 0..3

#include "electra/rational.hpp"

#include <string>
#include <vector>

namespace electra {

struct FixtureTable {
    int id = 0;
    std::string title;
    int first_row = 0;
    std::vector<std::vector<Rational>> rows;  // rows[n - first_row][col]

    int last_row() const { return first_row + static_cast<int>(rows.size()) - 1; }
};

const std::vector<FixtureTable>& fixture_tables();
const FixtureTable& fixture_table(int id);

/// Recomputes table `id` for rows up to `max_n` and returns one message per
/// differing cell (empty on a full match).
std::vector<std::string> check_fixture(int id, int max_n);

}  // namespace electra
