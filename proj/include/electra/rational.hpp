#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace electra {

using BigInt = mpz_class;
using Rational = mpq_class;

/// Out-of-range argument for a mathematically restricted operation.
class DomainError : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

/// Request would exceed a configured size cap (exact tables grow like n!).
class ResourceError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Parses "p/q", an integer, or a plain decimal ("0.25", "-1.5e-3") into an
/// exact rational. Decimals are read digit by digit, so "0.1" is exactly 1/10.
Rational parse_rational(std::string_view text);

std::string to_string(const Rational& q);

inline double to_double(const Rational& q) { return q.get_d(); }

/// Probability vector over consecutive integers starting at `offset`.
struct RationalDist {
    int offset = 0;
    std::vector<Rational> probs;

    int lo() const { return offset; }
    int hi() const { return offset + static_cast<int>(probs.size()) - 1; }
    Rational at(int k) const;
    Rational total() const;
};

}  // namespace electra
