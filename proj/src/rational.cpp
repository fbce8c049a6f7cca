#include "electra/rational.hpp"

#include <cctype>

namespace electra {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

Rational parse_decimal(std::string_view s, std::string_view original) {
    auto fail = [&] { return DomainError("not a number: '" + std::string(original) + "'"); };
    bool negative = false;
    if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }
    BigInt mantissa = 0;
    long scale = 0;
    bool seen_digit = false;
    bool seen_point = false;
    std::size_t i = 0;
    for (; i < s.size(); ++i) {
        char c = s[i];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            mantissa = mantissa * 10 + (c - '0');
            if (seen_point) --scale;
            seen_digit = true;
        } else if (c == '.' && !seen_point) {
            seen_point = true;
        } else {
            break;
        }
    }
    if (!seen_digit) throw fail();
    if (i < s.size()) {
        if (s[i] != 'e' && s[i] != 'E') throw fail();
        std::string_view exp = s.substr(i + 1);
        if (exp.empty()) throw fail();
        std::size_t used = 0;
        long e = 0;
        try {
            e = std::stol(std::string(exp), &used);
        } catch (const std::exception&) {
            throw fail();
        }
        if (used != exp.size() || e > 4000 || e < -4000) throw fail();
        scale += e;
    }
    Rational q(mantissa);
    BigInt ten_pow;
    mpz_ui_pow_ui(ten_pow.get_mpz_t(), 10, static_cast<unsigned long>(scale < 0 ? -scale : scale));
    if (scale < 0) {
        q /= Rational(ten_pow);
    } else {
        q *= Rational(ten_pow);
    }
    q.canonicalize();
    return negative ? Rational(-q) : q;
}

}  // namespace

Rational parse_rational(std::string_view text) {
    std::string_view s = trim(text);
    if (s.empty()) throw DomainError("empty number");
    auto slash = s.find('/');
    if (slash == std::string_view::npos) return parse_decimal(s, text);
    Rational num = parse_decimal(trim(s.substr(0, slash)), text);
    Rational den = parse_decimal(trim(s.substr(slash + 1)), text);
    if (den == 0) throw DomainError("zero denominator: '" + std::string(text) + "'");
    Rational q = num / den;
    q.canonicalize();
    return q;
}

std::string to_string(const Rational& q) {
    Rational c = q;
    c.canonicalize();
    return c.get_str();
}

Rational RationalDist::at(int k) const {
    if (k < lo() || k > hi()) return Rational(0);
    return probs[static_cast<std::size_t>(k - offset)];
}

Rational RationalDist::total() const {
    Rational s = 0;
    for (const auto& p : probs) s += p;
    return s;
}

}  // namespace electra
