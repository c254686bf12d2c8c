#pragma once

// Exact integer/rational helpers on top of GMP's C++ bindings.

#include <cctype>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace mhp {

using Integer = mpz_class;
using Rational = mpq_class;

class ParseError : public std::runtime_error {
  public:
    ParseError(const std::string& what, std::size_t offset)
        : std::runtime_error(what), offset_(offset) {}

    std::size_t offset() const noexcept { return offset_; }

  private:
    std::size_t offset_;
};

/// "n/d" with d > 0 and gcd(n,d) = 1; integers keep an explicit "/1".
inline std::string to_fraction_string(const Rational& q) {
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

/// Shortest human form: "3", "-331/1000".
inline std::string to_display_string(const Rational& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return to_fraction_string(q);
}

inline Integer parse_integer(std::string_view text) {
    std::string s(text);
    if (s.empty()) throw ParseError("empty integer literal", 0);
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) throw ParseError("integer literal has no digits", i);
    for (std::size_t j = i; j < s.size(); ++j)
        if (!std::isdigit(static_cast<unsigned char>(s[j])))
            throw ParseError("invalid character in integer literal '" + s + "'", j);
    if (s[0] == '+') s.erase(0, 1);
    return Integer(s, 10);
}

/// Accepts "7", "-3/4", "1.25", "2.5e-3". Decimal literals convert exactly.
inline Rational parse_rational(std::string_view text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
    if (s.empty()) throw ParseError("empty rational literal", 0);

    if (auto slash = s.find('/'); slash != std::string::npos) {
        Integer num = parse_integer(std::string_view(s).substr(0, slash));
        Integer den = parse_integer(std::string_view(s).substr(slash + 1));
        if (den == 0) throw ParseError("zero denominator in '" + s + "'", slash + 1);
        Rational q(num, den);
        q.canonicalize();
        return q;
    }

    std::size_t epos = s.find_first_of("eE");
    long exponent = 0;
    std::string mantissa = s.substr(0, epos);
    if (epos != std::string::npos) {
        Integer e = parse_integer(std::string_view(s).substr(epos + 1));
        if (!e.fits_slong_p() || abs(e) > 10000)
            throw ParseError("exponent out of range in '" + s + "'", epos + 1);
        exponent = e.get_si();
    }
    std::string digits;
    long frac_digits = 0;
    bool seen_point = false;
    for (std::size_t j = 0; j < mantissa.size(); ++j) {
        char c = mantissa[j];
        if (c == '.') {
            if (seen_point) throw ParseError("second decimal point in '" + s + "'", j);
            seen_point = true;
        } else if ((c == '-' || c == '+') && j == 0) {
            if (c == '-') digits.push_back('-');
        } else if (std::isdigit(static_cast<unsigned char>(c))) {
            digits.push_back(c);
            if (seen_point) ++frac_digits;
        } else {
            throw ParseError("invalid character in number '" + s + "'", j);
        }
    }
    if (digits.empty() || digits == "-") throw ParseError("number '" + s + "' has no digits", 0);
    Rational q{Integer(digits, 10)};
    long shift = exponent - frac_digits;
    Integer ten_pow;
    mpz_ui_pow_ui(ten_pow.get_mpz_t(), 10, static_cast<unsigned long>(shift < 0 ? -shift : shift));
    if (shift >= 0)
        q *= ten_pow;
    else
        q /= ten_pow;
    q.canonicalize();
    return q;
}

/// Comma separated rationals, e.g. "1,1/2,2".
inline std::vector<Rational> parse_rational_list(std::string_view text) {
    std::vector<Rational> out;
    std::size_t start = 0;
    while (true) {
        std::size_t comma = text.find(',', start);
        out.push_back(parse_rational(text.substr(start, comma - start)));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

inline Rational pow(const Rational& base, unsigned long n) {
    Rational out;
    mpz_pow_ui(out.get_num_mpz_t(), base.get_num_mpz_t(), n);
    mpz_pow_ui(out.get_den_mpz_t(), base.get_den_mpz_t(), n);
    out.canonicalize();
    return out;
}

} // namespace mhp
