#pragma once

// Sparse trivariate polynomials with nonnegative big-integer coefficients.
//
// A term c * t^k u^a v^b is keyed by the exponent triple (k, a, b). Mixed
// Hodge data is stored in homology convention, so a = -p and b = -q are
// nonnegative. Every polynomial here is therefore monotone nondecreasing in
// each variable on the closed nonnegative orthant, which is what makes the
// corner-bound range enclosure in eval_box exact.

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>

#include <nlohmann/json.hpp>

#include "rational.hpp"

namespace mhp {

struct Exponent {
    std::uint32_t k = 0;
    std::uint32_t a = 0;
    std::uint32_t b = 0;

    friend auto operator<=>(const Exponent&, const Exponent&) = default;
};

namespace detail {
inline std::uint32_t checked_add(std::uint32_t x, std::uint32_t y) {
    if (x > std::numeric_limits<std::uint32_t>::max() - y)
        throw std::overflow_error("exponent overflow in polynomial product");
    return x + y;
}
inline std::uint32_t checked_mul(std::uint32_t x, unsigned long n) {
    unsigned long long r = static_cast<unsigned long long>(x) * n;
    if (r > std::numeric_limits<std::uint32_t>::max())
        throw std::overflow_error("exponent overflow in polynomial power");
    return static_cast<std::uint32_t>(r);
}
} // namespace detail

inline Exponent operator+(const Exponent& x, const Exponent& y) {
    return {detail::checked_add(x.k, y.k), detail::checked_add(x.a, y.a),
            detail::checked_add(x.b, y.b)};
}

struct RationalPoint {
    Rational t;
    Rational u;
    Rational v;

    friend bool operator==(const RationalPoint&, const RationalPoint&) = default;
};

/// Axis-aligned box, componentwise lo <= hi.
struct Box {
    RationalPoint lo;
    RationalPoint hi;

    Box() = default;
    Box(RationalPoint lo_, RationalPoint hi_) : lo(std::move(lo_)), hi(std::move(hi_)) {
        if (lo.t > hi.t || lo.u > hi.u || lo.v > hi.v)
            throw std::invalid_argument("box corners are not ordered componentwise");
    }

    static Box cube(const Rational& lo, const Rational& hi) {
        return Box({lo, lo, lo}, {hi, hi, hi});
    }

    bool degenerate() const { return lo == hi; }
    bool nonnegative() const { return lo.t >= 0 && lo.u >= 0 && lo.v >= 0; }
    bool positive() const { return lo.t > 0 && lo.u > 0 && lo.v > 0; }

    bool contains(const RationalPoint& p) const {
        return lo.t <= p.t && p.t <= hi.t && lo.u <= p.u && p.u <= hi.u && lo.v <= p.v &&
               p.v <= hi.v;
    }

    friend bool operator==(const Box&, const Box&) = default;
};

struct RationalInterval {
    Rational lower;
    Rational upper;

    bool contains(const Rational& x) const { return lower <= x && x <= upper; }
};

/// Polynomial in t alone, obtained by setting u = v = 1.
class UniPolynomial {
  public:
    using TermMap = std::map<std::uint32_t, Integer>;

    UniPolynomial() = default;
    explicit UniPolynomial(TermMap terms) {
        for (auto& [k, c] : terms)
            if (c != 0) terms_.emplace(k, std::move(c));
    }

    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    Integer coefficient(std::uint32_t k) const {
        auto it = terms_.find(k);
        return it == terms_.end() ? Integer(0) : it->second;
    }

    std::uint32_t degree() const {
        if (terms_.empty()) throw std::domain_error("degree of the zero polynomial");
        return terms_.rbegin()->first;
    }

    Integer coefficient_sum() const {
        Integer s = 0;
        for (const auto& [k, c] : terms_) s += c;
        return s;
    }

    Rational eval(const Rational& t) const {
        Rational acc = 0;
        for (const auto& [k, c] : terms_) acc += Rational(c) * pow(t, k);
        return acc;
    }

    std::string to_string() const {
        if (terms_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (const auto& [k, c] : terms_) {
            if (!first) os << " + ";
            first = false;
            bool unit = (c == 1);
            if (!unit || k == 0) os << c.get_str();
            if (k > 0) os << "t" << (k > 1 ? "^" + std::to_string(k) : "");
        }
        return os.str();
    }

    friend bool operator==(const UniPolynomial&, const UniPolynomial&) = default;

  private:
    TermMap terms_;
};

class MHPolynomial {
  public:
    using TermMap = std::map<Exponent, Integer>;

    MHPolynomial() = default;

    MHPolynomial(std::initializer_list<std::pair<Exponent, long>> terms) {
        for (const auto& [e, c] : terms) add_term(e, Integer(c));
    }

    static MHPolynomial one() { return monomial({0, 0, 0}); }

    static MHPolynomial monomial(Exponent e, Integer c = 1) {
        MHPolynomial p;
        p.add_term(e, std::move(c));
        return p;
    }

    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    Integer coefficient(const Exponent& e) const {
        auto it = terms_.find(e);
        return it == terms_.end() ? Integer(0) : it->second;
    }

    /// Adds c to the coefficient at e. Coefficients are graded dimensions and
    /// must stay nonnegative.
    void add_term(const Exponent& e, Integer c) {
        if (c < 0) throw std::domain_error("negative coefficient in mixed Hodge polynomial");
        if (c == 0) return;
        auto it = terms_.find(e);
        if (it == terms_.end())
            terms_.emplace(e, std::move(c));
        else
            it->second += c;
    }

    friend MHPolynomial operator+(const MHPolynomial& p, const MHPolynomial& q) {
        MHPolynomial out = p;
        for (const auto& [e, c] : q.terms_) out.add_term(e, c);
        return out;
    }

    friend MHPolynomial operator*(const MHPolynomial& p, const MHPolynomial& q) {
        MHPolynomial out;
        for (const auto& [e1, c1] : p.terms_)
            for (const auto& [e2, c2] : q.terms_) out.add_term(e1 + e2, c1 * c2);
        return out;
    }

    MHPolynomial& operator+=(const MHPolynomial& q) { return *this = *this + q; }
    MHPolynomial& operator*=(const MHPolynomial& q) { return *this = *this * q; }

    MHPolynomial scaled(const Integer& s) const {
        if (s < 0) throw std::domain_error("negative scalar for mixed Hodge polynomial");
        MHPolynomial out;
        if (s == 0) return out;
        for (const auto& [e, c] : terms_) out.terms_.emplace(e, c * s);
        return out;
    }

    /// Repeated squaring; monomials and exponents up to 3 take the direct route.
    MHPolynomial pow(unsigned long n) const {
        if (n == 0) return one();
        if (terms_.size() == 1) {
            const auto& [e, c] = *terms_.begin();
            Integer cn;
            mpz_pow_ui(cn.get_mpz_t(), c.get_mpz_t(), n);
            return monomial({detail::checked_mul(e.k, n), detail::checked_mul(e.a, n),
                             detail::checked_mul(e.b, n)},
                            cn);
        }
        if (n <= 3) {
            MHPolynomial out = *this;
            for (unsigned long i = 1; i < n; ++i) out = out * *this;
            return out;
        }
        MHPolynomial result = one();
        MHPolynomial base = *this;
        while (n > 0) {
            if (n & 1UL) result = result * base;
            n >>= 1;
            if (n > 0) base = base * base;
        }
        return result;
    }

    Rational eval(const RationalPoint& pt) const {
        Rational acc = 0;
        for (const auto& [e, c] : terms_)
            acc += Rational(c) * mhp::pow(pt.t, e.k) * mhp::pow(pt.u, e.a) * mhp::pow(pt.v, e.b);
        return acc;
    }

    /// Exact range over a box in the nonnegative orthant.
    RationalInterval eval_box(const Box& box) const {
        if (!box.nonnegative())
            throw std::domain_error("eval_box needs a box inside the nonnegative orthant");
        return {eval(box.lo), eval(box.hi)};
    }

    UniPolynomial specialize_t() const {
        UniPolynomial::TermMap out;
        for (const auto& [e, c] : terms_) out[e.k] += c;
        return UniPolynomial(std::move(out));
    }

    /// Componentwise maxima over the support.
    Exponent degrees() const {
        if (terms_.empty()) throw std::domain_error("degrees of the zero polynomial");
        Exponent d;
        for (const auto& [e, c] : terms_) {
            d.k = std::max(d.k, e.k);
            d.a = std::max(d.a, e.a);
            d.b = std::max(d.b, e.b);
        }
        return d;
    }

    Integer coefficient_sum() const {
        Integer s = 0;
        for (const auto& [e, c] : terms_) s += c;
        return s;
    }

    /// "1 + t^2uv". With cohomology=true the Hodge exponents are printed as
    /// negated powers, matching the cohomological u^p v^q convention.
    std::string to_string(bool cohomology = false) const {
        if (terms_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        // The cohomology convention negates the Hodge exponents only.
        auto var = [&](char name, std::uint32_t exp, bool hodge) {
            if (exp == 0) return;
            os << name;
            if (cohomology && hodge)
                os << "^-" << exp;
            else if (exp > 1)
                os << "^" << exp;
        };
        for (const auto& [e, c] : terms_) {
            if (!first) os << " + ";
            first = false;
            bool constant = e.k == 0 && e.a == 0 && e.b == 0;
            if (c != 1 || constant) os << c.get_str();
            var('t', e.k, false);
            var('u', e.a, true);
            var('v', e.b, true);
        }
        return os.str();
    }

    friend bool operator==(const MHPolynomial&, const MHPolynomial&) = default;

  private:
    TermMap terms_;
};

inline MHPolynomial pow(const MHPolynomial& p, unsigned long n) { return p.pow(n); }

// Serialized form: [[k, a, b, "coefficient"], ...] in lexicographic (k, a, b)
// order. Input order is not required.

inline nlohmann::json to_json(const MHPolynomial& p) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& [e, c] : p.terms()) arr.push_back({e.k, e.a, e.b, c.get_str()});
    return arr;
}

inline MHPolynomial polynomial_from_json(const nlohmann::json& j) {
    if (!j.is_array()) throw std::invalid_argument("polynomial must be a JSON array of terms");
    MHPolynomial p;
    std::map<Exponent, bool> seen;
    for (const auto& rec : j) {
        if (!rec.is_array() || rec.size() != 4)
            throw std::invalid_argument("polynomial term must be [k, a, b, coefficient]");
        Exponent e;
        std::uint32_t* slots[3] = {&e.k, &e.a, &e.b};
        for (int i = 0; i < 3; ++i) {
            if (!rec[i].is_number_unsigned())
                throw std::invalid_argument("polynomial exponents must be nonnegative integers");
            auto v = rec[i].get<std::uint64_t>();
            if (v > std::numeric_limits<std::uint32_t>::max())
                throw std::invalid_argument("polynomial exponent too large");
            *slots[i] = static_cast<std::uint32_t>(v);
        }
        Integer c;
        if (rec[3].is_string())
            c = parse_integer(rec[3].get<std::string>());
        else if (rec[3].is_number_unsigned())
            c = Integer(std::to_string(rec[3].get<std::uint64_t>()), 10);
        else
            throw std::invalid_argument("polynomial coefficient must be a decimal string");
        if (c < 0) throw std::invalid_argument("polynomial coefficient must be nonnegative");
        if (seen[e]) throw std::invalid_argument("repeated exponent triple in polynomial");
        seen[e] = true;
        p.add_term(e, c);
    }
    return p;
}

} // namespace mhp
