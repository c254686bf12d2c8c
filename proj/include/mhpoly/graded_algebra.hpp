#pragma once

// Free graded-commutative algebras over Q: polynomial on even-degree
// generators, exterior on odd-degree ones. Monomials are written in
// ascending generator order; the Koszul sign appears when two monomials
// are multiplied and odd generators have to be moved past each other.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "linalg.hpp"
#include "rational.hpp"

namespace mhp {

class BasisLimitError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Sparse monomial: (generator index, exponent) sorted by index, exponents > 0.
using Monomial = std::vector<std::pair<std::size_t, std::uint32_t>>;

/// Linear combination of monomials.
using Element = std::map<Monomial, Rational>;

inline void add_to(Element& acc, const Monomial& m, const Rational& c) {
    if (c == 0) return;
    auto it = acc.find(m);
    if (it == acc.end()) {
        acc.emplace(m, c);
    } else {
        it->second += c;
        if (it->second == 0) acc.erase(it);
    }
}

inline void add_to(Element& acc, const Element& e, const Rational& scale = 1) {
    for (const auto& [m, c] : e) add_to(acc, m, c * scale);
}

inline std::size_t word_length(const Monomial& m) {
    std::size_t n = 0;
    for (const auto& [g, e] : m) n += e;
    return n;
}

class FreeGCA {
  public:
    FreeGCA() = default;
    explicit FreeGCA(std::vector<int> degrees) : degrees_(std::move(degrees)) {}

    std::size_t size() const { return degrees_.size(); }
    int degree_of(std::size_t g) const { return degrees_.at(g); }
    const std::vector<int>& degrees() const { return degrees_; }

    std::size_t add_generator(int degree) {
        degrees_.push_back(degree);
        return degrees_.size() - 1;
    }

    bool odd(std::size_t g) const { return degrees_.at(g) % 2 != 0; }

    int degree(const Monomial& m) const {
        int d = 0;
        for (const auto& [g, e] : m) d += degree_of(g) * static_cast<int>(e);
        return d;
    }

    /// Element is homogeneous of the returned degree; nullopt for zero.
    std::optional<int> homogeneous_degree(const Element& x) const {
        std::optional<int> d;
        for (const auto& [m, c] : x) {
            int dm = degree(m);
            if (d && *d != dm) throw std::invalid_argument("element is not homogeneous");
            d = dm;
        }
        return d;
    }

    static Monomial generator(std::size_t g) { return {{g, 1}}; }

    /// m1 * m2 = sign * result, or nullopt when an odd generator repeats.
    std::optional<std::pair<int, Monomial>> multiply(const Monomial& m1, const Monomial& m2) const {
        int parity = 0;
        for (const auto& [i, ei] : m2) {
            if (!odd(i)) continue;
            for (const auto& [j, ej] : m1)
                if (odd(j) && j > i) parity ^= 1;
        }
        Monomial out;
        auto a = m1.begin();
        auto b = m2.begin();
        while (a != m1.end() || b != m2.end()) {
            if (b == m2.end() || (a != m1.end() && a->first < b->first)) {
                out.push_back(*a++);
            } else if (a == m1.end() || b->first < a->first) {
                out.push_back(*b++);
            } else {
                if (odd(a->first)) return std::nullopt;
                out.emplace_back(a->first, a->second + b->second);
                ++a;
                ++b;
            }
        }
        return std::make_pair(parity ? -1 : 1, std::move(out));
    }

    Element multiply(const Element& x, const Element& y) const {
        Element out;
        for (const auto& [m1, c1] : x)
            for (const auto& [m2, c2] : y)
                if (auto r = multiply(m1, m2)) add_to(out, r->second, c1 * c2 * r->first);
        return out;
    }

    /// All monomials of the given degree, sorted lexicographically.
    std::vector<Monomial> basis(int degree, std::size_t limit) const {
        std::vector<Monomial> out;
        if (degree < 0) return out;
        Monomial cur;
        enumerate(0, degree, cur, out, limit);
        std::sort(out.begin(), out.end());
        return out;
    }

    std::string monomial_string(const Monomial& m, const std::vector<std::string>& names) const {
        if (m.empty()) return "1";
        std::string s;
        for (const auto& [g, e] : m) {
            if (!s.empty()) s += "*";
            s += names.at(g);
            if (e > 1) s += "^" + std::to_string(e);
        }
        return s;
    }

    std::string element_string(const Element& x, const std::vector<std::string>& names) const {
        if (x.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (const auto& [m, c] : x) {
            Rational mag = abs(c);
            if (first)
                os << (c < 0 ? "-" : "");
            else
                os << (c < 0 ? " - " : " + ");
            first = false;
            if (mag != 1 || m.empty()) {
                os << to_display_string(mag);
                if (!m.empty()) os << "*";
            }
            if (!m.empty()) os << monomial_string(m, names);
        }
        return os.str();
    }

  private:
    void enumerate(std::size_t g, int remaining, Monomial& cur, std::vector<Monomial>& out,
                   std::size_t limit) const {
        if (remaining == 0) {
            out.push_back(cur);
            if (out.size() > limit)
                throw BasisLimitError("graded basis exceeds the limit of " + std::to_string(limit) +
                                      " monomials");
            return;
        }
        if (g == degrees_.size()) return;
        int dg = degrees_[g];
        std::uint32_t max_e = dg <= 0 ? 0 : static_cast<std::uint32_t>(remaining / dg);
        if (odd(g)) max_e = std::min<std::uint32_t>(max_e, 1);
        for (std::uint32_t e = 0; e <= max_e; ++e) {
            if (e > 0) cur.emplace_back(g, e);
            enumerate(g + 1, remaining - static_cast<int>(e) * dg, cur, out, limit);
            if (e > 0) cur.pop_back();
        }
    }

    std::vector<int> degrees_;
};

/// Coordinates of elements against an ordered monomial basis.
class GradedPiece {
  public:
    GradedPiece() = default;
    explicit GradedPiece(std::vector<Monomial> basis) : basis_(std::move(basis)) {
        for (std::size_t i = 0; i < basis_.size(); ++i) index_.emplace(basis_[i], i);
    }

    std::size_t dim() const { return basis_.size(); }
    const std::vector<Monomial>& basis() const { return basis_; }

    linalg::Vector coords(const Element& x) const {
        linalg::Vector v(basis_.size());
        for (const auto& [m, c] : x) {
            auto it = index_.find(m);
            if (it == index_.end())
                throw std::logic_error("monomial outside the graded piece");
            v[it->second] = c;
        }
        return v;
    }

    Element element(const linalg::Vector& v) const {
        Element x;
        for (std::size_t i = 0; i < v.size(); ++i)
            if (v[i] != 0) x.emplace(basis_[i], v[i]);
        return x;
    }

  private:
    std::vector<Monomial> basis_;
    std::map<Monomial, std::size_t> index_;
};

} // namespace mhp
