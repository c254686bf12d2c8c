#pragma once

// Test-only oracles. None of these route through the library's arithmetic:
// polynomials are plain exponent->coefficient maps expanded by nested loops,
// and threshold scans evaluate n*B against A^n directly.

#include <map>
#include <random>
#include <string>
#include <tuple>
#include <vector>

#include <gmpxx.h>

#include <mhpoly/mhpoly.hpp>

namespace oracle {

using Key = std::tuple<unsigned, unsigned, unsigned>;
using Dense = std::map<Key, mpz_class>;

inline Dense from(const mhp::MHPolynomial& p) {
    Dense d;
    for (const auto& [e, c] : p.terms()) d[{e.k, e.a, e.b}] = c;
    return d;
}

inline Dense strip(Dense d) {
    for (auto it = d.begin(); it != d.end();)
        it = it->second == 0 ? d.erase(it) : std::next(it);
    return d;
}

inline Dense add(const Dense& x, const Dense& y) {
    Dense out = x;
    for (const auto& [k, c] : y) out[k] += c;
    return strip(out);
}

inline Dense mul(const Dense& x, const Dense& y) {
    Dense out;
    for (const auto& [k1, c1] : x)
        for (const auto& [k2, c2] : y) {
            Key k{std::get<0>(k1) + std::get<0>(k2), std::get<1>(k1) + std::get<1>(k2),
                  std::get<2>(k1) + std::get<2>(k2)};
            out[k] += c1 * c2;
        }
    return strip(out);
}

inline Dense power(const Dense& x, unsigned n) {
    Dense out{{{0, 0, 0}, 1}};
    for (unsigned i = 0; i < n; ++i) out = mul(out, x);
    return out;
}

inline Dense scale(const Dense& x, long s) {
    Dense out;
    for (const auto& [k, c] : x) out[k] = c * s;
    return strip(out);
}

inline mpq_class qpow(const mpq_class& b, unsigned long n) {
    mpq_class r = 1;
    for (unsigned long i = 0; i < n; ++i) r *= b;
    return r;
}

inline mpq_class eval(const Dense& p, const mpq_class& t, const mpq_class& u, const mpq_class& v) {
    mpq_class s = 0;
    for (const auto& [k, c] : p)
        s += mpq_class(c) * qpow(t, std::get<0>(k)) * qpow(u, std::get<1>(k)) * qpow(v, std::get<2>(k));
    return s;
}

/// Largest n in [1, limit] with n*B >= A^n, or 0 if none.
inline unsigned long last_failure(const mpq_class& A, const mpq_class& B, unsigned long limit) {
    unsigned long last = 0;
    mpq_class an = 1;
    for (unsigned long n = 1; n <= limit; ++n) {
        an *= A;
        if (mpq_class(static_cast<long>(n)) * B >= an) last = n;
    }
    return last;
}

} // namespace oracle

namespace gen {

/// Random polynomial with small nonnegative data.
inline mhp::MHPolynomial poly(std::mt19937& rng, int max_terms = 5, unsigned max_exp = 4) {
    std::uniform_int_distribution<int> nterms(0, max_terms);
    std::uniform_int_distribution<unsigned> ex(0, max_exp);
    std::uniform_int_distribution<long> coef(0, 9);
    mhp::MHPolynomial p;
    for (int i = nterms(rng); i > 0; --i) p.add_term({ex(rng), ex(rng), ex(rng)}, mhp::Integer(coef(rng)));
    return p;
}

inline mhp::Rational rational(std::mt19937& rng, long lo_num = -6, long hi_num = 6, long max_den = 5) {
    std::uniform_int_distribution<long> num(lo_num, hi_num);
    std::uniform_int_distribution<long> den(1, max_den);
    mhp::Rational q(num(rng), den(rng));
    q.canonicalize();
    return q;
}

inline mhp::RationalPoint point(std::mt19937& rng) { return {rational(rng), rational(rng), rational(rng)}; }

struct Factor {
    std::string atom;
    unsigned exponent;
};

/// Expression over {pt, P1, P2, P3, S2, S3, S4} with 1..4 factors and powers 1..5.
struct SpaceSample {
    std::vector<Factor> factors;
    std::string text;
};

inline SpaceSample space(std::mt19937& rng) {
    static const std::vector<std::string> atoms{"pt", "P1", "P2", "P3", "S2", "S3", "S4"};
    std::uniform_int_distribution<int> nf(1, 4);
    std::uniform_int_distribution<std::size_t> pick(0, atoms.size() - 1);
    std::uniform_int_distribution<unsigned> ex(1, 5);
    std::bernoulli_distribution use_power(0.5);
    SpaceSample s;
    for (int i = nf(rng); i > 0; --i) {
        Factor f{atoms[pick(rng)], use_power(rng) ? ex(rng) : 1};
        if (!s.text.empty()) s.text += " x ";
        s.text += f.atom;
        if (f.exponent > 1 || use_power(rng)) s.text += "^" + std::to_string(f.exponent);
        s.factors.push_back(f);
    }
    return s;
}

} // namespace gen
