#pragma once

// Standalone checker for serialized threshold certificates.
//
// Works from the JSON alone: polynomials are re-read from their term lists
// and evaluated here, corner values are recomputed, every inequality is
// re-derived from n0, and stored check results are only compared against
// the recomputation, never trusted. Deliberately shares no code with the
// threshold search beyond GMP.

#include <algorithm>
#include <cstdint>
#include <exception>
#include <string>
#include <vector>

#include <gmpxx.h>
#include <nlohmann/json.hpp>

namespace mhp::recheck {

struct Result {
    bool ok = true;
    std::vector<std::string> failures;

    void fail(std::string why) {
        ok = false;
        failures.push_back(std::move(why));
    }
};

namespace detail {

struct Term {
    unsigned long k, a, b;
    mpz_class c;
};

using Poly = std::vector<Term>;

struct Reject {
    std::string why;
};

inline mpq_class rat(const nlohmann::json& j) {
    if (!j.is_string()) throw Reject{"rational field is not a string"};
    std::string s = j.get<std::string>();
    auto slash = s.find('/');
    if (slash == std::string::npos) throw Reject{"rational '" + s + "' lacks a denominator"};
    mpq_class q;
    try {
        q = mpq_class(mpz_class(s.substr(0, slash), 10), mpz_class(s.substr(slash + 1), 10));
    } catch (const std::exception&) {
        throw Reject{"unparsable rational '" + s + "'"};
    }
    if (q.get_den() == 0) throw Reject{"zero denominator"};
    q.canonicalize();
    return q;
}

inline unsigned long count(const nlohmann::json& j, const char* what) {
    if (!j.is_number_unsigned()) throw Reject{std::string(what) + " must be a nonnegative integer"};
    return j.get<unsigned long>();
}

inline Poly poly(const nlohmann::json& j) {
    if (!j.is_array()) throw Reject{"polynomial is not an array"};
    Poly p;
    for (const auto& rec : j) {
        if (!rec.is_array() || rec.size() != 4 || !rec[3].is_string())
            throw Reject{"malformed polynomial term"};
        Term t{count(rec[0], "k"), count(rec[1], "a"), count(rec[2], "b"),
               mpz_class(rec[3].get<std::string>(), 10)};
        if (t.c < 0) throw Reject{"negative coefficient"};
        p.push_back(std::move(t));
    }
    return p;
}

inline mpq_class power(const mpq_class& x, unsigned long n) {
    mpq_class r;
    mpz_pow_ui(r.get_num_mpz_t(), x.get_num_mpz_t(), n);
    mpz_pow_ui(r.get_den_mpz_t(), x.get_den_mpz_t(), n);
    r.canonicalize();
    return r;
}

inline mpq_class eval(const Poly& p, const mpq_class& t, const mpq_class& u, const mpq_class& v) {
    mpq_class s = 0;
    for (const auto& term : p)
        s += mpq_class(term.c) * power(t, term.k) * power(u, term.a) * power(v, term.b);
    return s;
}

struct Pt {
    mpq_class t, u, v;
};

inline Pt point(const nlohmann::json& j) {
    if (!j.is_array() || j.size() != 3) throw Reject{"point must have three coordinates"};
    return {rat(j[0]), rat(j[1]), rat(j[2])};
}

/// n*B < A^n for n0 <= n <= m, and B <= A^m (A - 1).
inline bool chain(const mpq_class& A, const mpq_class& B, unsigned long n0, unsigned long m,
                  std::string& why) {
    if (B < 0) {
        why = "negative B";
        return false;
    }
    if (m < n0) {
        why = "induction start precedes n0";
        return false;
    }
    if (m - n0 > 100000) {
        why = "base-check chain too long";
        return false;
    }
    mpq_class an = power(A, n0);
    for (unsigned long n = n0; n <= m; ++n) {
        if (!(mpq_class(static_cast<long>(n)) * B < an)) {
            why = "base inequality fails at n = " + std::to_string(n);
            return false;
        }
        if (n < m) an *= A;
    }
    if (!(B <= an * (A - 1))) {
        why = "induction inequality B <= A^m (A - 1) fails at m = " + std::to_string(m);
        return false;
    }
    return true;
}

inline void expect_equal(Result& r, const nlohmann::json& stored, const mpq_class& actual,
                         const std::string& what) {
    if (rat(stored) != actual) r.fail(what + " does not match the recomputed value");
}

// Mirrors the search's bisection: halve each non-degenerate axis, t slowest.
inline std::vector<std::pair<Pt, Pt>> halves(const Pt& lo, const Pt& hi) {
    auto split = [](const mpq_class& a, const mpq_class& b) {
        std::vector<std::pair<mpq_class, mpq_class>> out;
        if (a == b) {
            out.emplace_back(a, b);
        } else {
            mpq_class m = (a + b) / 2;
            out.emplace_back(a, m);
            out.emplace_back(m, b);
        }
        return out;
    };
    std::vector<std::pair<Pt, Pt>> out;
    for (const auto& [t0, t1] : split(lo.t, hi.t))
        for (const auto& [u0, u1] : split(lo.u, hi.u))
            for (const auto& [v0, v1] : split(lo.v, hi.v)) out.push_back({{t0, u0, v0}, {t1, u1, v1}});
    return out;
}

inline bool same(const Pt& x, const Pt& y) { return x.t == y.t && x.u == y.u && x.v == y.v; }

inline void check_tree(Result& r, const nlohmann::json& node, const Pt& lo, const Pt& hi,
                       const Poly& mh, const Poly& mh_pi, unsigned long n0, std::size_t& leaves) {
    if (!same(point(node.at("lo")), lo) || !same(point(node.at("hi")), hi)) {
        r.fail("subdivision node box does not match its parent's bisection");
        return;
    }
    if (node.contains("children")) {
        auto kids = halves(lo, hi);
        const auto& arr = node["children"];
        if (!arr.is_array() || arr.size() != kids.size()) {
            r.fail("subdivision node does not have one child per bisection half");
            return;
        }
        for (std::size_t i = 0; i < kids.size(); ++i)
            check_tree(r, arr[i], kids[i].first, kids[i].second, mh, mh_pi, n0, leaves);
        return;
    }
    ++leaves;
    mpq_class A = eval(mh, lo.t, lo.u, lo.v);
    mpq_class B = eval(mh_pi, hi.t, hi.u, hi.v);
    if (node.contains("A_lo")) expect_equal(r, node["A_lo"], A, "leaf A_lo");
    if (node.contains("B_hi")) expect_equal(r, node["B_hi"], B, "leaf B_hi");
    if (!node.contains("induction_from")) {
        r.fail("leaf without an induction_from value");
        return;
    }
    std::string why;
    if (!chain(A, B, n0, count(node["induction_from"], "induction_from"), why))
        r.fail("leaf [" + lo.t.get_str() + ".." + hi.t.get_str() + "]: " + why);
}

inline unsigned long degree_in_t(const Poly& p) {
    unsigned long d = 0;
    for (const auto& t : p)
        if (t.c != 0) d = std::max(d, t.k);
    return d;
}

inline void run(Result& r, const nlohmann::json& c) {
    std::string variant = c.at("variant").get<std::string>();
    Poly mh = poly(c.at("mh"));
    Poly mh_pi = poly(c.at("mh_pi"));
    unsigned long n0 = count(c.at("n0"), "n0");
    if (n0 < 1) throw Reject{"n0 must be positive"};
    bool hodge = c.value("hodge_graded", true);
    const auto& region = c.at("region");
    unsigned long m = count(c.at("induction_check").at("from"), "induction_check.from");
    std::string why;

    mpq_class A, B;
    bool pair_checked = false;
    Pt witness_region_lo{};
    bool witness_uv1 = false;

    if (variant == "point") {
        Pt at = point(region.at("at"));
        if (at.t <= 0 || at.u <= 0 || at.v <= 0) throw Reject{"point must be positive"};
        if (!hodge && (at.u != 1 || at.v != 1)) throw Reject{"Hodge evaluation on ungraded data"};
        A = eval(mh, at.t, at.u, at.v);
        B = eval(mh_pi, at.t, at.u, at.v);
        pair_checked = true;
    } else if (variant == "cube") {
        mpq_class eps = rat(region.at("eps")), rr = rat(region.at("r"));
        if (eps <= 0 || rr < eps) throw Reject{"cube needs 0 < eps <= r"};
        if (!hodge && !(eps == 1 && rr == 1)) throw Reject{"Hodge evaluation on ungraded data"};
        Pt lo{eps, eps, eps}, hi{rr, rr, rr};
        if (c.contains("subdivision")) {
            std::size_t leaves = 0;
            check_tree(r, c["subdivision"], lo, hi, mh, mh_pi, n0, leaves);
            A = rat(c.at("A_lo"));
            B = rat(c.at("B_hi"));
        } else {
            A = eval(mh, eps, eps, eps);
            B = eval(mh_pi, rr, rr, rr);
            pair_checked = true;
        }
        if (c.value("minimal", false) && eps != rr) r.fail("minimality claimed for a proper cube");
    } else if (variant == "halfline") {
        mpq_class eps = rat(region.at("eps"));
        if (eps <= 0) throw Reject{"halfline needs eps > 0"};
        witness_uv1 = true;
        witness_region_lo = {eps, 1, 1};
        Poly p, ppi;
        // Poincare polynomials: collapse (a, b).
        for (auto t : mh) p.push_back({t.k, 0, 0, t.c});
        for (auto t : mh_pi) ppi.push_back({t.k, 0, 0, t.c});
        mpz_class spi = 0;
        for (const auto& t : ppi) spi += t.c;
        if (spi == 0) {
            if (c.contains("subdivision")) r.fail("trivial half-line certificate with a subdivision");
            A = eval(p, eps, 1, 1);
            B = 0;
            if (A < 1) r.fail("MH below 1 on the half-line");
        } else {
            if (!c.contains("tail")) throw Reject{"half-line certificate without tail bound"};
            const auto& tail = c["tail"];
            mpq_class ts = rat(tail.at("t_star"));
            if (ts < 1) r.fail("tail split point t* must be >= 1");
            unsigned long dp = degree_in_t(p), dpi = degree_in_t(ppi);
            if (count(tail.at("deg_P"), "deg_P") != dp || count(tail.at("deg_P_pi"), "deg_P_pi") != dpi ||
                mpz_class(tail.at("coeff_sum_P_pi").get<std::string>(), 10) != spi)
                r.fail("tail degree data does not match the polynomials");
            if (!(static_cast<unsigned long long>(n0) * dp > dpi))
                r.fail("tail bound needs n0 * deg P > deg P^pi");
            A = power(ts, dp);
            B = mpq_class(spi) * power(ts, dpi);
            pair_checked = true;
            if (ts > eps) {
                if (!c.contains("subdivision")) throw Reject{"[eps, t*] not covered by a subdivision"};
                std::size_t leaves = 0;
                check_tree(r, c["subdivision"], {eps, 1, 1}, {ts, 1, 1}, p, ppi, n0, leaves);
            }
        }
    } else {
        throw Reject{"unknown variant '" + variant + "'"};
    }

    if (pair_checked) {
        expect_equal(r, c.at("A_lo"), A, "A_lo");
        expect_equal(r, c.at("B_hi"), B, "B_hi");
    }
    if (!chain(A, B, n0, m, why)) r.fail("top-level evidence: " + why);

    if (c.value("minimal", false) && n0 > 1) {
        if (!c.contains("minimality_witness")) {
            r.fail("minimality claimed without a witness");
            return;
        }
        const auto& w = c["minimality_witness"];
        unsigned long wn = count(w.at("n"), "witness n");
        if (wn != n0 - 1) {
            r.fail("minimality witness is not at n0 - 1");
            return;
        }
        Pt at = point(w.at("at"));
        mpq_class wa, wb;
        if (witness_uv1) {
            if (at.t < witness_region_lo.t || at.u != 1 || at.v != 1)
                r.fail("minimality witness outside the half-line");
            Poly p, ppi;
            for (auto t : mh) p.push_back({t.k, 0, 0, t.c});
            for (auto t : mh_pi) ppi.push_back({t.k, 0, 0, t.c});
            wa = eval(p, at.t, 1, 1);
            wb = eval(ppi, at.t, 1, 1);
        } else {
            wa = A;
            wb = B;
        }
        if (mpq_class(static_cast<long>(wn)) * wb < power(wa, wn))
            r.fail("minimality witness does not fail at n0 - 1");
    }
}

} // namespace detail

inline Result check(const nlohmann::json& certificate) {
    Result r;
    try {
        detail::run(r, certificate);
    } catch (const detail::Reject& e) {
        r.fail(e.why);
    } catch (const std::exception& e) {
        r.fail(std::string("malformed certificate: ") + e.what());
    }
    return r;
}

} // namespace mhp::recheck
