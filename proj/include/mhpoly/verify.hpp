#pragma once

// Inequality checks between MH and MH^pi, and constructive thresholds n0
// such that n * MH^pi_X < (MH_X)^n for every n >= n0 on a region.
//
// Everything reduces to a pair (A, B) with A >= 1, B >= 0 and the sequence
// f(n) = A^n - n B. Its increments D(n) = A^n (A - 1) - B are nondecreasing,
// so once f(m) > 0 and D(m) >= 0 every later f stays positive, and the set of
// failing n is an integer interval. On a box, monotonicity of polynomials
// with nonnegative data gives A = MH(lo) and B = MH^pi(hi) as valid bounds.

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "catalog.hpp"
#include "poly.hpp"
#include "rational.hpp"

namespace mhp {

class VerifyError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Atom data violates a constraint every elliptic space satisfies.
class DataError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

enum class Relation { Less, Equal, Greater };

inline const char* to_string(Relation r) {
    switch (r) {
    case Relation::Less:
        return "<";
    case Relation::Equal:
        return "=";
    case Relation::Greater:
        return ">";
    }
    return "?";
}

struct Comparison {
    Rational left;
    Rational right;
    Relation relation = Relation::Equal;
    std::string label;

    static Comparison of(Rational l, Rational r, std::string label) {
        Relation rel = l < r ? Relation::Less : (l == r ? Relation::Equal : Relation::Greater);
        return {std::move(l), std::move(r), rel, std::move(label)};
    }

    bool strict() const { return relation == Relation::Less; }
};

namespace detail {

inline bool is_unit_uv(const RationalPoint& p) { return p.u == 1 && p.v == 1; }

inline void require_hodge(const Space& x, bool needs_grading, const std::string& what) {
    if (needs_grading && !x.hodge_graded())
        throw VerifyError(what + " evaluates Hodge variables u, v != 1, but '" + x.to_string() +
                          "' contains atoms with only t-specialized data");
}

} // namespace detail

/// Total homotopy rank against total Betti number.
inline Comparison hilali(const Space& x) {
    RationalPoint ones{1, 1, 1};
    return Comparison::of(x.mh_pi().eval(ones), x.mh().eval(ones), "P^pi(1) vs P(1)");
}

/// chi^pi against chi. A non-strict result means some atom carries data
/// inconsistent with chi^pi < chi; the offending atoms are named.
inline Comparison euler_compare(const Space& x) {
    Comparison c = Comparison::of(Rational(euler_pi(x)), Rational(euler(x)), "chi^pi vs chi");
    if (!c.strict()) {
        std::string bad;
        for (const auto& a : x.atoms()) {
            Space s(a);
            if (euler_pi(s) >= euler(s)) bad += (bad.empty() ? "" : ", ") + a.name;
        }
        throw DataError("chi^pi(X) = " + to_display_string(c.left) + " is not < chi(X) = " +
                        to_display_string(c.right) + " for '" + x.to_string() +
                        "'; suspect catalog data in: " + (bad.empty() ? x.to_string() : bad));
    }
    return c;
}

inline Rational margin(const Space& x, const RationalPoint& pt) {
    detail::require_hodge(x, !detail::is_unit_uv(pt), "margin");
    return x.mh().eval(pt) - x.mh_pi().eval(pt);
}

// Threshold machinery on a single (A, B) pair.

struct ScanOptions {
    unsigned long max_n = 100000;
};

struct PairScan {
    unsigned long n0 = 1;
    // m >= n0 with f(j) > 0 for n0 <= j <= m and D(m) >= 0.
    unsigned long induction_from = 1;
    std::optional<unsigned long> last_failure;
};

/// Minimal n0 for the pair, by forward scan until f > 0 and D >= 0.
inline PairScan scan_pair(const Rational& A, const Rational& B, ScanOptions opts = {}) {
    if (B < 0 || A < 0) throw DataError("negative evaluation of a mixed Hodge polynomial");
    if (A <= 1 && B > 0)
        throw DataError("MH evaluates to " + to_display_string(A) + " <= 1 while MH^pi = " +
                        to_display_string(B) + " > 0; the catalog data is corrupt");
    PairScan s;
    Rational power = 1;
    for (unsigned long n = 1; n <= opts.max_n; ++n) {
        power *= A;
        if (Rational(static_cast<long>(n)) * B >= power) {
            s.last_failure = n;
        } else if (power * (A - 1) >= B) {
            s.n0 = s.last_failure ? *s.last_failure + 1 : 1;
            s.induction_from = n;
            return s;
        }
    }
    throw VerifyError("threshold search exceeded n = " + std::to_string(opts.max_n));
}

/// Smallest m >= n0 (within limit steps) certifying every n >= n0 for the
/// pair, or nullopt if some n in range fails or D stays negative.
inline std::optional<unsigned long> certify_from(const Rational& A, const Rational& B,
                                                 unsigned long n0, unsigned long limit = 4096) {
    if (A < 1 || B < 0) return std::nullopt;
    Rational power = mhp::pow(A, n0);
    for (unsigned long n = n0; n <= n0 + limit; ++n) {
        if (Rational(static_cast<long>(n)) * B >= power) return std::nullopt;
        if (power * (A - 1) >= B) return n;
        power *= A;
    }
    return std::nullopt;
}

// Subdivision proofs.

enum class NodeStatus { Pass, Split, Undecided, Fail };

inline const char* to_string(NodeStatus s) {
    switch (s) {
    case NodeStatus::Pass:
        return "pass";
    case NodeStatus::Split:
        return "split";
    case NodeStatus::Undecided:
        return "undecided";
    case NodeStatus::Fail:
        return "fail";
    }
    return "?";
}

struct SubdivisionNode {
    Box box;
    NodeStatus status = NodeStatus::Undecided;
    Rational A_lo;
    Rational B_hi;
    // Leaves of all-n proofs: end of the base-check chain.
    std::optional<unsigned long> induction_from;
    std::vector<SubdivisionNode> children;
};

enum class ProofStatus { Proved, Refuted, Undecided };

inline const char* to_string(ProofStatus s) {
    switch (s) {
    case ProofStatus::Proved:
        return "proved";
    case ProofStatus::Refuted:
        return "refuted";
    case ProofStatus::Undecided:
        return "undecided";
    }
    return "?";
}

struct SubdivisionProof {
    unsigned long n = 1;
    // true: leaves certify every n' >= n, not only n itself.
    bool all_n = false;
    unsigned depth_limit = 0;
    ProofStatus status = ProofStatus::Undecided;
    SubdivisionNode root;
    std::optional<RationalPoint> counterexample;
    std::vector<Box> undecided;

    std::size_t leaf_count() const { return count_leaves(root); }

  private:
    static std::size_t count_leaves(const SubdivisionNode& n) {
        if (n.children.empty()) return 1;
        std::size_t s = 0;
        for (const auto& c : n.children) s += count_leaves(c);
        return s;
    }
};

/// Halves every non-degenerate axis. Children are ordered with the t half
/// varying slowest and lower halves first.
inline std::vector<Box> bisect(const Box& b) {
    auto halves = [](const Rational& lo, const Rational& hi) {
        std::vector<std::pair<Rational, Rational>> out;
        if (lo == hi) {
            out.emplace_back(lo, hi);
        } else {
            Rational mid = (lo + hi) / 2;
            out.emplace_back(lo, mid);
            out.emplace_back(mid, hi);
        }
        return out;
    };
    std::vector<Box> out;
    for (const auto& [tl, th] : halves(b.lo.t, b.hi.t))
        for (const auto& [ul, uh] : halves(b.lo.u, b.hi.u))
            for (const auto& [vl, vh] : halves(b.lo.v, b.hi.v))
                out.emplace_back(RationalPoint{tl, ul, vl}, RationalPoint{th, uh, vh});
    return out;
}

namespace detail {

class Subdivider {
  public:
    Subdivider(const MHPolynomial& mh, const MHPolynomial& mh_pi, unsigned long n, bool all_n,
               unsigned depth_limit)
        : mh_(mh), mh_pi_(mh_pi), n_(n), all_n_(all_n), depth_limit_(depth_limit) {}

    SubdivisionProof run(const Box& root) {
        SubdivisionProof proof;
        proof.n = n_;
        proof.all_n = all_n_;
        proof.depth_limit = depth_limit_;
        proof.root = explore(root, 0, proof);
        if (proof.counterexample)
            proof.status = ProofStatus::Refuted;
        else if (!proof.undecided.empty())
            proof.status = ProofStatus::Undecided;
        else
            proof.status = ProofStatus::Proved;
        return proof;
    }

  private:
    bool fails_at(const RationalPoint& p) const {
        Rational A = mh_.eval(p);
        return Rational(static_cast<long>(n_)) * mh_pi_.eval(p) >= mhp::pow(A, n_);
    }

    SubdivisionNode explore(const Box& box, unsigned depth, SubdivisionProof& proof) {
        SubdivisionNode node;
        node.box = box;
        node.A_lo = mh_.eval(box.lo);
        node.B_hi = mh_pi_.eval(box.hi);
        if (all_n_) {
            node.induction_from = certify_from(node.A_lo, node.B_hi, n_);
            if (node.induction_from) {
                node.status = NodeStatus::Pass;
                return node;
            }
        } else if (Rational(static_cast<long>(n_)) * node.B_hi < mhp::pow(node.A_lo, n_)) {
            node.status = NodeStatus::Pass;
            return node;
        }

        Rational half = 2;
        RationalPoint mid{(box.lo.t + box.hi.t) / half, (box.lo.u + box.hi.u) / half,
                          (box.lo.v + box.hi.v) / half};
        for (const RationalPoint* p : {&box.lo, static_cast<const RationalPoint*>(&mid), &box.hi}) {
            if (fails_at(*p)) {
                node.status = NodeStatus::Fail;
                if (!proof.counterexample) proof.counterexample = *p;
                return node;
            }
        }
        if (depth >= depth_limit_ || box.degenerate()) {
            node.status = NodeStatus::Undecided;
            proof.undecided.push_back(box);
            return node;
        }
        node.status = NodeStatus::Split;
        for (const Box& child : bisect(box)) {
            node.children.push_back(explore(child, depth + 1, proof));
            if (proof.counterexample) break;
        }
        return node;
    }

    const MHPolynomial& mh_;
    const MHPolynomial& mh_pi_;
    unsigned long n_;
    bool all_n_;
    unsigned depth_limit_;
};

} // namespace detail

/// Adaptive bisection proof that n * MH^pi < MH^n on the whole box.
inline SubdivisionProof verify_cube_at_n(const Space& x, unsigned long n, const Box& box,
                                         unsigned depth) {
    if (n < 1) throw VerifyError("n must be at least 1");
    if (!box.positive()) throw VerifyError("box must lie in the positive orthant");
    bool uv_fixed = box.lo.u == 1 && box.hi.u == 1 && box.lo.v == 1 && box.hi.v == 1;
    detail::require_hodge(x, !uv_fixed, "verify_cube_at_n");
    return detail::Subdivider(x.mh(), x.mh_pi(), n, false, depth).run(box);
}

// Certificates.

enum class Variant { Point, Cube, Halfline };

inline const char* to_string(Variant v) {
    switch (v) {
    case Variant::Point:
        return "point";
    case Variant::Cube:
        return "cube";
    case Variant::Halfline:
        return "halfline";
    }
    return "?";
}

struct MinimalityWitness {
    unsigned long n = 0;
    RationalPoint at;
    Rational lhs; // n * MH^pi bound
    Rational rhs; // MH^n
};

struct TailBound {
    Rational t_star;
    std::uint32_t deg_p = 0;
    std::uint32_t deg_p_pi = 0;
    Integer coeff_sum_pi;
};

struct ThresholdCertificate {
    Variant variant = Variant::Point;
    std::string space;
    bool hodge_graded = true;
    MHPolynomial mh;
    MHPolynomial mh_pi;

    RationalPoint at;  // point
    Rational eps;      // cube, halfline
    Rational r;        // cube
    unsigned refine_depth = 0;

    unsigned long n0 = 1;
    Rational A_lo;
    Rational B_hi;
    unsigned long induction_from = 1;

    bool minimal = false;
    std::optional<MinimalityWitness> witness;
    std::optional<TailBound> tail;
    std::optional<SubdivisionNode> subdivision;
    bool trivial = false;
};

namespace detail {

inline ThresholdCertificate certificate_base(const Space& x, Variant v) {
    ThresholdCertificate c;
    c.variant = v;
    c.space = x.to_string();
    c.hodge_graded = x.hodge_graded();
    c.mh = x.mh();
    c.mh_pi = x.mh_pi();
    return c;
}

inline void fill_from_scan(ThresholdCertificate& c, const PairScan& s) {
    c.n0 = s.n0;
    c.induction_from = s.induction_from;
}

inline MinimalityWitness pair_witness(unsigned long n, const RationalPoint& at, const Rational& A,
                                      const Rational& B) {
    return {n, at, Rational(static_cast<long>(n)) * B, mhp::pow(A, n)};
}

} // namespace detail

/// Minimal n0 at a positive point; minimality is witnessed at n0 - 1.
inline ThresholdCertificate point_threshold(const Space& x, const RationalPoint& pt,
                                            ScanOptions opts = {}) {
    if (pt.t <= 0 || pt.u <= 0 || pt.v <= 0)
        throw VerifyError("point_threshold needs a point with positive coordinates");
    detail::require_hodge(x, !detail::is_unit_uv(pt), "point_threshold");
    auto c = detail::certificate_base(x, Variant::Point);
    c.at = pt;
    c.A_lo = x.mh().eval(pt);
    c.B_hi = x.mh_pi().eval(pt);
    PairScan s = scan_pair(c.A_lo, c.B_hi, opts);
    detail::fill_from_scan(c, s);
    c.minimal = true;
    if (c.n0 > 1) c.witness = detail::pair_witness(c.n0 - 1, pt, c.A_lo, c.B_hi);
    return c;
}

/// Sound n0 on [eps, r]^3 from corner bounds; refine_depth > 0 splits the
/// cube uniformly into 8^depth subcubes and takes the worst one.
inline ThresholdCertificate cube_threshold(const Space& x, const Rational& eps, const Rational& r,
                                           unsigned refine_depth = 0, ScanOptions opts = {}) {
    if (eps <= 0) throw VerifyError("cube_threshold needs eps > 0");
    if (r < eps) throw VerifyError("cube_threshold needs r >= eps");
    detail::require_hodge(x, !(eps == 1 && r == 1), "cube_threshold");
    auto c = detail::certificate_base(x, Variant::Cube);
    c.eps = eps;
    c.r = r;
    c.refine_depth = refine_depth;
    Box root = Box::cube(eps, r);

    if (refine_depth == 0 || root.degenerate()) {
        c.refine_depth = 0;
        c.A_lo = x.mh().eval(root.lo);
        c.B_hi = x.mh_pi().eval(root.hi);
        PairScan s = scan_pair(c.A_lo, c.B_hi, opts);
        detail::fill_from_scan(c, s);
        if (root.degenerate()) {
            c.minimal = true;
            if (c.n0 > 1) c.witness = detail::pair_witness(c.n0 - 1, root.lo, c.A_lo, c.B_hi);
        }
        return c;
    }

    // Uniform tree; leaves scanned individually, then re-certified at the max.
    struct Leaf {
        SubdivisionNode* node;
        PairScan scan;
    };
    std::vector<Leaf> leaves;
    SubdivisionNode tree;
    auto build = [&](auto&& self, SubdivisionNode& node, const Box& box, unsigned depth) -> void {
        node.box = box;
        if (depth == refine_depth) {
            node.A_lo = x.mh().eval(box.lo);
            node.B_hi = x.mh_pi().eval(box.hi);
            node.status = NodeStatus::Pass;
            leaves.push_back({&node, scan_pair(node.A_lo, node.B_hi, opts)});
            return;
        }
        node.status = NodeStatus::Split;
        auto kids = bisect(box);
        node.children.resize(kids.size());
        for (std::size_t i = 0; i < kids.size(); ++i) self(self, node.children[i], kids[i], depth + 1);
    };
    build(build, tree, root, 0);

    const Leaf* worst = &leaves.front();
    for (const auto& l : leaves)
        if (l.scan.n0 > worst->scan.n0) worst = &l;
    c.n0 = worst->scan.n0;
    for (auto& l : leaves) {
        l.node->induction_from = certify_from(l.node->A_lo, l.node->B_hi, c.n0, opts.max_n);
        if (!l.node->induction_from)
            throw VerifyError("internal: leaf does not certify at the maximal leaf threshold");
    }
    c.A_lo = worst->node->A_lo;
    c.B_hi = worst->node->B_hi;
    c.induction_from = *worst->node->induction_from;
    c.subdivision = std::move(tree);
    return c;
}

struct HalflineOptions {
    unsigned depth_limit = 40;
    unsigned long max_n = 256;
    unsigned max_tail_doublings = 64;
};

/// n0 such that n * P^pi(t) < P(t)^n for all n >= n0 and all t >= eps, with
/// P, P^pi the Poincare polynomials (u = v = 1). Beyond t* a degree argument
/// bounds the tail; [eps, t*] is covered by an all-n subdivision proof.
inline ThresholdCertificate halfline_threshold(const Space& x, const Rational& eps,
                                               HalflineOptions opts = {}) {
    if (eps <= 0) throw VerifyError("halfline_threshold needs eps > 0");
    auto c = detail::certificate_base(x, Variant::Halfline);
    c.eps = eps;
    UniPolynomial P = x.mh().specialize_t();
    UniPolynomial Ppi = x.mh_pi().specialize_t();
    // Working at u = v = 1 never touches the Hodge slots.
    MHPolynomial p3;
    MHPolynomial ppi3;
    for (const auto& [k, coef] : P.terms()) p3.add_term({k, 0, 0}, coef);
    for (const auto& [k, coef] : Ppi.terms()) ppi3.add_term({k, 0, 0}, coef);

    if (Ppi.is_zero()) {
        c.trivial = true;
        c.n0 = 1;
        c.minimal = true;
        c.A_lo = P.eval(eps);
        c.B_hi = 0;
        c.induction_from = 1;
        return c;
    }
    std::uint32_t dp = P.degree();
    std::uint32_t dpi = Ppi.degree();
    if (dp == 0) throw DataError("'" + x.to_string() + "' has trivial homology but nonzero homotopy");
    Integer spi = Ppi.coefficient_sum();

    std::optional<MinimalityWitness> last_refutation;
    auto refute_far = [&](unsigned long n) -> std::optional<MinimalityWitness> {
        Rational t = eps;
        for (unsigned j = 0; j <= opts.max_tail_doublings; ++j, t *= 2) {
            Rational lhs = Rational(static_cast<long>(n)) * Ppi.eval(t);
            Rational rhs = mhp::pow(P.eval(t), n);
            if (lhs >= rhs) return MinimalityWitness{n, {t, 1, 1}, lhs, rhs};
        }
        return std::nullopt;
    };

    for (unsigned long n = 1; n <= opts.max_n; ++n) {
        if (static_cast<unsigned long long>(n) * dp <= dpi) {
            if (auto w = refute_far(n)) last_refutation = w;
            continue;
        }
        std::optional<Rational> t_star;
        std::optional<unsigned long> tail_from;
        Rational t = 1;
        for (unsigned j = 0; j <= opts.max_tail_doublings; ++j, t *= 2) {
            Rational A = mhp::pow(t, dp);
            Rational B = Rational(spi) * mhp::pow(t, dpi);
            if (auto m = certify_from(A, B, n)) {
                t_star = t;
                tail_from = m;
                break;
            }
        }
        if (!t_star) continue;

        std::optional<SubdivisionNode> tree;
        if (*t_star > eps) {
            Box region({eps, 1, 1}, {*t_star, 1, 1});
            SubdivisionProof proof = detail::Subdivider(p3, ppi3, n, true, opts.depth_limit).run(region);
            if (proof.status == ProofStatus::Refuted) {
                const RationalPoint& p = *proof.counterexample;
                last_refutation = MinimalityWitness{n, p, Rational(static_cast<long>(n)) * Ppi.eval(p.t),
                                                    mhp::pow(P.eval(p.t), n)};
                continue;
            }
            if (proof.status == ProofStatus::Undecided) continue;
            tree = std::move(proof.root);
        }

        c.n0 = n;
        c.tail = TailBound{*t_star, dp, dpi, spi};
        c.A_lo = mhp::pow(*t_star, dp);
        c.B_hi = Rational(spi) * mhp::pow(*t_star, dpi);
        c.induction_from = *tail_from;
        c.subdivision = std::move(tree);
        // A failure at n - 1 is all minimality needs.
        c.minimal = n == 1 || (last_refutation && last_refutation->n == n - 1);
        if (c.minimal && n > 1) c.witness = last_refutation;
        return c;
    }
    throw VerifyError("no half-line threshold certified up to n = " + std::to_string(opts.max_n));
}

struct ProbeReport {
    std::string label = "exploration - does not decide the conjecture";
    Rational eps;
    std::vector<Rational> radii;
    std::vector<ThresholdCertificate> certificates;
};

/// Cube thresholds for a growing family of cubes [eps, r]^3. The unbounded
/// region [eps, inf)^3 is never reached, so this decides nothing.
inline ProbeReport conjecture_probe(const Space& x, const Rational& eps,
                                    const std::vector<Rational>& schedule, unsigned depth = 0,
                                    ScanOptions opts = {}) {
    if (eps <= 0) throw VerifyError("conjecture_probe needs eps > 0");
    for (std::size_t i = 1; i < schedule.size(); ++i)
        if (schedule[i] <= schedule[i - 1])
            throw VerifyError("radius schedule must be strictly increasing");
    ProbeReport rep;
    rep.eps = eps;
    rep.radii = schedule;
    for (const auto& r : schedule) rep.certificates.push_back(cube_threshold(x, eps, r, depth, opts));
    return rep;
}

} // namespace mhp
