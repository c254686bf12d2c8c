#pragma once

// JSON form of threshold certificates and subdivision proofs. All rationals
// are "numerator/denominator" strings.

#include <string>

#include <nlohmann/json.hpp>

#include "poly.hpp"
#include "rational.hpp"
#include "verify.hpp"

namespace mhp {

inline nlohmann::json to_json(const RationalPoint& p) {
    return {to_fraction_string(p.t), to_fraction_string(p.u), to_fraction_string(p.v)};
}

inline nlohmann::json to_json(const SubdivisionNode& n) {
    nlohmann::json j = {{"lo", to_json(n.box.lo)},
                        {"hi", to_json(n.box.hi)},
                        {"status", to_string(n.status)}};
    if (n.children.empty()) {
        j["A_lo"] = to_fraction_string(n.A_lo);
        j["B_hi"] = to_fraction_string(n.B_hi);
        if (n.induction_from) j["induction_from"] = *n.induction_from;
    } else {
        nlohmann::json kids = nlohmann::json::array();
        for (const auto& c : n.children) kids.push_back(to_json(c));
        j["children"] = std::move(kids);
    }
    return j;
}

inline nlohmann::json to_json(const SubdivisionProof& p) {
    nlohmann::json j = {{"n", p.n},
                        {"all_n", p.all_n},
                        {"depth_limit", p.depth_limit},
                        {"status", to_string(p.status)},
                        {"leaves", p.leaf_count()},
                        {"tree", to_json(p.root)}};
    if (p.counterexample) j["counterexample"] = to_json(*p.counterexample);
    nlohmann::json und = nlohmann::json::array();
    for (const auto& b : p.undecided) und.push_back({{"lo", to_json(b.lo)}, {"hi", to_json(b.hi)}});
    j["undecided"] = std::move(und);
    return j;
}

inline nlohmann::json to_json(const ThresholdCertificate& c) {
    nlohmann::json j;
    j["variant"] = to_string(c.variant);
    j["space"] = c.space;
    j["hodge_graded"] = c.hodge_graded;
    j["mh"] = to_json(c.mh);
    j["mh_pi"] = to_json(c.mh_pi);
    switch (c.variant) {
    case Variant::Point:
        j["region"] = {{"at", to_json(c.at)}};
        break;
    case Variant::Cube:
        j["region"] = {{"eps", to_fraction_string(c.eps)},
                       {"r", to_fraction_string(c.r)},
                       {"refine_depth", c.refine_depth}};
        break;
    case Variant::Halfline:
        j["region"] = {{"eps", to_fraction_string(c.eps)}};
        break;
    }
    j["trivial"] = c.trivial;
    j["n0"] = c.n0;
    j["A_lo"] = to_fraction_string(c.A_lo);
    j["B_hi"] = to_fraction_string(c.B_hi);

    Rational lhs = Rational(static_cast<long>(c.n0)) * c.B_hi;
    Rational rhs = mhp::pow(c.A_lo, c.n0);
    j["base_check"] = {{"n", c.n0},
                       {"lhs", to_fraction_string(lhs)},
                       {"rhs", to_fraction_string(rhs)},
                       {"holds", lhs < rhs}};
    Rational step = mhp::pow(c.A_lo, c.induction_from) * (c.A_lo - 1);
    j["induction_check"] = {{"from", c.induction_from},
                            {"lhs", to_fraction_string(c.B_hi)},
                            {"rhs", to_fraction_string(step)},
                            {"holds", c.B_hi <= step}};
    j["minimal"] = c.minimal;
    if (c.witness)
        j["minimality_witness"] = {{"n", c.witness->n},
                                   {"at", to_json(c.witness->at)},
                                   {"lhs", to_fraction_string(c.witness->lhs)},
                                   {"rhs", to_fraction_string(c.witness->rhs)}};
    if (c.tail)
        j["tail"] = {{"t_star", to_fraction_string(c.tail->t_star)},
                     {"deg_P", c.tail->deg_p},
                     {"deg_P_pi", c.tail->deg_p_pi},
                     {"coeff_sum_P_pi", c.tail->coeff_sum_pi.get_str()}};
    if (c.subdivision) j["subdivision"] = to_json(*c.subdivision);
    return j;
}

} // namespace mhp
