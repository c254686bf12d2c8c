#pragma once

// Command-line front end. Exit codes: 0 success or certificate issued,
// 2 a strict check failed, 1 usage or data error.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <mhpoly/mhpoly.hpp>

namespace mhp::cli {

enum ExitCode : int { Ok = 0, UsageOrData = 1, StrictFailure = 2 };

namespace detail {

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline RationalPoint parse_point(const std::string& text) {
    auto v = parse_rational_list(text);
    if (v.size() != 3) throw ParseError("--at expects three values t,u,v", 0);
    return {v[0], v[1], v[2]};
}

inline std::string point_string(const RationalPoint& p) {
    return to_display_string(p.t) + "," + to_display_string(p.u) + "," + to_display_string(p.v);
}

inline nlohmann::json uni_json(const UniPolynomial& p) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& [k, c] : p.terms()) arr.push_back({k, c.get_str()});
    return arr;
}

inline void csv_poly(std::ostream& out, const std::string& series, const MHPolynomial& p) {
    for (const auto& [e, c] : p.terms())
        out << series << "," << e.k << "," << e.a << "," << e.b << "," << c.get_str() << "\n";
}

inline void csv_uni(std::ostream& out, const std::string& series, const UniPolynomial& p) {
    for (const auto& [k, c] : p.terms()) out << series << "," << k << ",,," << c.get_str() << "\n";
}

inline void space_notes(std::ostream& out, const Space& x) {
    if (!x.hodge_graded())
        out << "note: contains atoms with t-specialized data only; (a,b) exponents are placeholders\n";
    if (x.mh_pi_extrapolated())
        out << "note: homotopical Hodge exponents of P^n (n >= 2) are extrapolated from P^1\n";
}

inline void certificate_text(std::ostream& out, const ThresholdCertificate& c) {
    out << "variant:    " << to_string(c.variant) << "\n";
    out << "space:      " << c.space << "\n";
    switch (c.variant) {
    case Variant::Point:
        out << "point:      (" << point_string(c.at) << ")\n";
        break;
    case Variant::Cube:
        out << "cube:       [" << to_display_string(c.eps) << ", " << to_display_string(c.r)
            << "]^3, refine depth " << c.refine_depth << "\n";
        break;
    case Variant::Halfline:
        out << "half-line:  [" << to_display_string(c.eps) << ", inf), u = v = 1\n";
        break;
    }
    out << "n0:         " << c.n0 << (c.minimal ? " (minimal)" : " (sound, not claimed minimal)")
        << "\n";
    out << "A_lo:       " << to_display_string(c.A_lo) << "\n";
    out << "B_hi:       " << to_display_string(c.B_hi) << "\n";
    out << "induction:  B <= A^" << c.induction_from << " (A - 1)\n";
    if (c.witness)
        out << "witness:    n = " << c.witness->n << " fails: " << to_display_string(c.witness->lhs)
            << " >= " << to_display_string(c.witness->rhs) << " at (" << point_string(c.witness->at)
            << ")\n";
    if (c.tail) out << "tail:       t >= " << to_display_string(c.tail->t_star) << "\n";
    if (c.subdivision) {
        SubdivisionProof tmp;
        tmp.root = *c.subdivision;
        out << "subdivision leaves: " << tmp.leaf_count() << "\n";
    }
}

inline void certificate_csv(std::ostream& out, const ThresholdCertificate& c) {
    out << "variant,space,n0,minimal,A_lo,B_hi,induction_from\n";
    out << to_string(c.variant) << "," << c.space << "," << c.n0 << "," << (c.minimal ? 1 : 0)
        << "," << to_fraction_string(c.A_lo) << "," << to_fraction_string(c.B_hi) << ","
        << c.induction_from << "\n";
}

} // namespace detail

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Homological and homotopical mixed Hodge polynomials", "mhpoly"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string format = "text";
    std::vector<std::string> catalogs;
    app.add_option("--format", format, "Output format")
        ->check(CLI::IsMember({"json", "csv", "text"}));
    app.add_option("--catalog", catalogs, "Catalog JSON file registering extra atoms");

    std::string space_expr, at_text, eps_text, r_text, r_list, presentation_path, cert_path;
    unsigned depth = 0;
    unsigned long n_value = 1;
    int cutoff = -1;

    auto add_space = [&](CLI::App* sub) {
        sub->add_option("--space", space_expr, "Space expression, e.g. \"P1 x S3^2\"")->required();
    };

    auto* show = app.add_subcommand("show", "Print MH, MH^pi, Poincare polynomials and Euler characteristics");
    add_space(show);
    auto* eval = app.add_subcommand("eval", "Evaluate MH and MH^pi at a rational point");
    add_space(eval);
    eval->add_option("--at", at_text, "t,u,v")->required();
    auto* hil = app.add_subcommand("hilali", "Compare P^pi(1) with P(1); exit 2 unless strict");
    add_space(hil);
    auto* eul = app.add_subcommand("euler-compare", "Compare chi^pi with chi");
    add_space(eul);
    auto* mar = app.add_subcommand("margin", "MH - MH^pi at a point; exit 2 unless positive");
    add_space(mar);
    mar->add_option("--at", at_text, "t,u,v")->required();
    auto* tp = app.add_subcommand("threshold-point", "Minimal n0 at a positive point");
    add_space(tp);
    tp->add_option("--at", at_text, "s,a,b")->required();
    auto* tc = app.add_subcommand("threshold-cube", "Sound n0 on the cube [eps, r]^3");
    add_space(tc);
    tc->add_option("--eps", eps_text)->required();
    tc->add_option("--r", r_text)->required();
    tc->add_option("--depth", depth, "Uniform refinement depth");
    auto* th = app.add_subcommand("threshold-halfline", "n0 for P^pi vs P on [eps, inf)");
    add_space(th);
    th->add_option("--eps", eps_text)->required();
    auto* vc = app.add_subcommand("verify-cube", "Subdivision proof at a fixed n on [eps, r]^3");
    add_space(vc);
    vc->add_option("--n", n_value)->required();
    vc->add_option("--eps", eps_text)->required();
    vc->add_option("--r", r_text)->required();
    vc->add_option("--depth", depth, "Maximum bisection depth");
    auto* mm = app.add_subcommand("minmodel", "Minimal Sullivan model of a cohomology presentation");
    mm->add_option("--presentation", presentation_path, "Presentation JSON file")->required();
    mm->add_option("--cutoff", cutoff, "Degree cutoff (default 2 * top degree + 1)");
    auto* pr = app.add_subcommand("probe", "Cube thresholds for a growing radius schedule (exploration)");
    add_space(pr);
    pr->add_option("--eps", eps_text)->required();
    pr->add_option("--r-list", r_list, "Comma separated radii")->required();
    pr->add_option("--depth", depth, "Uniform refinement depth");
    auto* rc = app.add_subcommand("recheck", "Independently re-verify a certificate JSON file");
    rc->add_option("--certificate", cert_path)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? Ok : UsageOrData;
    }

    const bool json = format == "json";
    const bool csv = format == "csv";

    try {
        Catalog catalog;
        for (const auto& path : catalogs) catalog.add(load_catalog(detail::read_file(path)));
        auto space = [&] { return parse_space_expr(space_expr, catalog); };

        if (*show) {
            Space x = space();
            if (json) {
                nlohmann::json j = {{"space", x.to_string()},
                                    {"hodge_graded", x.hodge_graded()},
                                    {"mh_pi_extrapolated", x.mh_pi_extrapolated()},
                                    {"mh", to_json(x.mh())},
                                    {"mh_pi", to_json(x.mh_pi())},
                                    {"poincare", detail::uni_json(poincare(x))},
                                    {"poincare_pi", detail::uni_json(poincare_pi(x))},
                                    {"euler", euler(x).get_str()},
                                    {"euler_pi", euler_pi(x).get_str()}};
                out << j.dump() << "\n";
            } else if (csv) {
                out << "series,k,a,b,coefficient\n";
                detail::csv_poly(out, "mh", x.mh());
                detail::csv_poly(out, "mh_pi", x.mh_pi());
                detail::csv_uni(out, "poincare", poincare(x));
                detail::csv_uni(out, "poincare_pi", poincare_pi(x));
                out << "euler,,,," << euler(x).get_str() << "\n";
                out << "euler_pi,,,," << euler_pi(x).get_str() << "\n";
            } else {
                out << "space:   " << x.to_string() << "\n";
                out << "MH:      " << x.mh().to_string() << "\n";
                out << "MH^pi:   " << x.mh_pi().to_string() << "\n";
                out << "P(t):    " << poincare(x).to_string() << "\n";
                out << "P^pi(t): " << poincare_pi(x).to_string() << "\n";
                out << "chi:     " << euler(x).get_str() << "\n";
                out << "chi^pi:  " << euler_pi(x).get_str() << "\n";
                detail::space_notes(out, x);
            }
            return Ok;
        }

        if (*eval) {
            Space x = space();
            RationalPoint p = detail::parse_point(at_text);
            Rational m = margin(x, p);
            Rational a = x.mh().eval(p);
            Rational b = x.mh_pi().eval(p);
            if (json) {
                out << nlohmann::json{{"space", x.to_string()},
                                      {"at", to_json(p)},
                                      {"mh", to_fraction_string(a)},
                                      {"mh_pi", to_fraction_string(b)},
                                      {"margin", to_fraction_string(m)}}
                           .dump()
                    << "\n";
            } else if (csv) {
                out << "quantity,value\nmh," << to_fraction_string(a) << "\nmh_pi,"
                    << to_fraction_string(b) << "\nmargin," << to_fraction_string(m) << "\n";
            } else {
                out << "MH(" << detail::point_string(p) << ")    = " << to_display_string(a) << "\n";
                out << "MH^pi(" << detail::point_string(p) << ") = " << to_display_string(b) << "\n";
                out << "margin = " << to_display_string(m) << "\n";
            }
            return Ok;
        }

        if (*hil || *eul) {
            Space x = space();
            Comparison c = *hil ? hilali(x) : euler_compare(x);
            if (json) {
                out << nlohmann::json{{"space", x.to_string()},
                                      {"label", c.label},
                                      {"left", to_fraction_string(c.left)},
                                      {"right", to_fraction_string(c.right)},
                                      {"relation", to_string(c.relation)},
                                      {"strict", c.strict()}}
                           .dump()
                    << "\n";
            } else if (csv) {
                out << "label,left,relation,right\n"
                    << c.label << "," << to_display_string(c.left) << "," << to_string(c.relation)
                    << "," << to_display_string(c.right) << "\n";
            } else {
                out << c.label << ": " << to_display_string(c.left) << " " << to_string(c.relation)
                    << " " << to_display_string(c.right) << (c.strict() ? "" : "  (not strict)")
                    << "\n";
            }
            return c.strict() ? Ok : StrictFailure;
        }

        if (*mar) {
            Space x = space();
            RationalPoint p = detail::parse_point(at_text);
            Rational m = margin(x, p);
            if (json)
                out << nlohmann::json{{"space", x.to_string()},
                                      {"at", to_json(p)},
                                      {"margin", to_fraction_string(m)},
                                      {"positive", m > 0}}
                           .dump()
                    << "\n";
            else if (csv)
                out << "margin\n" << to_fraction_string(m) << "\n";
            else
                out << "margin at (" << detail::point_string(p) << ") = " << to_display_string(m) << "\n";
            return m > 0 ? Ok : StrictFailure;
        }

        if (*tp || *tc || *th) {
            Space x = space();
            ThresholdCertificate c;
            if (*tp)
                c = point_threshold(x, detail::parse_point(at_text));
            else if (*tc)
                c = cube_threshold(x, parse_rational(eps_text), parse_rational(r_text), depth);
            else
                c = halfline_threshold(x, parse_rational(eps_text));
            if (json)
                out << to_json(c).dump() << "\n";
            else if (csv)
                detail::certificate_csv(out, c);
            else
                detail::certificate_text(out, c);
            return Ok;
        }

        if (*vc) {
            Space x = space();
            Box box = Box::cube(parse_rational(eps_text), parse_rational(r_text));
            SubdivisionProof p = verify_cube_at_n(x, n_value, box, depth);
            if (json) {
                out << to_json(p).dump() << "\n";
            } else if (csv) {
                out << "n,status,leaves,undecided\n"
                    << p.n << "," << to_string(p.status) << "," << p.leaf_count() << ","
                    << p.undecided.size() << "\n";
            } else {
                out << "n = " << p.n << ": " << to_string(p.status) << " (" << p.leaf_count()
                    << " leaves, " << p.undecided.size() << " undecided)\n";
                if (p.counterexample)
                    out << "counterexample at (" << detail::point_string(*p.counterexample) << ")\n";
            }
            return p.status == ProofStatus::Proved ? Ok : StrictFailure;
        }

        if (*mm) {
            CohomologyPresentation pres = parse_presentation(detail::read_file(presentation_path));
            int cut = cutoff >= 0 ? cutoff : default_cutoff(pres);
            MinimalModel model = build_minimal_model(pres, cut);
            QuasiIsoReport qi = check_quasi_iso(model, pres, cut);
            auto dd = d_squared_violations(model);
            auto lin = minimality_violations(model);
            bool ok = qi.ok && dd.empty() && lin.empty();
            if (json) {
                nlohmann::json j = to_json(model);
                nlohmann::json dims = nlohmann::json::object();
                for (const auto& d : qi.degrees) dims[std::to_string(d.degree)] = d.model_dim;
                j["cohomology_dims"] = dims;
                j["quasi_iso"] = qi.ok;
                j["d_squared_zero"] = dd.empty();
                j["minimal"] = lin.empty();
                out << j.dump() << "\n";
            } else if (csv) {
                out << "name,degree,differential\n";
                FreeGCA alg = model.algebra();
                for (const auto& g : model.generators)
                    out << g.name << "," << g.degree << ",\""
                        << alg.element_string(g.differential, model.names()) << "\"\n";
            } else {
                FreeGCA alg = model.algebra();
                out << "cutoff: " << model.cutoff << "\n";
                for (const auto& g : model.generators)
                    out << "  " << g.name << "  (degree " << g.degree
                        << ")  d = " << alg.element_string(g.differential, model.names()) << "\n";
                out << "homotopy ranks:";
                for (const auto& [d, r] : homotopy_ranks(model)) out << " " << d << ":" << r;
                out << "\nquasi-isomorphism through " << cut << ": " << (qi.ok ? "yes" : "NO");
                if (qi.first_mismatch) out << " (first mismatch in degree " << *qi.first_mismatch << ")";
                out << "\nd^2 = 0: " << (dd.empty() ? "yes" : "NO")
                    << "\nminimal: " << (lin.empty() ? "yes" : "NO") << "\n";
                out << "note: ranks equal dim(pi_k ⊗ Q) only for formal spaces\n";
            }
            return ok ? Ok : StrictFailure;
        }

        if (*pr) {
            Space x = space();
            Rational eps = parse_rational(eps_text);
            ProbeReport rep = conjecture_probe(x, eps, parse_rational_list(r_list), depth);
            if (json) {
                nlohmann::json rows = nlohmann::json::array();
                for (std::size_t i = 0; i < rep.radii.size(); ++i)
                    rows.push_back({{"r", to_fraction_string(rep.radii[i])},
                                    {"n0", rep.certificates[i].n0},
                                    {"certificate", to_json(rep.certificates[i])}});
                out << nlohmann::json{{"label", rep.label},
                                      {"space", x.to_string()},
                                      {"eps", to_fraction_string(eps)},
                                      {"results", rows}}
                           .dump()
                    << "\n";
            } else if (csv) {
                out << "r,n0\n";
                for (std::size_t i = 0; i < rep.radii.size(); ++i)
                    out << to_fraction_string(rep.radii[i]) << "," << rep.certificates[i].n0 << "\n";
            } else {
                out << rep.label << "\n";
                for (std::size_t i = 0; i < rep.radii.size(); ++i)
                    out << "  [" << to_display_string(eps) << ", " << to_display_string(rep.radii[i])
                        << "]^3  n0 = " << rep.certificates[i].n0 << "\n";
            }
            return Ok;
        }

        if (*rc) {
            nlohmann::json cert;
            try {
                cert = nlohmann::json::parse(detail::read_file(cert_path));
            } catch (const nlohmann::json::parse_error& e) {
                throw std::runtime_error(std::string("malformed certificate JSON: ") + e.what());
            }
            recheck::Result r = recheck::check(cert);
            if (json) {
                out << nlohmann::json{{"accepted", r.ok}, {"failures", r.failures}}.dump() << "\n";
            } else if (csv) {
                out << "accepted,failures\n" << (r.ok ? 1 : 0) << "," << r.failures.size() << "\n";
            } else {
                out << (r.ok ? "accepted" : "REJECTED") << "\n";
                for (const auto& f : r.failures) out << "  " << f << "\n";
            }
            return r.ok ? Ok : StrictFailure;
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return UsageOrData;
    }
    return UsageOrData;
}

} // namespace mhp::cli
