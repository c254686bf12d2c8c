#pragma once

// Minimal Sullivan models of formal, simply connected spaces.
//
// The target is a cohomology algebra A = Q[generators] / (relations) with
// zero differential. The model (ΛV, d) is built degree by degree: in degree
// k we add closed generators until H^k(ΛV) -> A^k is onto, then generators
// whose differentials kill the kernel of H^{k+1}(ΛV) -> A^{k+1}. With no
// generators in degree 1, nothing added in degree k can interact with
// degree k+1 except through the new differentials, so one pass per degree
// suffices. Homotopy ranks are read off as the number of generators per
// degree, which equals dim(pi_k ⊗ Q) for formal inputs only.

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "graded_algebra.hpp"
#include "linalg.hpp"
#include "rational.hpp"

namespace mhp {

class ModelError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct PresentationGenerator {
    std::string name;
    int degree = 0;
};

struct CohomologyPresentation {
    std::vector<PresentationGenerator> generators;
    std::vector<std::string> relations;
    // Search bound when locating the top nonzero degree of the algebra.
    int max_degree = 64;
};

struct ModelGenerator {
    std::string name;
    int degree = 0;
    Element differential;
};

struct MinimalModel {
    std::vector<ModelGenerator> generators;
    int cutoff = 0;

    FreeGCA algebra() const {
        std::vector<int> degs;
        for (const auto& g : generators) degs.push_back(g.degree);
        return FreeGCA(std::move(degs));
    }

    std::vector<std::string> names() const {
        std::vector<std::string> out;
        for (const auto& g : generators) out.push_back(g.name);
        return out;
    }
};

struct ModelOptions {
    // Hard limit on the number of monomials in any graded piece.
    std::size_t max_basis = 20000;
};

namespace detail {

// relation := ["+"|"-"] term (("+"|"-") term)*
// term     := factor ("*"? factor)*
// factor   := integer | name ("^" integer)? | "(" relation ")" ("^" integer)?
class RelationParser {
  public:
    RelationParser(std::string_view text, const FreeGCA& alg, const std::vector<std::string>& names)
        : text_(text), alg_(alg), names_(names) {}

    Element parse() {
        Element e = sum();
        skip_ws();
        if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
        return e;
    }

  private:
    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError("relation '" + std::string(text_) + "', offset " + std::to_string(pos_) +
                             ": " + msg,
                         pos_);
    }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool peek(char c) {
        skip_ws();
        return pos_ < text_.size() && text_[pos_] == c;
    }

    unsigned long integer() {
        skip_ws();
        std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (start == pos_) fail("expected an integer");
        if (pos_ - start > 9) fail("integer too large");
        return std::stoul(std::string(text_.substr(start, pos_ - start)));
    }

    Element sum() {
        Element acc;
        int sign = 1;
        if (peek('-')) {
            ++pos_;
            sign = -1;
        } else if (peek('+')) {
            ++pos_;
        }
        add_to(acc, product(), sign);
        while (true) {
            if (peek('+')) {
                ++pos_;
                add_to(acc, product(), 1);
            } else if (peek('-')) {
                ++pos_;
                add_to(acc, product(), -1);
            } else {
                return acc;
            }
        }
    }

    bool factor_start() {
        skip_ws();
        if (pos_ >= text_.size()) return false;
        char c = text_[pos_];
        return c == '(' || std::isalnum(static_cast<unsigned char>(c)) || c == '_';
    }

    Element product() {
        Element acc = factor();
        while (true) {
            if (peek('*')) {
                ++pos_;
                acc = alg_.multiply(acc, factor());
            } else if (factor_start()) {
                acc = alg_.multiply(acc, factor());
            } else {
                return acc;
            }
        }
    }

    Element power_of(const Element& base) {
        if (!peek('^')) return base;
        ++pos_;
        unsigned long n = integer();
        Element out{{Monomial{}, Rational(1)}};
        for (unsigned long i = 0; i < n; ++i) out = alg_.multiply(out, base);
        return out;
    }

    Element factor() {
        skip_ws();
        if (pos_ >= text_.size()) fail("expected a factor");
        char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            Element inner = sum();
            if (!peek(')')) fail("expected ')'");
            ++pos_;
            return power_of(inner);
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            unsigned long n = integer();
            return Element{{Monomial{}, Rational(static_cast<long>(n))}};
        }
        std::size_t start = pos_;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
            ++pos_;
        std::string name(text_.substr(start, pos_ - start));
        if (name.empty()) fail("expected a generator name");
        auto it = std::find(names_.begin(), names_.end(), name);
        if (it == names_.end()) {
            pos_ = start;
            fail("unknown generator '" + name + "'");
        }
        auto g = static_cast<std::size_t>(it - names_.begin());
        return power_of(Element{{FreeGCA::generator(g), Rational(1)}});
    }

    std::string_view text_;
    const FreeGCA& alg_;
    const std::vector<std::string>& names_;
    std::size_t pos_ = 0;
};

/// A = free / ideal, graded piece by graded piece. Quotient coordinates are
/// the coefficients on the non-pivot ("standard") monomials after reduction.
class TargetAlgebra {
  public:
    TargetAlgebra(const CohomologyPresentation& pres, std::size_t max_basis)
        : max_basis_(max_basis), max_degree_(pres.max_degree) {
        std::vector<int> degs;
        std::set<std::string> seen;
        for (const auto& g : pres.generators) {
            if (g.degree < 2)
                throw ModelError("generator '" + g.name + "' has degree " +
                                 std::to_string(g.degree) +
                                 "; only simply connected presentations (degrees >= 2) are supported");
            if (!seen.insert(g.name).second) throw ModelError("duplicate generator '" + g.name + "'");
            degs.push_back(g.degree);
            names_.push_back(g.name);
        }
        free_ = FreeGCA(std::move(degs));
        for (const auto& text : pres.relations) {
            Element r = RelationParser(text, free_, names_).parse();
            std::optional<int> d;
            try {
                d = free_.homogeneous_degree(r);
            } catch (const std::invalid_argument&) {
                throw ModelError("relation '" + text + "' is not homogeneous");
            }
            if (!d) continue;
            if (*d == 0) throw ModelError("relation '" + text + "' has a constant term");
            relations_.emplace_back(*d, std::move(r));
        }
    }

    const FreeGCA& free() const { return free_; }
    const std::vector<std::string>& names() const { return names_; }

    std::size_t dim(int d) { return piece(d).standard.size(); }

    linalg::Vector quotient_coords(const Element& x, int d) {
        Piece& p = piece(d);
        linalg::Vector full = p.ideal.reduce(p.free.coords(x));
        linalg::Vector out;
        for (auto i : p.standard) out.push_back(full[i]);
        return out;
    }

    const Monomial& standard_monomial(int d, std::size_t i) {
        Piece& p = piece(d);
        return p.free.basis()[p.standard.at(i)];
    }

    /// Highest d with A^d != 0. If A vanishes on a window of consecutive
    /// degrees as wide as the largest generator degree, it vanishes above it.
    int top_degree() {
        int window = 1;
        for (int d : free_.degrees()) window = std::max(window, d);
        int top = 0;
        int zeros = 0;
        for (int d = 1; d <= max_degree_; ++d) {
            if (dim(d) > 0) {
                top = d;
                zeros = 0;
            } else if (++zeros >= window) {
                return top;
            }
        }
        throw ModelError("cohomology algebra is nonzero up to degree " + std::to_string(max_degree_) +
                         "; it must be finite dimensional (raise max_degree if this is expected)");
    }

  private:
    struct Piece {
        GradedPiece free;
        linalg::Span ideal{0};
        std::vector<std::size_t> standard;
    };

    Piece& piece(int d) {
        auto it = pieces_.find(d);
        if (it != pieces_.end()) return it->second;
        Piece p;
        p.free = GradedPiece(basis_or_throw(free_, d, max_basis_));
        p.ideal = linalg::Span(p.free.dim());
        for (const auto& [rd, r] : relations_) {
            if (rd > d) continue;
            for (const auto& m : basis_or_throw(free_, d - rd, max_basis_)) {
                Element prod = free_.multiply(Element{{m, Rational(1)}}, r);
                if (!prod.empty()) p.ideal.insert(p.free.coords(prod));
            }
        }
        std::vector<bool> pivot(p.free.dim(), false);
        for (auto i : p.ideal.pivots()) pivot[i] = true;
        for (std::size_t i = 0; i < p.free.dim(); ++i)
            if (!pivot[i]) p.standard.push_back(i);
        return pieces_.emplace(d, std::move(p)).first->second;
    }

  public:
    static std::vector<Monomial> basis_or_throw(const FreeGCA& alg, int d, std::size_t limit) {
        try {
            return alg.basis(d, limit);
        } catch (const BasisLimitError& e) {
            throw ModelError("degree " + std::to_string(d) + ": " + e.what() +
                             " (lower the cutoff or raise ModelOptions::max_basis)");
        }
    }

  private:
    FreeGCA free_;
    std::vector<std::string> names_;
    std::vector<std::pair<int, Element>> relations_;
    std::map<int, Piece> pieces_;
    std::size_t max_basis_;
    int max_degree_;
};

/// Differential and graded pieces of a free CDGA (ΛV, d).
class SullivanAlgebra {
  public:
    explicit SullivanAlgebra(std::size_t max_basis) : max_basis_(max_basis) {}

    explicit SullivanAlgebra(const MinimalModel& mm, std::size_t max_basis)
        : max_basis_(max_basis) {
        for (const auto& g : mm.generators) add_generator(g.degree, g.differential);
    }

    std::size_t add_generator(int degree, Element differential) {
        pieces_.clear();
        diffs_.push_back(std::move(differential));
        return alg_.add_generator(degree);
    }

    const FreeGCA& algebra() const { return alg_; }
    const Element& generator_differential(std::size_t g) const { return diffs_.at(g); }

    const GradedPiece& piece(int d) {
        auto it = pieces_.find(d);
        if (it != pieces_.end()) return it->second;
        return pieces_.emplace(d, GradedPiece(TargetAlgebra::basis_or_throw(alg_, d, max_basis_)))
            .first->second;
    }

    /// Leibniz rule: d(g * rest) = dg * rest + (-1)^|g| g * d(rest), g the
    /// lowest-index generator of the monomial.
    const Element& d(const Monomial& m) {
        auto it = memo_.find(m);
        if (it != memo_.end()) return it->second;
        Element out;
        if (!m.empty()) {
            std::size_t g = m.front().first;
            Monomial rest = m;
            if (--rest.front().second == 0) rest.erase(rest.begin());
            Element rest_el{{rest, Rational(1)}};
            Element g_el{{FreeGCA::generator(g), Rational(1)}};
            add_to(out, alg_.multiply(diffs_.at(g), rest_el));
            Element drest = d(rest);
            int sign = alg_.odd(g) ? -1 : 1;
            add_to(out, alg_.multiply(g_el, drest), sign);
        }
        return memo_.emplace(m, std::move(out)).first->second;
    }

    Element d(const Element& x) {
        Element out;
        for (const auto& [m, c] : x) add_to(out, d(m), c);
        return out;
    }

    /// Matrix of d : (ΛV)^k -> (ΛV)^{k+1}; column j is d of basis monomial j.
    linalg::Matrix d_matrix(int k) {
        const GradedPiece& src = piece(k);
        const GradedPiece& dst = piece(k + 1);
        linalg::Matrix m(dst.dim(), src.dim());
        for (std::size_t j = 0; j < src.dim(); ++j) {
            linalg::Vector col = dst.coords(d(src.basis()[j]));
            for (std::size_t i = 0; i < col.size(); ++i) m(i, j) = col[i];
        }
        return m;
    }

    std::vector<Element> cocycles(int k) {
        std::vector<Element> out;
        const GradedPiece& src = piece(k);
        for (const auto& v : linalg::nullspace(d_matrix(k))) out.push_back(src.element(v));
        return out;
    }

    std::size_t cohomology_dim(int k) {
        if (k < 0) return 0;
        std::size_t z = piece(k).dim() - linalg::rank(d_matrix(k));
        std::size_t b = k >= 1 ? linalg::rank(d_matrix(k - 1)) : 0;
        return z - b;
    }

  private:
    FreeGCA alg_;
    std::vector<Element> diffs_;
    std::map<int, GradedPiece> pieces_;
    std::map<Monomial, Element> memo_;
    std::size_t max_basis_;
};

inline Element apply_map(const FreeGCA& target, const std::vector<Element>& images,
                         const Element& x) {
    Element out;
    for (const auto& [m, c] : x) {
        Element prod{{Monomial{}, Rational(1)}};
        for (const auto& [g, e] : m)
            for (std::uint32_t i = 0; i < e; ++i) prod = target.multiply(prod, images.at(g));
        add_to(out, prod, c);
    }
    return out;
}

} // namespace detail

/// Graded dimensions of the cohomology algebra, degrees 0..through.
inline std::map<int, std::size_t> presentation_dims(const CohomologyPresentation& pres, int through,
                                                    ModelOptions opts = {}) {
    detail::TargetAlgebra target(pres, opts.max_basis);
    std::map<int, std::size_t> out;
    for (int d = 0; d <= through; ++d) out[d] = target.dim(d);
    return out;
}

/// 2 * (top nonzero degree) + 1, and never below 2.
inline int default_cutoff(const CohomologyPresentation& pres, ModelOptions opts = {}) {
    detail::TargetAlgebra target(pres, opts.max_basis);
    return std::max(2, 2 * target.top_degree() + 1);
}

inline MinimalModel build_minimal_model(const CohomologyPresentation& pres, int cutoff,
                                        ModelOptions opts = {}) {
    if (cutoff < 2) throw ModelError("cutoff must be at least 2, got " + std::to_string(cutoff));
    detail::TargetAlgebra target(pres, opts.max_basis);
    detail::SullivanAlgebra model(opts.max_basis);
    std::vector<Element> images;
    MinimalModel mm;
    mm.cutoff = cutoff;
    std::set<std::string> used_names;

    auto unique_name = [&](std::string base) {
        std::string name = base;
        for (int i = 2; used_names.count(name); ++i) name = base + "_" + std::to_string(i);
        used_names.insert(name);
        return name;
    };

    for (int k = 2; k <= cutoff; ++k) {
        // Onto H^k(A): closed generators for standard monomials not yet hit.
        linalg::Span hit(target.dim(k));
        for (const auto& z : model.cocycles(k))
            hit.insert(target.quotient_coords(detail::apply_map(target.free(), images, z), k));
        int closed_count = 0;
        for (std::size_t i = 0; i < target.dim(k); ++i) {
            linalg::Vector unit(target.dim(k));
            unit[i] = 1;
            if (!hit.insert(unit)) continue;
            const Monomial& std_mon = target.standard_monomial(k, i);
            std::string base = std_mon.size() == 1 && std_mon.front().second == 1
                                   ? target.names()[std_mon.front().first]
                                   : "a" + std::to_string(k) + "_" + std::to_string(++closed_count);
            mm.generators.push_back({unique_name(base), k, {}});
            model.add_generator(k, {});
            images.push_back(Element{{std_mon, Rational(1)}});
        }

        // Injective on H^{k+1}: kill cocycles that map to zero in A^{k+1}.
        std::vector<Element> z_next = model.cocycles(k + 1);
        linalg::Matrix phi(target.dim(k + 1), z_next.size());
        for (std::size_t j = 0; j < z_next.size(); ++j) {
            linalg::Vector col =
                target.quotient_coords(detail::apply_map(target.free(), images, z_next[j]), k + 1);
            for (std::size_t i = 0; i < col.size(); ++i) phi(i, j) = col[i];
        }
        const GradedPiece& next = model.piece(k + 1);
        linalg::Span boundaries(next.dim());
        linalg::Matrix dk = model.d_matrix(k);
        for (std::size_t j = 0; j < dk.cols(); ++j) boundaries.insert(dk.column(j));

        std::vector<Element> to_kill;
        for (const auto& combo : linalg::nullspace(phi)) {
            Element z;
            for (std::size_t j = 0; j < combo.size(); ++j) add_to(z, z_next[j], combo[j]);
            if (boundaries.insert(next.coords(z))) to_kill.push_back(std::move(z));
        }
        int kill_count = 0;
        for (auto& z : to_kill) {
            std::string name = unique_name("y" + std::to_string(k) + "_" + std::to_string(++kill_count));
            mm.generators.push_back({name, k, z});
            model.add_generator(k, z);
            images.push_back({});
        }
    }
    return mm;
}

inline std::map<int, std::size_t> homotopy_ranks(const MinimalModel& mm) {
    std::map<int, std::size_t> out;
    for (const auto& g : mm.generators) ++out[g.degree];
    return out;
}

inline std::map<int, std::size_t> cohomology_dims(const MinimalModel& mm, int through,
                                                  ModelOptions opts = {}) {
    if (through > mm.cutoff)
        throw ModelError("cohomology requested through degree " + std::to_string(through) +
                         " beyond the model cutoff " + std::to_string(mm.cutoff));
    detail::SullivanAlgebra alg(mm, opts.max_basis);
    std::map<int, std::size_t> out;
    for (int k = 0; k <= through; ++k) out[k] = alg.cohomology_dim(k);
    return out;
}

/// Generators whose differential is nonzero after applying d twice.
inline std::vector<std::string> d_squared_violations(const MinimalModel& mm,
                                                     ModelOptions opts = {}) {
    detail::SullivanAlgebra alg(mm, opts.max_basis);
    std::vector<std::string> bad;
    for (std::size_t g = 0; g < mm.generators.size(); ++g)
        if (!alg.d(mm.generators[g].differential).empty()) bad.push_back(mm.generators[g].name);
    return bad;
}

/// Generators whose differential has a linear (word length < 2) part.
inline std::vector<std::string> minimality_violations(const MinimalModel& mm) {
    std::vector<std::string> bad;
    for (const auto& g : mm.generators)
        for (const auto& [m, c] : g.differential)
            if (word_length(m) < 2) {
                bad.push_back(g.name);
                break;
            }
    return bad;
}

struct DegreeComparison {
    int degree = 0;
    std::size_t model_dim = 0;
    std::size_t target_dim = 0;
};

struct QuasiIsoReport {
    bool ok = true;
    std::optional<int> first_mismatch;
    std::vector<DegreeComparison> degrees;
};

inline QuasiIsoReport check_quasi_iso(const MinimalModel& mm, const CohomologyPresentation& pres,
                                      int through, ModelOptions opts = {}) {
    auto model = cohomology_dims(mm, through, opts);
    auto target = presentation_dims(pres, through, opts);
    QuasiIsoReport r;
    for (int d = 0; d <= through; ++d) {
        r.degrees.push_back({d, model[d], target[d]});
        if (model[d] != target[d] && !r.first_mismatch) {
            r.ok = false;
            r.first_mismatch = d;
        }
    }
    return r;
}

// JSON

inline CohomologyPresentation presentation_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("generators") || !j["generators"].is_array())
        throw ModelError("presentation must be an object with a \"generators\" array");
    CohomologyPresentation p;
    for (const auto& g : j["generators"]) {
        if (!g.is_object() || !g.contains("name") || !g["name"].is_string() ||
            !g.contains("degree") || !g["degree"].is_number_integer())
            throw ModelError("presentation generator needs a string name and an integer degree");
        p.generators.push_back({g["name"].get<std::string>(), g["degree"].get<int>()});
    }
    if (j.contains("relations")) {
        if (!j["relations"].is_array()) throw ModelError("\"relations\" must be an array of strings");
        for (const auto& r : j["relations"]) {
            if (!r.is_string()) throw ModelError("\"relations\" must be an array of strings");
            p.relations.push_back(r.get<std::string>());
        }
    }
    if (j.contains("max_degree")) p.max_degree = j["max_degree"].get<int>();
    return p;
}

inline CohomologyPresentation parse_presentation(std::string_view bytes) {
    try {
        return presentation_from_json(nlohmann::json::parse(bytes));
    } catch (const nlohmann::json::exception& e) {
        throw ModelError(std::string("malformed presentation JSON: ") + e.what());
    }
}

inline nlohmann::json to_json(const MinimalModel& mm) {
    FreeGCA alg = mm.algebra();
    std::vector<std::string> names = mm.names();
    nlohmann::json gens = nlohmann::json::array();
    for (const auto& g : mm.generators) {
        nlohmann::json terms = nlohmann::json::array();
        for (const auto& [m, c] : g.differential) {
            nlohmann::json mon = nlohmann::json::array();
            for (const auto& [idx, e] : m) mon.push_back({idx, e});
            terms.push_back({to_fraction_string(c), mon});
        }
        gens.push_back({{"name", g.name},
                        {"degree", g.degree},
                        {"differential", terms},
                        {"differential_text", alg.element_string(g.differential, names)}});
    }
    nlohmann::json ranks = nlohmann::json::object();
    for (const auto& [d, r] : homotopy_ranks(mm)) ranks[std::to_string(d)] = r;
    return {{"cutoff", mm.cutoff}, {"generators", gens}, {"homotopy_ranks", ranks}};
}

inline MinimalModel model_from_json(const nlohmann::json& j) {
    MinimalModel mm;
    mm.cutoff = j.at("cutoff").get<int>();
    for (const auto& g : j.at("generators")) {
        ModelGenerator gen{g.at("name").get<std::string>(), g.at("degree").get<int>(), {}};
        for (const auto& term : g.at("differential")) {
            Monomial m;
            for (const auto& pe : term.at(1))
                m.emplace_back(pe.at(0).get<std::size_t>(), pe.at(1).get<std::uint32_t>());
            add_to(gen.differential, m, parse_rational(term.at(0).get<std::string>()));
        }
        mm.generators.push_back(std::move(gen));
    }
    return mm;
}

} // namespace mhp
