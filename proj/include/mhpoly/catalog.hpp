#pragma once

// Spaces as expression trees over catalog atoms.
//
// Atoms carry declared MH / MH^pi data; products and powers propagate it:
//   MH(X x Y)    = MH(X) * MH(Y)
//   MH^pi(X x Y) = MH^pi(X) + MH^pi(Y)
// Nothing here derives a mixed Hodge structure from geometry.

#include <cctype>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "poly.hpp"
#include "rational.hpp"

namespace mhp {

class CatalogError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct SpaceAtom {
    std::string name;
    MHPolynomial mh;
    MHPolynomial mh_pi;
    // false: only the t-specialization is meaningful; (a, b) are placeholders.
    bool hodge_graded = true;
    // true: the homotopical Hodge exponents are an extrapolation, not sourced data.
    bool mh_pi_extrapolated = false;

    /// Connected (constant term 1) and simply connected (no homotopy below degree 2).
    void validate() const {
        if (name.empty()) throw CatalogError("space atom with empty name");
        if (mh.coefficient({0, 0, 0}) != 1)
            throw CatalogError("atom '" + name + "': mh constant term must be exactly 1");
        for (const auto& [e, c] : mh.terms())
            if (e.k == 0 && (e.a != 0 || e.b != 0))
                throw CatalogError("atom '" + name + "': mh has a degree-0 term besides the unit");
        for (const auto& [e, c] : mh_pi.terms())
            if (e.k < 2)
                throw CatalogError("atom '" + name + "': mh_pi has a term in degree " +
                                   std::to_string(e.k) + " (< 2), not simply connected");
    }

    friend bool operator==(const SpaceAtom&, const SpaceAtom&) = default;
};

class Space {
  public:
    enum class Kind { Atom, Product, Power };

    explicit Space(SpaceAtom atom) {
        atom.validate();
        auto n = std::make_shared<Node>();
        n->kind = Kind::Atom;
        n->atom = std::make_shared<const SpaceAtom>(std::move(atom));
        node_ = std::move(n);
    }

    static Space product(const Space& x, const Space& y) {
        auto n = std::make_shared<Node>();
        n->kind = Kind::Product;
        n->left = x.node_;
        n->right = y.node_;
        return Space(std::move(n));
    }

    static Space power(const Space& x, unsigned long exponent) {
        if (exponent == 0) throw std::invalid_argument("power exponent must be at least 1");
        auto n = std::make_shared<Node>();
        n->kind = Kind::Power;
        n->left = x.node_;
        n->exponent = exponent;
        return Space(std::move(n));
    }

    Kind kind() const { return node_->kind; }
    const SpaceAtom& atom() const {
        if (node_->kind != Kind::Atom) throw std::logic_error("not an atom node");
        return *node_->atom;
    }
    Space left() const { return Space(node_->left); }
    Space right() const { return Space(node_->right); }
    Space base() const { return Space(node_->left); }
    unsigned long exponent() const { return node_->exponent; }

    const MHPolynomial& mh() const { return cached().mh; }
    const MHPolynomial& mh_pi() const { return cached().mh_pi; }

    /// False when any atom in the tree only carries t-specialized data.
    bool hodge_graded() const { return cached().hodge_graded; }
    bool mh_pi_extrapolated() const { return cached().extrapolated; }

    /// Distinct atoms in first-occurrence order.
    std::vector<SpaceAtom> atoms() const {
        std::vector<SpaceAtom> out;
        std::set<std::string> seen;
        collect_atoms(*node_, out, seen);
        return out;
    }

    /// Canonical expression: "P1 x S3^2". Round-trips through parse_space_expr.
    std::string to_string() const {
        switch (node_->kind) {
        case Kind::Atom:
            return node_->atom->name;
        case Kind::Product: {
            Space r = right();
            std::string rs = r.to_string();
            if (r.kind() == Kind::Product) rs = "(" + rs + ")";
            return left().to_string() + " x " + rs;
        }
        case Kind::Power: {
            Space b = base();
            std::string bs = b.to_string();
            if (b.kind() != Kind::Atom) bs = "(" + bs + ")";
            return bs + "^" + std::to_string(node_->exponent);
        }
        }
        return {};
    }

    /// Structural equality of expression trees.
    friend bool operator==(const Space& x, const Space& y) { return same_tree(*x.node_, *y.node_); }

  private:
    struct Cache {
        MHPolynomial mh;
        MHPolynomial mh_pi;
        bool hodge_graded = true;
        bool extrapolated = false;
    };

    struct Node {
        Kind kind = Kind::Atom;
        std::shared_ptr<const SpaceAtom> atom;
        std::shared_ptr<const Node> left;
        std::shared_ptr<const Node> right;
        unsigned long exponent = 1;
        // Write-once; safe for concurrent readers.
        mutable std::once_flag once;
        mutable Cache cache;
    };

    explicit Space(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

    const Cache& cached() const {
        std::call_once(node_->once, [this] { node_->cache = compute(); });
        return node_->cache;
    }

    Cache compute() const {
        Cache c;
        switch (node_->kind) {
        case Kind::Atom:
            c.mh = node_->atom->mh;
            c.mh_pi = node_->atom->mh_pi;
            c.hodge_graded = node_->atom->hodge_graded;
            c.extrapolated = node_->atom->mh_pi_extrapolated;
            break;
        case Kind::Product: {
            const Cache& l = left().cached();
            const Cache& r = right().cached();
            c.mh = l.mh * r.mh;
            c.mh_pi = l.mh_pi + r.mh_pi;
            c.hodge_graded = l.hodge_graded && r.hodge_graded;
            c.extrapolated = l.extrapolated || r.extrapolated;
            break;
        }
        case Kind::Power: {
            const Cache& b = base().cached();
            c.mh = b.mh.pow(node_->exponent);
            c.mh_pi = b.mh_pi.scaled(Integer(std::to_string(node_->exponent), 10));
            c.hodge_graded = b.hodge_graded;
            c.extrapolated = b.extrapolated;
            break;
        }
        }
        return c;
    }

    static void collect_atoms(const Node& n, std::vector<SpaceAtom>& out,
                              std::set<std::string>& seen) {
        if (n.kind == Kind::Atom) {
            if (seen.insert(n.atom->name).second) out.push_back(*n.atom);
            return;
        }
        collect_atoms(*n.left, out, seen);
        if (n.kind == Kind::Product) collect_atoms(*n.right, out, seen);
    }

    static bool same_tree(const Node& x, const Node& y) {
        if (&x == &y) return true;
        if (x.kind != y.kind) return false;
        switch (x.kind) {
        case Kind::Atom:
            return *x.atom == *y.atom;
        case Kind::Product:
            return same_tree(*x.left, *y.left) && same_tree(*x.right, *y.right);
        case Kind::Power:
            return x.exponent == y.exponent && same_tree(*x.left, *y.left);
        }
        return false;
    }

    std::shared_ptr<const Node> node_;
};

// Builtin atoms

inline Space point() {
    return Space(SpaceAtom{"pt", MHPolynomial::one(), MHPolynomial{}, true, false});
}

/// CP^n: degree-2j homology carries (j, j); homotopy sits in degrees 2 and 2n+1.
/// For n >= 2 the (n+1, n+1) type of the top homotopy class is extrapolated
/// from the n = 1 case and flagged as such.
inline Space projective_space(long n) {
    if (n < 1) throw std::invalid_argument("projective space needs n >= 1");
    auto un = static_cast<std::uint32_t>(n);
    SpaceAtom a;
    a.name = "P" + std::to_string(n);
    for (std::uint32_t j = 0; j <= un; ++j) a.mh.add_term({2 * j, j, j}, 1);
    a.mh_pi.add_term({2, 1, 1}, 1);
    a.mh_pi.add_term({2 * un + 1, un + 1, un + 1}, 1);
    a.mh_pi_extrapolated = n >= 2;
    return Space(std::move(a));
}

/// S^n is not a complex variety in general, so only the t-specialization is
/// meaningful. The Hodge slots hold the placeholder (0, 0).
inline Space sphere(long n) {
    if (n < 2) throw std::invalid_argument("sphere needs n >= 2 (simply connected)");
    auto un = static_cast<std::uint32_t>(n);
    SpaceAtom a;
    a.name = "S" + std::to_string(n);
    a.hodge_graded = false;
    a.mh.add_term({0, 0, 0}, 1);
    a.mh.add_term({un, 0, 0}, 1);
    a.mh_pi.add_term({un, 0, 0}, 1);
    if (n % 2 == 0) a.mh_pi.add_term({2 * un - 1, 0, 0}, 1);
    return Space(std::move(a));
}

inline Space product(const Space& x, const Space& y) { return Space::product(x, y); }
inline Space power(const Space& x, long n) {
    if (n < 1) throw std::invalid_argument("power exponent must be at least 1");
    return Space::power(x, static_cast<unsigned long>(n));
}

inline const MHPolynomial& mh(const Space& x) { return x.mh(); }
inline const MHPolynomial& mh_pi(const Space& x) { return x.mh_pi(); }
inline UniPolynomial poincare(const Space& x) { return x.mh().specialize_t(); }
inline UniPolynomial poincare_pi(const Space& x) { return x.mh_pi().specialize_t(); }

inline Integer euler(const Space& x) { return poincare(x).eval(-1).get_num(); }
inline Integer euler_pi(const Space& x) { return poincare_pi(x).eval(-1).get_num(); }

// Catalog files

struct CatalogFile {
    std::vector<SpaceAtom> spaces;
};

inline CatalogFile load_catalog(std::string_view bytes) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(bytes);
    } catch (const nlohmann::json::parse_error& e) {
        throw CatalogError(std::string("malformed catalog JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("spaces") || !doc["spaces"].is_array())
        throw CatalogError("catalog must be an object with a \"spaces\" array");

    CatalogFile file;
    std::set<std::string> names;
    for (const auto& entry : doc["spaces"]) {
        if (!entry.is_object() || !entry.contains("name") || !entry["name"].is_string())
            throw CatalogError("catalog entry without a string \"name\"");
        SpaceAtom atom;
        atom.name = entry["name"].get<std::string>();
        bool ident = !atom.name.empty() &&
                     (std::isalpha(static_cast<unsigned char>(atom.name[0])) || atom.name[0] == '_');
        for (char c : atom.name)
            ident = ident && (std::isalnum(static_cast<unsigned char>(c)) || c == '_');
        if (!ident) throw CatalogError("catalog name '" + atom.name + "' is not an identifier");
        if (!names.insert(atom.name).second)
            throw CatalogError("duplicate catalog name '" + atom.name + "'");
        if (entry.contains("hodge_graded")) {
            if (!entry["hodge_graded"].is_boolean())
                throw CatalogError("atom '" + atom.name + "': hodge_graded must be a boolean");
            atom.hodge_graded = entry["hodge_graded"].get<bool>();
        }
        try {
            atom.mh = polynomial_from_json(entry.value("mh", nlohmann::json::array()));
            atom.mh_pi = polynomial_from_json(entry.value("mh_pi", nlohmann::json::array()));
        } catch (const std::exception& e) {
            throw CatalogError("atom '" + atom.name + "': " + e.what());
        }
        atom.validate();
        file.spaces.push_back(std::move(atom));
    }
    return file;
}

inline nlohmann::json to_json(const CatalogFile& file) {
    nlohmann::json spaces = nlohmann::json::array();
    for (const auto& a : file.spaces)
        spaces.push_back({{"name", a.name},
                          {"hodge_graded", a.hodge_graded},
                          {"mh", to_json(a.mh)},
                          {"mh_pi", to_json(a.mh_pi)}});
    return {{"spaces", spaces}};
}

/// Name resolution for the expression parser: builtin families plus any
/// registered catalog atoms. Registered names shadow builtin ones.
class Catalog {
  public:
    void add(const SpaceAtom& atom) {
        atom.validate();
        extra_[atom.name] = atom;
    }

    void add(const CatalogFile& file) {
        for (const auto& a : file.spaces) add(a);
    }

    const std::map<std::string, SpaceAtom>& extra() const { return extra_; }

    /// Longest registered name that is a prefix of text.
    std::optional<std::string> match_registered(std::string_view text) const {
        std::optional<std::string> best;
        for (const auto& [name, atom] : extra_)
            if (text.substr(0, name.size()) == name && (!best || name.size() > best->size()))
                best = name;
        return best;
    }

    Space registered(const std::string& name) const { return Space(extra_.at(name)); }

    std::string available_names() const {
        std::string s = "pt, P<n> (n >= 1), S<n> (n >= 2)";
        for (const auto& [name, atom] : extra_) s += ", " + name;
        return s;
    }

  private:
    std::map<std::string, SpaceAtom> extra_;
};

namespace detail {

// expr  := term ("x" term)*
// term  := primary ("^" digits)?
// primary := atom | "(" expr ")"
// atom  := "pt" | "P"digits | "S"digits | registered name
class SpaceExprParser {
  public:
    SpaceExprParser(std::string_view text, const Catalog& catalog)
        : text_(text), catalog_(catalog) {}

    Space parse() {
        Space s = expr();
        skip_ws();
        if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
        return s;
    }

  private:
    [[noreturn]] void fail(const std::string& msg) const { fail_at(msg, pos_); }
    [[noreturn]] void fail_at(const std::string& msg, std::size_t at) const {
        throw ParseError("syntax error at offset " + std::to_string(at) + ": " + msg, at);
    }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool at_digit() const {
        return pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]));
    }

    unsigned long digits(const char* what) {
        std::size_t start = pos_;
        if (!at_digit()) fail(std::string("expected ") + what);
        while (at_digit()) ++pos_;
        std::string_view d = text_.substr(start, pos_ - start);
        if (d.size() > 9) fail_at(std::string(what) + " too large", start);
        return std::stoul(std::string(d));
    }

    Space expr() {
        Space s = term();
        while (true) {
            skip_ws();
            if (pos_ < text_.size() && text_[pos_] == 'x') {
                ++pos_;
                s = Space::product(s, term());
            } else {
                return s;
            }
        }
    }

    Space term() {
        Space s = primary();
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == '^') {
            ++pos_;
            skip_ws();
            std::size_t at = pos_;
            unsigned long n = digits("exponent digits");
            if (n == 0) fail_at("exponent must be at least 1", at);
            s = Space::power(s, n);
        }
        return s;
    }

    Space primary() {
        skip_ws();
        if (pos_ >= text_.size()) fail("expected a space atom");
        if (text_[pos_] == '(') {
            ++pos_;
            Space s = expr();
            skip_ws();
            if (pos_ >= text_.size() || text_[pos_] != ')') fail("expected ')'");
            ++pos_;
            return s;
        }
        std::size_t start = pos_;
        std::string_view rest = text_.substr(pos_);
        if (auto name = catalog_.match_registered(rest)) {
            pos_ += name->size();
            return catalog_.registered(*name);
        }
        if (rest.substr(0, 2) == "pt") {
            pos_ += 2;
            return point();
        }
        if ((rest[0] == 'P' || rest[0] == 'S') && rest.size() > 1 &&
            std::isdigit(static_cast<unsigned char>(rest[1]))) {
            char family = rest[0];
            ++pos_;
            unsigned long n = digits("dimension digits");
            if (family == 'P') {
                if (n < 1) fail_at("P" + std::to_string(n) + ": projective space needs n >= 1", start);
                return projective_space(static_cast<long>(n));
            }
            if (n < 2) fail_at("S" + std::to_string(n) + ": sphere needs n >= 2", start);
            return sphere(static_cast<long>(n));
        }
        if (std::isalpha(static_cast<unsigned char>(rest[0])) || rest[0] == '_') {
            std::size_t end = pos_;
            while (end < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[end])) || text_[end] == '_'))
                ++end;
            std::string name(text_.substr(pos_, end - pos_));
            throw ParseError("unknown atom '" + name + "' at offset " + std::to_string(start) +
                                 "; available: " + catalog_.available_names(),
                             start);
        }
        fail("expected a space atom");
    }

    std::string_view text_;
    const Catalog& catalog_;
    std::size_t pos_ = 0;
};

} // namespace detail

inline Space parse_space_expr(std::string_view text, const Catalog& catalog = Catalog{}) {
    return detail::SpaceExprParser(text, catalog).parse();
}

} // namespace mhp
