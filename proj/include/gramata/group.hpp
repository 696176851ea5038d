#pragma once

/**
 * @file group.hpp
 * @brief Group specifications and register values.
 *
 * A GroupSpec names one of the supported register groups; a GroupElement is a
 * value of one of them. Elements are immutable, always in canonical form, and
 * have a canonical text serialization that doubles as their hash key:
 *
 *     free word    e | g<i>[^-1] (' ' g<i>[^-1])*      e.g. `g0 g1^-1`
 *     vector       [c1,...,ck]                          e.g. `[2,-3]`, `[]`
 *     rational     p | p/q   (lowest terms, q > 1)      e.g. `3/5`
 *     matrix       [[r,...],...,[r,...]]  row-major     e.g. `[[1,2],[0,1]]`
 *     heisenberg   H(x,y,z)  = b^x a^y c^z               e.g. `H(1,1,1)`
 *     pair         (<elem>|<elem>)                      e.g. `(g0|e)`
 *
 * Group specs use the compact grammar `free:R`, `zk:K`, `qplus`,
 * `matz:D[:det1|:detpm1]`, `matq:D[:det1|:detpm1]`, `heis`, `prod(S,S)`.
 */

#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "error.hpp"
#include "free_group.hpp"
#include "heisenberg.hpp"
#include "matrix.hpp"
#include "rational.hpp"

namespace gramata {

enum class DetConstraint { AnyInvertible, PlusMinusOne, One };

class GroupSpec
{
public:
    enum class Kind { Free, FreeAbelian, PositiveRationals, MatrixZ, MatrixQ, Heisenberg, Product };

    static GroupSpec free(std::size_t rank) { return GroupSpec(Kind::Free, rank); }
    static GroupSpec free_abelian(std::size_t k) { return GroupSpec(Kind::FreeAbelian, k); }
    static GroupSpec positive_rationals() { return GroupSpec(Kind::PositiveRationals, 0); }
    static GroupSpec heisenberg() { return GroupSpec(Kind::Heisenberg, 0); }

    static GroupSpec matrix_z(std::size_t dim, DetConstraint det = DetConstraint::AnyInvertible)
    {
        return matrix(Kind::MatrixZ, dim, det);
    }

    static GroupSpec matrix_q(std::size_t dim, DetConstraint det = DetConstraint::AnyInvertible)
    {
        return matrix(Kind::MatrixQ, dim, det);
    }

    static GroupSpec product(const GroupSpec& a, const GroupSpec& b)
    {
        GroupSpec s(Kind::Product, 0);
        s.left_ = std::make_shared<const GroupSpec>(a);
        s.right_ = std::make_shared<const GroupSpec>(b);
        return s;
    }

    Kind kind() const { return kind_; }
    /// Free rank, vector length, or matrix dimension depending on kind.
    std::size_t size() const { return size_; }
    DetConstraint det() const { return det_; }
    const GroupSpec& left() const { return *left_; }
    const GroupSpec& right() const { return *right_; }

    bool is_matrix() const { return kind_ == Kind::MatrixZ || kind_ == Kind::MatrixQ; }

    std::string str() const
    {
        switch (kind_) {
        case Kind::Free: return "free:" + std::to_string(size_);
        case Kind::FreeAbelian: return "zk:" + std::to_string(size_);
        case Kind::PositiveRationals: return "qplus";
        case Kind::Heisenberg: return "heis";
        case Kind::MatrixZ:
        case Kind::MatrixQ: {
            std::string s = (kind_ == Kind::MatrixZ ? "matz:" : "matq:") + std::to_string(size_);
            if (det_ == DetConstraint::One)
                s += ":det1";
            else if (det_ == DetConstraint::PlusMinusOne)
                s += ":detpm1";
            return s;
        }
        case Kind::Product: return "prod(" + left_->str() + "," + right_->str() + ")";
        }
        return {};
    }

    /// Accepts the compact grammar and the long form used in documents
    /// (`free 2`, `free-abelian 3`, `positive-rationals`, `heisenberg`,
    /// `matrix-Q 2 det=1`, `matrix-Z 3 det=pm1`, `direct-product(S,S)`).
    static GroupSpec parse(std::string_view text);

    friend bool operator==(const GroupSpec& a, const GroupSpec& b) { return a.str() == b.str(); }

private:
    GroupSpec(Kind k, std::size_t n) : kind_(k), size_(n) {}

    static GroupSpec matrix(Kind k, std::size_t dim, DetConstraint det)
    {
        if (dim == 0)
            throw Error("invalid-group", "matrix dimension must be >= 1");
        GroupSpec s(k, dim);
        s.det_ = det;
        return s;
    }

    Kind kind_;
    std::size_t size_ = 0;
    DetConstraint det_ = DetConstraint::AnyInvertible;
    std::shared_ptr<const GroupSpec> left_;
    std::shared_ptr<const GroupSpec> right_;
};

struct IntVector
{
    std::vector<Integer> coords;

    bool is_zero() const
    {
        for (const auto& c : coords)
            if (c != 0)
                return false;
        return true;
    }

    friend bool operator==(const IntVector&, const IntVector&) = default;

    std::string str() const
    {
        std::string out = "[";
        for (std::size_t i = 0; i < coords.size(); ++i) {
            if (i)
                out += ',';
            out += coords[i].get_str();
        }
        return out + "]";
    }
};

class GroupElement;

struct ElementPair
{
    std::shared_ptr<const GroupElement> left;
    std::shared_ptr<const GroupElement> right;
};

bool operator==(const ElementPair& a, const ElementPair& b);

class GroupElement
{
public:
    using Value = std::variant<ReducedWord, IntVector, Rational, ExactMatrix, HeisenbergTriple, ElementPair>;

    GroupElement() : value_(ReducedWord{}) {}
    GroupElement(ReducedWord w) : value_(std::move(w)) {}       // NOLINT
    GroupElement(IntVector v) : value_(std::move(v)) {}         // NOLINT
    GroupElement(Rational r) : value_(std::move(r)) {}          // NOLINT
    GroupElement(ExactMatrix m) : value_(std::move(m)) {}       // NOLINT
    GroupElement(HeisenbergTriple h) : value_(h) {}             // NOLINT

    static GroupElement pair(GroupElement a, GroupElement b)
    {
        GroupElement e;
        e.value_ = ElementPair{std::make_shared<const GroupElement>(std::move(a)),
                               std::make_shared<const GroupElement>(std::move(b))};
        return e;
    }

    const Value& value() const { return value_; }

    template <class T>
    bool holds() const { return std::holds_alternative<T>(value_); }

    template <class T>
    const T& as() const
    {
        if (const T* p = std::get_if<T>(&value_))
            return *p;
        throw Error("element-group-mismatch", "element " + str() + " has the wrong representation");
    }

    /// Canonical serialization; also the stable hash key.
    std::string str() const
    {
        return std::visit(
            [](const auto& v) -> std::string {
                using T = std::decay_t<decltype(v)>;
                if constexpr (std::is_same_v<T, ElementPair>)
                    return "(" + v.left->str() + "|" + v.right->str() + ")";
                else
                    return v.str();
            },
            value_);
    }

    friend bool operator==(const GroupElement& a, const GroupElement& b) { return a.value_ == b.value_; }

private:
    Value value_;
};

inline bool operator==(const ElementPair& a, const ElementPair& b)
{
    return *a.left == *b.left && *a.right == *b.right;
}

// ---------------------------------------------------------------------------
// Group operations

inline GroupElement identity(const GroupSpec& spec)
{
    switch (spec.kind()) {
    case GroupSpec::Kind::Free: return ReducedWord{};
    case GroupSpec::Kind::FreeAbelian: return IntVector{std::vector<Integer>(spec.size(), Integer(0))};
    case GroupSpec::Kind::PositiveRationals: return Rational(1);
    case GroupSpec::Kind::MatrixZ:
    case GroupSpec::Kind::MatrixQ: return ExactMatrix::identity(spec.size());
    case GroupSpec::Kind::Heisenberg: return HeisenbergTriple{};
    case GroupSpec::Kind::Product: return GroupElement::pair(identity(spec.left()), identity(spec.right()));
    }
    throw Error("invalid-group", "unknown group kind");
}

namespace detail {

[[noreturn]] inline void mismatch(const GroupSpec& spec, const GroupElement& g)
{
    throw Error("element-group-mismatch", "element " + g.str() + " does not belong to " + spec.str());
}

template <class T>
const T& expect(const GroupSpec& spec, const GroupElement& g)
{
    const T* p = std::get_if<T>(&g.value());
    if (!p)
        mismatch(spec, g);
    return *p;
}

} // namespace detail

/// Throws "element-group-mismatch" or "determinant-constraint" when `g` is not
/// a valid element of `spec`.
inline void check_element(const GroupSpec& spec, const GroupElement& g)
{
    using K = GroupSpec::Kind;
    switch (spec.kind()) {
    case K::Free: {
        const auto& w = detail::expect<ReducedWord>(spec, g);
        if (w.max_generator() > spec.size())
            throw Error("element-group-mismatch", "generator index out of range in " + w.str() + " for " + spec.str());
        return;
    }
    case K::FreeAbelian:
        if (detail::expect<IntVector>(spec, g).coords.size() != spec.size())
            detail::mismatch(spec, g);
        return;
    case K::PositiveRationals:
        if (detail::expect<Rational>(spec, g).sign() <= 0)
            throw Error("not-positive", "register value " + g.str() + " is not a positive rational");
        return;
    case K::Heisenberg: detail::expect<HeisenbergTriple>(spec, g); return;
    case K::MatrixZ:
    case K::MatrixQ: {
        const auto& m = detail::expect<ExactMatrix>(spec, g);
        if (m.dim() != spec.size())
            detail::mismatch(spec, g);
        if (spec.kind() == K::MatrixZ && !m.is_integral())
            throw Error("element-group-mismatch", "matrix " + m.str() + " has non-integer entries");
        const Rational d = determinant(m);
        if (d.is_zero())
            throw Error("singular-matrix", "matrix " + m.str() + " is singular");
        const bool pm1 = d == Rational(1) || d == Rational(-1);
        // Over Z only det = +-1 matrices are invertible.
        if ((spec.det() == DetConstraint::One && d != Rational(1)) ||
            ((spec.det() == DetConstraint::PlusMinusOne || spec.kind() == K::MatrixZ) && !pm1))
            throw Error("determinant-constraint",
                        "matrix " + m.str() + " has determinant " + d.str() + ", not allowed in " + spec.str());
        return;
    }
    case K::Product: {
        const auto& p = detail::expect<ElementPair>(spec, g);
        check_element(spec.left(), *p.left);
        check_element(spec.right(), *p.right);
        return;
    }
    }
}

inline GroupElement group_mul(const GroupSpec& spec, const GroupElement& g, const GroupElement& h)
{
    using K = GroupSpec::Kind;
    switch (spec.kind()) {
    case K::Free: return detail::expect<ReducedWord>(spec, g) * detail::expect<ReducedWord>(spec, h);
    case K::FreeAbelian: {
        const auto& a = detail::expect<IntVector>(spec, g);
        const auto& b = detail::expect<IntVector>(spec, h);
        if (a.coords.size() != b.coords.size())
            detail::mismatch(spec, h);
        IntVector out = a;
        for (std::size_t i = 0; i < out.coords.size(); ++i)
            out.coords[i] += b.coords[i];
        return out;
    }
    case K::PositiveRationals: return detail::expect<Rational>(spec, g) * detail::expect<Rational>(spec, h);
    case K::MatrixZ:
    case K::MatrixQ: return detail::expect<ExactMatrix>(spec, g) * detail::expect<ExactMatrix>(spec, h);
    case K::Heisenberg: return detail::expect<HeisenbergTriple>(spec, g) * detail::expect<HeisenbergTriple>(spec, h);
    case K::Product: {
        const auto& a = detail::expect<ElementPair>(spec, g);
        const auto& b = detail::expect<ElementPair>(spec, h);
        return GroupElement::pair(group_mul(spec.left(), *a.left, *b.left),
                                  group_mul(spec.right(), *a.right, *b.right));
    }
    }
    throw Error("invalid-group", "unknown group kind");
}

inline GroupElement group_inverse(const GroupSpec& spec, const GroupElement& g)
{
    using K = GroupSpec::Kind;
    switch (spec.kind()) {
    case K::Free: return detail::expect<ReducedWord>(spec, g).inverse();
    case K::FreeAbelian: {
        IntVector out = detail::expect<IntVector>(spec, g);
        for (auto& c : out.coords)
            c = -c;
        return out;
    }
    case K::PositiveRationals: {
        const auto& r = detail::expect<Rational>(spec, g);
        if (r.sign() <= 0)
            throw Error("not-positive", "cannot invert " + r.str() + " in qplus");
        return r.reciprocal();
    }
    case K::MatrixZ:
    case K::MatrixQ: return inverse(detail::expect<ExactMatrix>(spec, g));
    case K::Heisenberg: return inverse(detail::expect<HeisenbergTriple>(spec, g));
    case K::Product: {
        const auto& p = detail::expect<ElementPair>(spec, g);
        return GroupElement::pair(group_inverse(spec.left(), *p.left), group_inverse(spec.right(), *p.right));
    }
    }
    throw Error("invalid-group", "unknown group kind");
}

inline bool is_identity(const GroupSpec& spec, const GroupElement& g)
{
    using K = GroupSpec::Kind;
    switch (spec.kind()) {
    case K::Free: return detail::expect<ReducedWord>(spec, g).empty();
    case K::FreeAbelian: return detail::expect<IntVector>(spec, g).is_zero();
    case K::PositiveRationals: return detail::expect<Rational>(spec, g).is_one();
    case K::MatrixZ:
    case K::MatrixQ: return detail::expect<ExactMatrix>(spec, g).is_identity();
    case K::Heisenberg: return detail::expect<HeisenbergTriple>(spec, g).is_identity();
    case K::Product: {
        const auto& p = detail::expect<ElementPair>(spec, g);
        return is_identity(spec.left(), *p.left) && is_identity(spec.right(), *p.right);
    }
    }
    return false;
}

/// Product of a sequence of elements, left to right.
inline GroupElement evaluate(const GroupSpec& spec, const std::vector<GroupElement>& factors)
{
    GroupElement acc = identity(spec);
    for (const auto& f : factors)
        acc = group_mul(spec, acc, f);
    return acc;
}

// ---------------------------------------------------------------------------
// Parsing

namespace detail {

class Cursor
{
public:
    explicit Cursor(std::string_view text) : text_(text) {}

    bool done() const { return pos_ >= text_.size(); }
    char peek() const { return done() ? '\0' : text_[pos_]; }
    std::size_t pos() const { return pos_; }
    std::string_view text() const { return text_; }

    void skip_space()
    {
        while (!done() && (text_[pos_] == ' ' || text_[pos_] == '\t'))
            ++pos_;
    }

    bool consume(char c)
    {
        skip_space();
        if (peek() != c)
            return false;
        ++pos_;
        return true;
    }

    void expect(char c)
    {
        if (!consume(c))
            fail(std::string("expected '") + c + "'");
    }

    bool consume_word(std::string_view w)
    {
        skip_space();
        if (text_.substr(pos_, w.size()) != w)
            return false;
        pos_ += w.size();
        return true;
    }

    /// Characters up to (not including) any of `stops`, trimmed.
    std::string_view take_until(std::string_view stops)
    {
        skip_space();
        const std::size_t start = pos_;
        while (!done() && stops.find(text_[pos_]) == std::string_view::npos)
            ++pos_;
        std::string_view out = text_.substr(start, pos_ - start);
        while (!out.empty() && (out.back() == ' ' || out.back() == '\t'))
            out.remove_suffix(1);
        return out;
    }

    std::size_t take_unsigned()
    {
        skip_space();
        const std::size_t start = pos_;
        while (!done() && text_[pos_] >= '0' && text_[pos_] <= '9')
            ++pos_;
        if (start == pos_)
            fail("expected a number");
        return std::stoul(std::string(text_.substr(start, pos_ - start)));
    }

    [[noreturn]] void fail(const std::string& what) const
    {
        throw Error("syntax", what + " at column " + std::to_string(pos_ + 1) + " in '" + std::string(text_) + "'");
    }

private:
    std::string_view text_;
    std::size_t pos_ = 0;
};

inline GroupSpec parse_spec(Cursor& c)
{
    c.skip_space();
    if (c.consume_word("prod(") || c.consume_word("direct-product(")) {
        GroupSpec a = parse_spec(c);
        c.expect(',');
        GroupSpec b = parse_spec(c);
        c.expect(')');
        return GroupSpec::product(a, b);
    }
    auto det_suffix = [&]() {
        if (c.consume_word(":det1") || c.consume_word("det=1"))
            return DetConstraint::One;
        if (c.consume_word(":detpm1") || c.consume_word("det=pm1") || c.consume_word("det=±1"))
            return DetConstraint::PlusMinusOne;
        c.consume_word("det=any");
        return DetConstraint::AnyInvertible;
    };
    if (c.consume_word("free-abelian")) {
        return GroupSpec::free_abelian(c.take_unsigned());
    }
    if (c.consume_word("free:") || c.consume_word("free")) {
        return GroupSpec::free(c.take_unsigned());
    }
    if (c.consume_word("zk:"))
        return GroupSpec::free_abelian(c.take_unsigned());
    if (c.consume_word("qplus") || c.consume_word("positive-rationals"))
        return GroupSpec::positive_rationals();
    if (c.consume_word("heisenberg") || c.consume_word("heis"))
        return GroupSpec::heisenberg();
    for (auto [word, kind] : {std::pair{"matz:", GroupSpec::Kind::MatrixZ}, std::pair{"matq:", GroupSpec::Kind::MatrixQ},
                              std::pair{"matrix-Z", GroupSpec::Kind::MatrixZ}, std::pair{"matrix-Q", GroupSpec::Kind::MatrixQ}}) {
        if (c.consume_word(word)) {
            const std::size_t dim = c.take_unsigned();
            const DetConstraint det = det_suffix();
            return kind == GroupSpec::Kind::MatrixZ ? GroupSpec::matrix_z(dim, det) : GroupSpec::matrix_q(dim, det);
        }
    }
    c.fail("unknown group spec");
}

inline Rational parse_rational(Cursor& c)
{
    std::string_view tok = c.take_until(",]|)");
    if (tok.empty())
        c.fail("expected a rational");
    return Rational::parse(tok);
}

inline GroupElement parse_element(const GroupSpec& spec, Cursor& c)
{
    using K = GroupSpec::Kind;
    c.skip_space();
    switch (spec.kind()) {
    case K::Free: {
        std::string_view body = c.take_until("|)");
        if (body == "e")
            return ReducedWord{};
        std::vector<Letter> letters;
        std::size_t i = 0;
        while (i < body.size()) {
            while (i < body.size() && body[i] == ' ')
                ++i;
            if (i == body.size())
                break;
            std::size_t j = i;
            while (j < body.size() && body[j] != ' ')
                ++j;
            std::string_view tok = body.substr(i, j - i);
            int sign = 1;
            if (tok.size() > 3 && tok.substr(tok.size() - 3) == "^-1") {
                sign = -1;
                tok.remove_suffix(3);
            }
            if (tok.size() < 2 || tok[0] != 'g' || tok.find_first_not_of("0123456789", 1) != std::string_view::npos)
                c.fail("bad free-group token '" + std::string(body.substr(i, j - i)) + "'");
            letters.push_back({std::stoul(std::string(tok.substr(1))), sign});
            i = j;
        }
        if (letters.empty())
            c.fail("empty free word (write 'e' for the identity)");
        return ReducedWord::reduce(letters);
    }
    case K::FreeAbelian: {
        c.expect('[');
        IntVector v;
        if (!c.consume(']')) {
            do {
                const Rational r = parse_rational(c);
                if (!r.is_integer())
                    c.fail("vector coordinate must be an integer");
                v.coords.push_back(r.numerator());
            } while (c.consume(','));
            c.expect(']');
        }
        return v;
    }
    case K::PositiveRationals: {
        return Rational::parse(c.take_until("|)"));
    }
    case K::MatrixZ:
    case K::MatrixQ: {
        std::vector<std::vector<Rational>> rows;
        c.expect('[');
        do {
            c.expect('[');
            std::vector<Rational> row;
            do {
                row.push_back(parse_rational(c));
            } while (c.consume(','));
            c.expect(']');
            rows.push_back(std::move(row));
        } while (c.consume(','));
        c.expect(']');
        for (const auto& row : rows)
            if (row.size() != rows.size())
                c.fail("matrix is not square");
        return ExactMatrix::from_rows(rows);
    }
    case K::Heisenberg: {
        if (!c.consume_word("H("))
            c.fail("expected H(x,y,z)");
        std::int64_t xyz[3];
        for (int i = 0; i < 3; ++i) {
            const Rational r = parse_rational(c);
            if (!r.is_integer() || !r.numerator().fits_slong_p())
                c.fail("heisenberg coordinate must be a machine integer");
            xyz[i] = r.numerator().get_si();
            if (i < 2)
                c.expect(',');
        }
        c.expect(')');
        return HeisenbergTriple{xyz[0], xyz[1], xyz[2]};
    }
    case K::Product: {
        c.expect('(');
        GroupElement a = parse_element(spec.left(), c);
        c.expect('|');
        GroupElement b = parse_element(spec.right(), c);
        c.expect(')');
        return GroupElement::pair(std::move(a), std::move(b));
    }
    }
    c.fail("unknown group kind");
}

} // namespace detail

inline GroupSpec GroupSpec::parse(std::string_view text)
{
    detail::Cursor c(text);
    GroupSpec s = detail::parse_spec(c);
    c.skip_space();
    if (!c.done())
        c.fail("trailing characters after group spec");
    return s;
}

/// Parses the canonical serialization of an element of `spec` and validates
/// it (including the determinant constraint).
inline GroupElement parse_element(const GroupSpec& spec, std::string_view text)
{
    detail::Cursor c(text);
    GroupElement g = detail::parse_element(spec, c);
    c.skip_space();
    if (!c.done())
        c.fail("trailing characters after element");
    check_element(spec, g);
    return g;
}

} // namespace gramata
