#pragma once

#include <map>
#include <memory>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "piq/path_algebra.hpp"

namespace piq {

/// Variable indices are 1-based: x1, x2, ...
using Variable = std::uint32_t;
using Word = std::vector<Variable>;

/// Words order by length, then lexicographically.
struct WordLess {
    bool operator()(const Word& a, const Word& b) const
    {
        if (a.size() != b.size())
            return a.size() < b.size();
        return a < b;
    }
};

/// A non-commutative polynomial with rational coefficients, stored expanded.
class NcPoly {
public:
    using Terms = std::map<Word, Rational, WordLess>;

    NcPoly() = default;
    static NcPoly variable(Variable i);
    static NcPoly constant(const Rational& c);
    static NcPoly monomial(Word w, const Rational& c = 1);

    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }
    Rational coefficient(const Word& w) const;
    std::set<Variable> variables() const;
    std::size_t degree() const;

    NcPoly& operator+=(const NcPoly& other);
    NcPoly& operator-=(const NcPoly& other);
    NcPoly& operator*=(const NcPoly& other);
    NcPoly& operator*=(const Rational& c);
    NcPoly operator-() const;

    friend NcPoly operator+(NcPoly a, const NcPoly& b) { return a += b; }
    friend NcPoly operator-(NcPoly a, const NcPoly& b) { return a -= b; }
    friend NcPoly operator*(const NcPoly& a, const NcPoly& b);
    friend NcPoly operator*(NcPoly a, const Rational& c) { return a *= c; }

    bool operator==(const NcPoly&) const = default;

    /// Adds c to the coefficient of w.
    void add_term(const Word& w, const Rational& c);

private:
    Terms terms_;
};

/// Sum over S_n of sgn(s) x_s(1) ... x_s(n). Throws std::invalid_argument for n < 1.
NcPoly standard_poly(int n);
/// [x1,x2][x3,x4]...[x(2n-1),x(2n)]. Throws std::invalid_argument for n < 1.
NcPoly u_poly(int n);
NcPoly commutator(const NcPoly& f, const NcPoly& g);

/// Renames x_i to x_(i + offset).
NcPoly shift_variables(const NcPoly& f, Variable offset);
/// Formal substitution x_from := x_to.
NcPoly identify_variables(const NcPoly& f, Variable from, Variable to);

bool is_multilinear(const NcPoly& f);
/// Whether identifying any two of `vars` gives the zero polynomial.
/// Throws std::invalid_argument when f is not multilinear in `vars`.
bool is_alternating_in(const NcPoly& f, const std::set<Variable>& vars);

/// Rendering such as `x1*x2 - x2*x1`; zero renders as `0`.
std::string to_string(const NcPoly& f);

/**
 * Parses polynomial expressions:
 *
 *     expr    := term (('+' | '-') term)*
 *     term    := ['-'] factor ('*'? factor)*
 *     factor  := atom ['^' int]
 *     atom    := rational | 'x' int | 'St(' int ')' | 'u(' int ')'
 *              | '(' expr ')' | '[' expr ',' expr ']'
 *
 * Throws std::invalid_argument carrying the column of the error.
 */
NcPoly parse_ncpoly(std::string_view text);

/**
 * Evaluates a fixed polynomial many times. Words are arranged in a prefix
 * trie, so shared prefixes are multiplied once and a vanishing prefix
 * prunes every word below it.
 */
class PolyEvaluator {
public:
    explicit PolyEvaluator(const NcPoly& f);
    ~PolyEvaluator();
    PolyEvaluator(PolyEvaluator&&) noexcept;
    PolyEvaluator& operator=(PolyEvaluator&&) noexcept;

    /// Highest variable index used; `args` must have at least this many entries.
    Variable arity() const { return arity_; }

    /// x_i := args[i - 1]. Throws TruncationError when a product leaves [0, L].
    Element operator()(const AlgebraHandle& algebra, std::span<const Element> args) const;
    /// Same, for arguments that are basis paths.
    Element operator()(const AlgebraHandle& algebra, std::span<const Path> args) const;

private:
    struct Trie;
    std::unique_ptr<Trie> trie_;
    Variable arity_ = 0;
};

Element evaluate(const NcPoly& f, const AlgebraHandle& algebra, std::span<const Element> args);
Element evaluate(const NcPoly& f, const AlgebraHandle& algebra, const std::map<Variable, Element>& assignment);

}  // namespace piq
