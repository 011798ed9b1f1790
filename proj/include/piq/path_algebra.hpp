#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "piq/quiver.hpp"

namespace piq {

using Rational = mpq_class;

/// Coefficient field: the rationals, or F_p for a prime p < 2^31.
class Field {
public:
    static Field rationals() { return Field(0); }
    /// Throws std::invalid_argument if p is not a prime below 2^31.
    static Field prime(std::uint64_t p);

    std::uint64_t characteristic() const { return p_; }
    bool is_rational() const { return p_ == 0; }
    std::string name() const;

    /// Canonical representative: identity over Q, residue in [0, p) over F_p.
    /// Throws std::domain_error when a denominator vanishes mod p.
    Rational reduce(const Rational& x) const;

    bool operator==(const Field&) const = default;

private:
    explicit Field(std::uint64_t p) : p_(p) {}
    std::uint64_t p_;
};

/// p = 0 (monomial) or p = q (parallel binomial).
struct Relation {
    enum class Kind { monomial, parallel_binomial };

    Kind kind;
    Path lhs;
    std::optional<Path> rhs;

    static Relation monomial(Path p) { return {Kind::monomial, std::move(p), std::nullopt}; }
    static Relation binomial(Path p, Path q) { return {Kind::parallel_binomial, std::move(p), std::move(q)}; }

    bool operator==(const Relation&) const = default;
};

/// Thrown when a product would leave the truncation window [0, L].
class TruncationError : public std::runtime_error {
public:
    TruncationError(Path left, Path right, std::size_t length, std::size_t limit);

    const Path& left() const { return left_; }
    const Path& right() const { return right_; }

private:
    Path left_;
    Path right_;
};

/// A finite linear combination of basis paths; zero coefficients are never stored.
class Element {
public:
    using Terms = std::map<Path, Rational>;

    Element() = default;

    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }
    Rational coefficient(const Path& p) const;
    /// The single basis path of a one-term element with coefficient 1.
    std::optional<Path> as_basis_path() const;

    bool operator==(const Element&) const = default;

private:
    friend class AlgebraHandle;
    Terms terms_;
};

namespace detail {
class RewriteSystem;
}

/**
 * A path algebra FQ, optionally modulo monomial and parallel-binomial
 * relations, with exact coefficients and a truncation length L. Products
 * whose length exceeds L raise TruncationError instead of being dropped.
 *
 * Binomial relations are oriented toward the lexicographically smaller
 * side; construction rejects rewriting systems that are not confluent.
 */
class AlgebraHandle {
public:
    /// Throws std::invalid_argument for malformed relations or a
    /// non-confluent rewriting system.
    AlgebraHandle(Quiver quiver, std::vector<Relation> relations, std::size_t truncation,
                  Field field = Field::rationals());

    const Quiver& quiver() const { return quiver_; }
    const std::vector<Relation>& relations() const { return relations_; }
    std::size_t truncation() const { return truncation_; }
    const Field& field() const { return field_; }

    /// Zero (nullopt) if a monomial relation occurs; otherwise the
    /// lexicographically minimal representative. Throws TruncationError
    /// when the path is longer than L.
    std::optional<Path> normal_form(const Path& p) const;
    bool is_basis_path(const Path& p) const;

    /// Product of basis paths, reduced; nullopt for zero.
    std::optional<Path> multiply(const Path& p, const Path& q) const;
    Element multiply(const Element& x, const Element& y) const;

    Element add(const Element& x, const Element& y) const;
    Element subtract(const Element& x, const Element& y) const;
    Element scale(const Element& x, const Rational& c) const;
    /// x += c * p, where p is a basis path.
    void accumulate(Element& x, const Path& p, const Rational& c) const;

    Element basis_element(const Path& p) const;
    Element unit() const;

    /// Basis paths of length <= max_len, ordered by (length, arrow ids).
    /// Throws std::invalid_argument when max_len > L.
    std::vector<Path> standard_basis(std::size_t max_len) const;
    /// Basis paths from i to j of length exactly d.
    std::vector<Path> graded_component(Vertex i, Vertex j, std::size_t d) const;

    /// True when no basis path has length max_len + 1, i.e. the basis up to
    /// max_len is the whole (finite) basis.
    bool basis_exhausted_at(std::size_t max_len) const;

    std::string to_string(const Path& p) const { return piq::to_string(quiver_, p); }
    std::string to_string(const Element& x) const;

private:
    void check_relations() const;
    void dfs_basis(std::size_t max_len, std::vector<Path>& out, std::optional<Vertex> from) const;

    Quiver quiver_;
    std::vector<Relation> relations_;
    std::size_t truncation_;
    Field field_;
    std::shared_ptr<const detail::RewriteSystem> rewriter_;
};

}  // namespace piq
