#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "piq/quiver.hpp"

namespace piq::detail {

/**
 * String rewriting over arrow ids. A rule either kills a word containing its
 * left side (monomial relation) or replaces the left side by a same-length,
 * lexicographically smaller word (oriented parallel binomial). Occurrences
 * are found with an Aho-Corasick automaton over all left sides.
 */
class RewriteSystem {
public:
    struct Rule {
        std::vector<Arrow> lhs;
        std::optional<std::vector<Arrow>> rhs;  // nullopt: the word is zero
    };

    struct Match {
        std::size_t begin;
        std::size_t rule;
    };

    RewriteSystem(std::size_t alphabet, std::vector<Rule> rules);

    bool empty() const { return rules_.empty(); }
    bool has_binomials() const;
    const std::vector<Rule>& rules() const { return rules_; }

    int start_state() const { return 0; }
    int step(int state, Arrow a) const { return static_cast<int>(goto_[state * alphabet_ + a]); }
    /// Some left side ends at the position that led to this state.
    bool accepting(int state) const { return !outputs_[state].empty(); }

    /// The occurrence ending leftmost (smallest rule id on ties).
    std::optional<Match> first_match(std::span<const Arrow> word) const;
    /// Every occurrence of every left side.
    std::vector<Match> all_matches(std::span<const Arrow> word) const;

    /// Applies leftmost rewrites until irreducible; nullopt means zero.
    std::optional<std::vector<Arrow>> reduce(std::vector<Arrow> word) const;

    /// Exhaustively rewrites every path of q of length <= max_len along all
    /// rewrite orders; returns a description of the first path with two
    /// distinct irreducible descendants, or nullopt when confluent.
    std::optional<std::string> find_non_confluent(const Quiver& q, std::size_t max_len) const;

    /// Length up to which critical overlaps can occur.
    std::size_t overlap_window() const;

private:
    std::size_t alphabet_;
    std::vector<Rule> rules_;
    std::vector<std::uint32_t> goto_;
    std::vector<std::vector<std::size_t>> outputs_;  // rule ids ending at a state, sorted
};

}  // namespace piq::detail
