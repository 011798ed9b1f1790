#pragma once

#include <chrono>
#include <cstdint>
#include <variant>
#include <vector>

#include "piq/ncpoly.hpp"
#include "piq/path_algebra.hpp"

namespace piq {

namespace verdict {

/// f vanished on every tuple examined. `complete` means the examined tuples
/// span the whole algebra, so f is a genuine identity; `probabilistic` marks
/// randomized runs.
struct VerifiedUpTo {
    std::size_t max_len;
    bool complete = false;
    bool probabilistic = false;
};

/// An exact non-zero evaluation.
struct Counterexample {
    std::vector<Element> tuple;  // tuple[i] is substituted for x_(i+1)
    Element value;
};

/// No counterexample, but some tuples could not be evaluated below the truncation length.
struct Inconclusive {
    std::uint64_t truncation_hits;
};

}  // namespace verdict

using Verdict = std::variant<verdict::VerifiedUpTo, verdict::Counterexample, verdict::Inconclusive>;

struct VerificationReport {
    Verdict verdict;
    std::uint64_t tuples_checked = 0;
    std::uint64_t tuples_skipped_overflow = 0;
    std::chrono::duration<double> elapsed{};
};

enum class TupleStrategy {
    /// Only tuples admitting an ordering with non-zero product.
    endpoint_chains,
    /// Every tuple of basis paths, serially: the slow reference.
    naive_scan,
};

struct VerifyOptions {
    int threads = 0;  // 0: OpenMP default
    TupleStrategy strategy = TupleStrategy::endpoint_chains;
};

/**
 * Checks a multilinear f on tuples of basis paths of length <= max_len.
 * Linearity in each slot makes basis tuples sufficient. Tuples with a
 * repeated entry are skipped when f is alternating in all its variables.
 * The reported counterexample is the lexicographically smallest failing
 * tuple (by basis order), independent of the thread count.
 *
 * Throws std::invalid_argument when f is not multilinear (use
 * verify_identity_randomized) or max_len exceeds the truncation length.
 */
VerificationReport verify_multilinear_identity(const AlgebraHandle& algebra, const NcPoly& f, std::size_t max_len,
                                               const VerifyOptions& options = {});

struct RandomOptions {
    int threads = 0;
    /// Only basis paths of length >= min_len are drawn (1 samples the radical).
    std::size_t min_len = 0;
};

/**
 * Evaluates f on `trials` random elements. Each element is a sum of 1 to 3
 * basis paths of length <= max_len with coefficients in {-2, -1, 1, 2}.
 * Trial t draws from std::mt19937_64 seeded with derive_seed(seed, t) and
 * maps a draw r to r % n, so runs are reproducible across platforms and
 * thread counts.
 */
VerificationReport verify_identity_randomized(const AlgebraHandle& algebra, const NcPoly& f, std::uint64_t trials,
                                              std::size_t max_len, std::uint64_t seed,
                                              const RandomOptions& options = {});

/// splitmix64 applied to seed + (index + 1) * 0x9E3779B97F4A7C15.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

/**
 * The multilinear identities of degree d in x1 ... xd that vanish on all
 * basis tuples of length <= max_len. Basis polynomials are in reduced
 * echelon form over the permutation words (lexicographic word order):
 * each has coefficient 1 on its own free word and 0 on the others'.
 */
struct IdentitySpace {
    std::size_t degree = 0;
    std::vector<NcPoly> basis;
    std::vector<Word> free_words;  // free_words[k] leads basis[k]
    std::size_t rows = 0;          // distinct evaluation rows used
    Field field = Field::rationals();

    std::size_t dimension() const { return basis.size(); }
    /// Membership by coordinates on the free words.
    bool contains(const NcPoly& f) const;
};

/// Throws std::invalid_argument unless 1 <= d <= 6 and max_len <= L.
IdentitySpace find_multilinear_identities(const AlgebraHandle& algebra, std::size_t d, std::size_t max_len,
                                          int threads = 0);

/**
 * Random tuples of basis paths (length <= max_len) that admit a non-zero
 * ordered product: a random chain, pairwise distinct whenever such a chain
 * is found, then shuffled. Draw `index` uses std::mt19937_64 seeded with
 * derive_seed(seed, index). The algebra must outlive the sampler.
 */
class ChainSampler {
public:
    ChainSampler(const AlgebraHandle& algebra, std::size_t max_len);
    std::vector<Path> draw(std::size_t width, std::uint64_t seed, std::uint64_t index) const;

private:
    const AlgebraHandle& algebra_;
    std::vector<Path> paths_;
    std::vector<std::vector<std::size_t>> from_;
};

struct GluedOptions {
    bool with_relation = true;
    /// Degree D of each standard factor; 0 means 2 max(n, m).
    std::size_t factor_degree = 0;
    int threads = 0;
    Field field = Field::rationals();
};

/**
 * Samples St_D(x1..xD) St_D(x(D+1)..x(2D)) on the glued-cycle algebra,
 * one ChainSampler tuple of width 2D per sample; each factor is evaluated on its
 * Swan quiver, never by expanding St_D. Truncation is 2D * max_len, so
 * no product overflows.
 */
VerificationReport verify_glued_cycle_identity(std::size_t n, std::size_t m, std::uint64_t samples,
                                               std::size_t max_len, std::uint64_t seed,
                                               const GluedOptions& options = {});

}  // namespace piq
