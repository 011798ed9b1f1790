#include "piq/identity.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <stdexcept>

#include <omp.h>

#include "linalg.hpp"
#include "piq/classifier.hpp"
#include "piq/swan.hpp"

namespace piq {

namespace {

using Clock = std::chrono::steady_clock;
using Index = std::uint32_t;
using Assignment = std::vector<Index>;

int thread_count(int threads)
{
    return threads > 0 ? threads : omp_get_max_threads();
}

struct Basis {
    std::vector<Path> paths;
    std::vector<std::vector<Index>> from;  // basis indices by source vertex

    Basis(const AlgebraHandle& algebra, std::size_t max_len, std::size_t min_len = 0)
        : from(algebra.quiver().vertex_count())
    {
        for (auto& p : algebra.standard_basis(max_len))
            if (p.length() >= min_len) {
                from[p.source()].push_back(static_cast<Index>(paths.size()));
                paths.push_back(std::move(p));
            }
    }
};

/**
 * Visits every sequence of d basis indices whose ordered product is
 * non-zero, in lexicographic order. With `distinct`, entries are pairwise
 * different. A product beyond the truncation length is reported to
 * `overflow` and its branch dropped.
 */
void for_each_chain(const AlgebraHandle& algebra, const Basis& basis, std::size_t d, bool distinct,
                    const std::function<void(const Assignment&)>& visit,
                    const std::function<void(const TruncationError&)>& overflow)
{
    if (d == 0) {
        visit({});
        return;
    }
    Assignment chain;
    std::vector<char> used(basis.paths.size(), 0);
    std::vector<Path> prefix;
    auto extend = [&](auto&& self, std::span<const Index> candidates) -> void {
        for (Index k : candidates) {
            if (distinct && used[k])
                continue;
            std::optional<Path> next;
            if (prefix.empty()) {
                next = basis.paths[k];
            } else {
                try {
                    next = algebra.multiply(prefix.back(), basis.paths[k]);
                } catch (const TruncationError& e) {
                    overflow(e);
                    continue;
                }
            }
            if (!next)
                continue;
            chain.push_back(k);
            if (chain.size() == d) {
                visit(chain);
            } else {
                used[k] = 1;
                prefix.push_back(*next);
                self(self, basis.from[next->target()]);
                prefix.pop_back();
                used[k] = 0;
            }
            chain.pop_back();
        }
    };
    std::vector<Index> all(basis.paths.size());
    for (Index k = 0; k < all.size(); ++k)
        all[k] = k;
    extend(extend, all);
}

struct ScanResult {
    std::optional<std::uint64_t> failing;  // smallest failing index
    Element value;
    std::uint64_t checked = 0;
    std::uint64_t overflow = 0;
};

/**
 * Runs eval(i) for i < count in parallel blocks of fixed size, stopping
 * after the first block with a failure. The result does not depend on the
 * thread count: blocks are independent and the smallest failure wins.
 */
template <class Eval>
ScanResult scan_blocks(std::uint64_t count, int threads, Eval eval)
{
    constexpr std::uint64_t block = 4096;
    ScanResult out;
    for (std::uint64_t begin = 0; begin < count && !out.failing; begin += block) {
        const std::uint64_t end = std::min(count, begin + block);
        std::uint64_t overflow = 0;
        std::uint64_t best = std::numeric_limits<std::uint64_t>::max();
        Element best_value;
#pragma omp parallel for schedule(dynamic, 16) num_threads(thread_count(threads)) reduction(+ : overflow)
        for (std::uint64_t i = begin; i < end; ++i) {
            try {
                Element value = eval(i);
                if (!value.is_zero()) {
#pragma omp critical(piq_scan_best)
                    if (i < best) {
                        best = i;
                        best_value = std::move(value);
                    }
                }
            } catch (const TruncationError&) {
                ++overflow;
            }
        }
        out.checked += end - begin - overflow;
        out.overflow += overflow;
        if (best != std::numeric_limits<std::uint64_t>::max()) {
            out.failing = best;
            out.value = std::move(best_value);
        }
    }
    return out;
}

std::vector<Element> as_elements(const AlgebraHandle& algebra, std::span<const Path> paths)
{
    std::vector<Element> out;
    for (const auto& p : paths)
        out.push_back(algebra.basis_element(p));
    return out;
}

Verdict finish(const AlgebraHandle& algebra, std::size_t max_len, bool probabilistic, std::uint64_t overflow)
{
    if (overflow > 0)
        return verdict::Inconclusive{overflow};
    bool complete = !probabilistic && algebra.basis_exhausted_at(max_len);
    return verdict::VerifiedUpTo{max_len, complete, probabilistic};
}

// Arguments x_1 ... x_arity for an assignment of the variables `vars`.
std::vector<Path> arguments(const Basis& basis, const std::vector<Variable>& vars, Variable arity,
                            const Assignment& a)
{
    std::vector<Path> args(arity, Path::lazy(0));
    for (std::size_t k = 0; k < vars.size(); ++k)
        args[vars[k] - 1] = basis.paths[a[k]];
    return args;
}

// Counterexample tuple over x_1 ... x_arity; unused variables get 0.
std::vector<Element> counterexample_tuple(const AlgebraHandle& algebra, const Basis& basis,
                                          const std::vector<Variable>& vars, Variable arity, const Assignment& a)
{
    std::vector<Element> out(arity);
    for (std::size_t k = 0; k < vars.size(); ++k)
        out[vars[k] - 1] = algebra.basis_element(basis.paths[a[k]]);
    return out;
}

VerificationReport naive_scan(const AlgebraHandle& algebra, const NcPoly& f, const Basis& basis,
                              const std::vector<Variable>& vars, Variable arity, std::size_t max_len)
{
    VerificationReport report;
    PolyEvaluator eval(f);
    const std::size_t d = vars.size();
    const std::size_t b = basis.paths.size();
    Assignment a(d, 0);
    if (b == 0 && d > 0) {
        report.verdict = finish(algebra, max_len, false, 0);
        return report;
    }
    while (true) {
        try {
            auto args = arguments(basis, vars, arity, a);
            Element value = eval(algebra, std::span<const Path>(args));
            ++report.tuples_checked;
            if (!value.is_zero()) {
                report.verdict =
                    verdict::Counterexample{counterexample_tuple(algebra, basis, vars, arity, a), std::move(value)};
                return report;
            }
        } catch (const TruncationError&) {
            ++report.tuples_skipped_overflow;
        }
        // odometer, last slot fastest
        std::size_t k = d;
        while (k > 0 && ++a[k - 1] == b)
            a[--k] = 0;
        if (k == 0)
            break;
    }
    report.verdict = finish(algebra, max_len, false, report.tuples_skipped_overflow);
    return report;
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index)
{
    std::uint64_t z = seed + (index + 1) * 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

VerificationReport verify_multilinear_identity(const AlgebraHandle& algebra, const NcPoly& f, std::size_t max_len,
                                               const VerifyOptions& options)
{
    if (!is_multilinear(f))
        throw std::invalid_argument("polynomial is not multilinear; use verify_identity_randomized");
    if (max_len > algebra.truncation())
        throw std::invalid_argument("max_len " + std::to_string(max_len) + " exceeds truncation length " +
                                    std::to_string(algebra.truncation()));
    const auto start = Clock::now();
    const auto var_set = f.variables();
    const std::vector<Variable> vars(var_set.begin(), var_set.end());
    const Variable arity = vars.empty() ? 0 : vars.back();
    const Basis basis(algebra, max_len);

    VerificationReport report;
    if (options.strategy == TupleStrategy::naive_scan) {
        report = naive_scan(algebra, f, basis, vars, arity, max_len);
        report.elapsed = Clock::now() - start;
        return report;
    }

    const bool alternating = vars.size() >= 2 && is_alternating_in(f, var_set);
    std::map<Variable, std::size_t> slot;
    for (std::size_t k = 0; k < vars.size(); ++k)
        slot[vars[k]] = k;

    // An assignment can only be non-zero when some word of f multiplies its
    // entries in an order with non-zero product; such an order is a chain.
    // For alternating f the value depends on the entry set up to sign.
    std::vector<Assignment> tuples;
    std::uint64_t overflow = 0;
    for_each_chain(
        algebra, basis, vars.size(), alternating,
        [&](const Assignment& chain) {
            if (alternating) {
                Assignment a = chain;
                std::sort(a.begin(), a.end());
                tuples.push_back(std::move(a));
                return;
            }
            for (const auto& [word, c] : f.terms()) {
                Assignment a(vars.size());
                for (std::size_t t = 0; t < word.size(); ++t)
                    a[slot.at(word[t])] = chain[t];
                tuples.push_back(std::move(a));
            }
        },
        [&](const TruncationError&) { ++overflow; });
    std::sort(tuples.begin(), tuples.end());
    tuples.erase(std::unique(tuples.begin(), tuples.end()), tuples.end());

    const PolyEvaluator eval(f);
    auto scan = scan_blocks(tuples.size(), options.threads, [&](std::uint64_t i) {
        auto args = arguments(basis, vars, arity, tuples[i]);
        return eval(algebra, std::span<const Path>(args));
    });

    report.tuples_checked = scan.checked;
    report.tuples_skipped_overflow = scan.overflow + overflow;
    if (scan.failing)
        report.verdict = verdict::Counterexample{
            counterexample_tuple(algebra, basis, vars, arity, tuples[*scan.failing]), std::move(scan.value)};
    else
        report.verdict = finish(algebra, max_len, false, report.tuples_skipped_overflow);
    report.elapsed = Clock::now() - start;
    return report;
}

VerificationReport verify_identity_randomized(const AlgebraHandle& algebra, const NcPoly& f, std::uint64_t trials,
                                              std::size_t max_len, std::uint64_t seed, const RandomOptions& options)
{
    if (max_len > algebra.truncation())
        throw std::invalid_argument("max_len " + std::to_string(max_len) + " exceeds truncation length " +
                                    std::to_string(algebra.truncation()));
    const auto start = Clock::now();
    const Basis basis(algebra, max_len, options.min_len);
    if (basis.paths.empty())
        throw std::invalid_argument("no basis paths of length in [" + std::to_string(options.min_len) + ", " +
                                    std::to_string(max_len) + "]");
    const auto vars = f.variables();
    const Variable arity = vars.empty() ? 0 : *vars.rbegin();
    const PolyEvaluator eval(f);
    static constexpr int coefficients[] = {-2, -1, 1, 2};

    auto draw = [&](std::uint64_t trial) {
        std::mt19937_64 rng(derive_seed(seed, trial));
        std::vector<Element> args(arity);
        for (auto& x : args) {
            std::uint64_t terms = 1 + rng() % 3;
            for (std::uint64_t t = 0; t < terms; ++t) {
                const Path& p = basis.paths[rng() % basis.paths.size()];
                algebra.accumulate(x, p, coefficients[rng() % 4]);
            }
        }
        return args;
    };

    auto scan = scan_blocks(trials, options.threads, [&](std::uint64_t i) {
        auto args = draw(i);
        return eval(algebra, std::span<const Element>(args));
    });

    VerificationReport report;
    report.tuples_checked = scan.checked;
    report.tuples_skipped_overflow = scan.overflow;
    if (scan.failing)
        report.verdict = verdict::Counterexample{draw(*scan.failing), std::move(scan.value)};
    else
        report.verdict = finish(algebra, max_len, true, scan.overflow);
    report.elapsed = Clock::now() - start;
    return report;
}

bool IdentitySpace::contains(const NcPoly& f) const
{
    if (f.is_zero())
        return true;
    Word identity(degree);
    for (std::size_t i = 0; i < degree; ++i)
        identity[i] = static_cast<Variable>(i + 1);
    for (const auto& [w, c] : f.terms()) {
        Word sorted = w;
        std::sort(sorted.begin(), sorted.end());
        if (sorted != identity)
            return false;
    }
    NcPoly rest = f;
    for (std::size_t k = 0; k < basis.size(); ++k)
        rest -= basis[k] * f.coefficient(free_words[k]);
    return std::all_of(rest.terms().begin(), rest.terms().end(),
                       [&](const auto& term) { return field.reduce(term.second) == 0; });
}

IdentitySpace find_multilinear_identities(const AlgebraHandle& algebra, std::size_t d, std::size_t max_len,
                                          int threads)
{
    if (d < 1 || d > 6)
        throw std::invalid_argument("degree must lie in [1, 6], got " + std::to_string(d));
    if (max_len > algebra.truncation())
        throw std::invalid_argument("max_len " + std::to_string(max_len) + " exceeds truncation length " +
                                    std::to_string(algebra.truncation()));

    std::vector<Word> words;
    Word w(d);
    for (std::size_t i = 0; i < d; ++i)
        w[i] = static_cast<Variable>(i + 1);
    do
        words.push_back(w);
    while (std::next_permutation(w.begin(), w.end()));

    // Entry multisets that admit an ordering with non-zero product.
    const Basis basis(algebra, max_len);
    std::vector<Assignment> contents;
    for_each_chain(
        algebra, basis, d, false,
        [&](const Assignment& chain) {
            Assignment c = chain;
            std::sort(c.begin(), c.end());
            contents.push_back(std::move(c));
        },
        [](const TruncationError& e) { throw e; });
    std::sort(contents.begin(), contents.end());
    contents.erase(std::unique(contents.begin(), contents.end()), contents.end());

    // A row: one arrangement of a content into x1..xd, one target path r;
    // column w holds the coefficient of r in the product along w.
    using Row = std::vector<std::pair<std::uint32_t, long>>;
    std::vector<std::set<Row>> per_thread(static_cast<std::size_t>(thread_count(threads)));
#pragma omp parallel for schedule(dynamic) num_threads(thread_count(threads))
    for (std::size_t ci = 0; ci < contents.size(); ++ci) {
        auto& rows = per_thread[static_cast<std::size_t>(omp_get_thread_num())];
        Assignment b = contents[ci];
        do {
            std::map<Path, std::map<std::uint32_t, long>> by_target;
            for (std::uint32_t col = 0; col < words.size(); ++col) {
                std::optional<Path> prod = basis.paths[b[words[col][0] - 1]];
                for (std::size_t t = 1; t < d && prod; ++t)
                    prod = algebra.multiply(*prod, basis.paths[b[words[col][t] - 1]]);
                if (prod)
                    ++by_target[*prod][col];
            }
            for (const auto& [r, entries] : by_target)
                rows.insert(Row(entries.begin(), entries.end()));
        } while (std::next_permutation(b.begin(), b.end()));
    }
    std::set<Row> rows;
    for (auto& part : per_thread)
        rows.merge(part);

    detail::EchelonBasis echelon(words.size(), algebra.field());
    for (const auto& row : rows) {
        if (echelon.full())
            break;
        std::vector<Rational> dense(words.size(), 0);
        for (const auto& [col, c] : row)
            dense[col] = c;
        echelon.add(std::move(dense));
    }

    IdentitySpace space;
    space.degree = d;
    space.rows = rows.size();
    space.field = algebra.field();
    auto free = echelon.free_columns();
    auto kernel = echelon.kernel();
    for (std::size_t k = 0; k < kernel.size(); ++k) {
        NcPoly f;
        for (std::size_t col = 0; col < words.size(); ++col)
            if (kernel[k][col] != 0)
                f.add_term(words[col], kernel[k][col]);
        space.basis.push_back(std::move(f));
        space.free_words.push_back(words[free[k]]);
    }
    return space;
}

ChainSampler::ChainSampler(const AlgebraHandle& algebra, std::size_t max_len)
    : algebra_(algebra), from_(algebra.quiver().vertex_count())
{
    for (auto& p : algebra.standard_basis(max_len)) {
        from_[p.source()].push_back(paths_.size());
        paths_.push_back(std::move(p));
    }
}

// Repeated entries make an alternating factor vanish trivially, so chains
// prefer unused paths; after repeated dead ends repeats are allowed again.
std::vector<Path> ChainSampler::draw(std::size_t width, std::uint64_t seed, std::uint64_t index) const
{
    std::mt19937_64 rng(derive_seed(seed, index));
    const auto vertices = static_cast<Vertex>(algebra_.quiver().vertex_count());
    std::vector<Path> tuple;
    std::vector<char> used(paths_.size(), 0);
    std::vector<std::pair<std::size_t, Path>> candidates;
    constexpr int attempts = 64;
    for (int attempt = 0; tuple.size() < width; ++attempt) {
        const bool distinct = attempt < attempts;
        tuple.clear();
        std::fill(used.begin(), used.end(), 0);
        Path product = Path::lazy(static_cast<Vertex>(rng() % vertices));
        while (tuple.size() < width) {
            candidates.clear();
            for (std::size_t k : from_[product.target()])
                if (!(distinct && used[k]))
                    if (auto next = algebra_.multiply(product, paths_[k]))
                        candidates.emplace_back(k, std::move(*next));
            // without the distinctness filter the lazy path at the end always qualifies
            if (candidates.empty())
                break;
            auto& [k, next] = candidates[rng() % candidates.size()];
            used[k] = 1;
            tuple.push_back(paths_[k]);
            product = std::move(next);
        }
    }
    for (std::size_t i = tuple.size() - 1; i > 0; --i)
        std::swap(tuple[i], tuple[rng() % (i + 1)]);
    return tuple;
}

VerificationReport verify_glued_cycle_identity(std::size_t n, std::size_t m, std::uint64_t samples,
                                               std::size_t max_len, std::uint64_t seed, const GluedOptions& options)
{
    const auto start = Clock::now();
    const std::size_t degree = options.factor_degree ? options.factor_degree : 2 * std::max(n, m);
    if (degree == 0 || degree > 32)
        throw std::invalid_argument("factor degree must lie in [1, 32]");
    const std::size_t width = 2 * degree;
    if (max_len == 0)
        throw std::invalid_argument("max_len must be positive");
    const AlgebraHandle algebra = build_glued_cycles(n, m, options.with_relation, width * max_len, options.field);
    const ChainSampler sampler(algebra, max_len);

    auto factor = [&](std::span<const Path> part) {
        std::vector<Path> sorted(part.begin(), part.end());
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            return Element{};
        return eval_standard_via_swan(algebra, part);
    };

    auto scan = scan_blocks(samples, options.threads, [&](std::uint64_t i) {
        auto tuple = sampler.draw(width, seed, i);
        std::span<const Path> all(tuple);
        Element left = factor(all.first(degree));
        if (left.is_zero())
            return left;
        return algebra.multiply(left, factor(all.subspan(degree)));
    });

    VerificationReport report;
    report.tuples_checked = scan.checked;
    report.tuples_skipped_overflow = scan.overflow;
    if (scan.failing) {
        auto tuple = sampler.draw(width, seed, *scan.failing);
        report.verdict = verdict::Counterexample{as_elements(algebra, tuple), std::move(scan.value)};
    } else {
        report.verdict = finish(algebra, max_len, true, scan.overflow);
    }
    report.elapsed = Clock::now() - start;
    return report;
}

}  // namespace piq
