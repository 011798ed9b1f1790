#include "piq/swan.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <stdexcept>

namespace piq {

bool SwanQuiver::has_vertex(Vertex v) const
{
    return std::binary_search(vertices.begin(), vertices.end(), v);
}

int SwanQuiver::flow(Vertex v) const
{
    int f = 0;
    for (const auto& a : arrows) {
        f += a.source == v;
        f -= a.target == v;
    }
    return f;
}

namespace {

SwanQuiver with_vertices(SwanQuiver s)
{
    for (const auto& a : s.arrows) {
        s.vertices.push_back(a.source);
        s.vertices.push_back(a.target);
    }
    std::sort(s.vertices.begin(), s.vertices.end());
    s.vertices.erase(std::unique(s.vertices.begin(), s.vertices.end()), s.vertices.end());
    return s;
}

class DisjointSets {
public:
    explicit DisjointSets(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }

    std::size_t find(std::size_t x)
    {
        while (parent_[x] != x)
            x = parent_[x] = parent_[parent_[x]];
        return x;
    }

    void join(std::size_t a, std::size_t b) { parent_[find(a)] = find(b); }

private:
    std::vector<std::size_t> parent_;
};

std::size_t local_index(const SwanQuiver& s, Vertex v)
{
    return static_cast<std::size_t>(std::lower_bound(s.vertices.begin(), s.vertices.end(), v) - s.vertices.begin());
}

// Number of weak components after dropping the arrow `skip` (if any).
std::size_t weak_components(const SwanQuiver& s, std::optional<std::size_t> skip)
{
    DisjointSets sets(s.vertices.size());
    for (const auto& a : s.arrows)
        if (!skip || a.index != *skip)
            sets.join(local_index(s, a.source), local_index(s, a.target));
    std::size_t count = 0;
    for (std::size_t v = 0; v < s.vertices.size(); ++v)
        count += sets.find(v) == v;
    return count;
}

/**
 * Depth-first enumeration of Eulerian trails. Flow balance between the
 * current vertex and the required end is invariant along the search, so it
 * is checked once by the caller; residual weak connectivity is re-checked
 * every `connectivity_interval` steps to cut dead branches early.
 */
class TrailSearch {
public:
    TrailSearch(const SwanQuiver& swan, const TrailSearchOptions& options)
        : swan_(swan), interval_(std::max<std::size_t>(options.connectivity_interval, 1)),
          out_(swan.vertices.size()), order_(swan.arrows.size())
    {
        if (swan.arrows.size() > 64)
            throw std::invalid_argument("Swan quivers are limited to 64 arrows");
        for (const auto& a : swan.arrows) {
            source_.push_back(local_index(swan, a.source));
            target_.push_back(local_index(swan, a.target));
            out_[source_.back()].push_back(a.index);
        }
    }

    // step(depth, arrow) -> whether to descend; leaf(order, sign).
    template <class Step, class Leaf>
    void run(Vertex start, Step&& step, Leaf&& leaf)
    {
        used_ = 0;
        descend(local_index(swan_, start), 0, 0, step, leaf);
    }

private:
    template <class Step, class Leaf>
    void descend(std::size_t current, std::size_t depth, unsigned parity, Step& step, Leaf& leaf)
    {
        const std::size_t m = swan_.arrows.size();
        if (depth == m) {
            leaf(std::span<const std::size_t>(order_), parity ? -1 : 1);
            return;
        }
        if (depth > 0 && depth % interval_ == 0 && !residual_connected(current))
            return;
        for (std::size_t h : out_[current]) {
            std::uint64_t bit = std::uint64_t{1} << h;
            if (used_ & bit)
                continue;
            if (!step(depth, h))
                continue;
            // inversions contributed by appending h: used indices above h
            unsigned above = static_cast<unsigned>(std::popcount(used_ >> h)) ;
            used_ |= bit;
            order_[depth] = h;
            descend(target_[h], depth + 1, parity ^ (above & 1u), step, leaf);
            used_ &= ~bit;
        }
    }

    bool residual_connected(std::size_t current)
    {
        DisjointSets sets(swan_.vertices.size());
        bool any = false;
        for (std::size_t h = 0; h < swan_.arrows.size(); ++h)
            if (!(used_ & (std::uint64_t{1} << h))) {
                sets.join(source_[h], target_[h]);
                any = true;
            }
        if (!any)
            return true;
        std::size_t root = sets.find(current);
        for (std::size_t h = 0; h < swan_.arrows.size(); ++h)
            if (!(used_ & (std::uint64_t{1} << h)) && sets.find(source_[h]) != root)
                return false;
        return true;
    }

    const SwanQuiver& swan_;
    std::size_t interval_;
    std::vector<std::vector<std::size_t>> out_;
    std::vector<std::size_t> source_;
    std::vector<std::size_t> target_;
    std::vector<std::size_t> order_;
    std::uint64_t used_ = 0;
};

}  // namespace

SwanQuiver build_swan(const AlgebraHandle& algebra, std::span<const Path> tuple)
{
    SwanQuiver s;
    std::optional<Path> product;
    bool nonzero = !tuple.empty();
    for (std::size_t h = 0; h < tuple.size(); ++h) {
        const Path& p = tuple[h];
        if (!algebra.is_basis_path(p))
            throw std::invalid_argument(algebra.to_string(p) + " is not a basis path of the algebra");
        s.arrows.push_back({h, p, p.source(), p.target()});
        if (!nonzero)
            continue;
        try {
            product = h == 0 ? std::optional<Path>(p) : algebra.multiply(*product, p);
            nonzero = product.has_value();
        } catch (const TruncationError&) {
            nonzero = false;
        }
    }
    s.ordered_product_nonzero = nonzero;
    return with_vertices(std::move(s));
}

SwanQuiver make_multigraph(std::span<const std::pair<Vertex, Vertex>> arrows)
{
    SwanQuiver s;
    for (std::size_t h = 0; h < arrows.size(); ++h)
        s.arrows.push_back({h, std::nullopt, arrows[h].first, arrows[h].second});
    return with_vertices(std::move(s));
}

bool check_flow_conditions(const SwanQuiver& swan, Vertex i, Vertex j)
{
    if (!swan.has_vertex(i) || !swan.has_vertex(j))
        return false;
    if (weak_components(swan, std::nullopt) != 1)
        return false;
    for (Vertex v : swan.vertices) {
        int expected = (v == i ? 1 : 0) - (v == j ? 1 : 0);
        if (swan.flow(v) != expected)
            return false;
    }
    return true;
}

bool admits_unicursal_path(const SwanQuiver& swan)
{
    for (Vertex i : swan.vertices)
        for (Vertex j : swan.vertices)
            if (check_flow_conditions(swan, i, j))
                return true;
    return false;
}

std::vector<UnicursalPath> enumerate_unicursal(const SwanQuiver& swan, Vertex i, Vertex j,
                                               const TrailSearchOptions& options)
{
    std::vector<UnicursalPath> out;
    if (!check_flow_conditions(swan, i, j))
        return out;
    TrailSearch search(swan, options);
    search.run(
        i, [](std::size_t, std::size_t) { return true; },
        [&](std::span<const std::size_t> order, int sign) {
            out.push_back({{order.begin(), order.end()}, sign, i, j});
        });
    return out;
}

std::vector<UnicursalPath> enumerate_unicursal(const SwanQuiver& swan, const TrailSearchOptions& options)
{
    std::vector<UnicursalPath> out;
    for (Vertex i : swan.vertices)
        for (Vertex j : swan.vertices) {
            auto part = enumerate_unicursal(swan, i, j, options);
            out.insert(out.end(), part.begin(), part.end());
        }
    return out;
}

long long signed_count(const SwanQuiver& swan, Vertex i, Vertex j, const TrailSearchOptions& options)
{
    long long total = 0;
    if (!check_flow_conditions(swan, i, j))
        return total;
    TrailSearch search(swan, options);
    search.run(
        i, [](std::size_t, std::size_t) { return true; },
        [&](std::span<const std::size_t>, int sign) { total += sign; });
    return total;
}

bool lies_on_cycle(const SwanQuiver& swan, std::size_t index)
{
    const auto& arrow = swan.arrows.at(index);
    // reachability from the arrow's target back to its source
    std::vector<char> seen(swan.vertices.size(), 0);
    std::vector<std::size_t> stack{local_index(swan, arrow.target)};
    seen[stack.back()] = 1;
    const std::size_t goal = local_index(swan, arrow.source);
    while (!stack.empty()) {
        std::size_t v = stack.back();
        stack.pop_back();
        if (v == goal)
            return true;
        for (const auto& a : swan.arrows) {
            std::size_t s = local_index(swan, a.source);
            std::size_t t = local_index(swan, a.target);
            if (s == v && !seen[t]) {
                seen[t] = 1;
                stack.push_back(t);
            }
        }
    }
    return false;
}

bool removal_disconnects(const SwanQuiver& swan, std::size_t index)
{
    if (index >= swan.arrows.size())
        throw std::invalid_argument("arrow index out of range");
    if (!admits_unicursal_path(swan))
        throw std::invalid_argument("hypothesis failed: the quiver admits no unicursal path");
    if (lies_on_cycle(swan, index))
        throw std::invalid_argument("hypothesis failed: arrow " + std::to_string(index + 1) +
                                    " lies on an oriented cycle");
    return weak_components(swan, index) > 1;
}

Element eval_standard_via_swan(const AlgebraHandle& algebra, std::span<const Path> tuple,
                               const TrailSearchOptions& options)
{
    if (tuple.empty())
        throw std::invalid_argument("the standard polynomial needs at least one argument");
    std::vector<Path> sorted(tuple.begin(), tuple.end());
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw std::invalid_argument("repeated entries: the standard polynomial vanishes by alternation");

    SwanQuiver swan = build_swan(algebra, tuple);
    Element result;
    std::vector<std::optional<Path>> prefix(tuple.size() + 1);
    TrailSearch search(swan, options);
    for (Vertex i : swan.vertices)
        for (Vertex j : swan.vertices) {
            if (!check_flow_conditions(swan, i, j))
                continue;
            // A vanishing prefix product kills every completion of the trail.
            search.run(
                i,
                [&](std::size_t depth, std::size_t h) {
                    prefix[depth + 1] = depth == 0 ? std::optional<Path>(tuple[h])
                                                   : algebra.multiply(*prefix[depth], tuple[h]);
                    return prefix[depth + 1].has_value();
                },
                [&](std::span<const std::size_t>, int sign) {
                    algebra.accumulate(result, *prefix[tuple.size()], sign);
                });
        }
    return result;
}

}  // namespace piq
