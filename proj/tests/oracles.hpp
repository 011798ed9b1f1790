#pragma once

// Slow, direct reference implementations. They share no code with the
// library beyond the basic Quiver/Path/AlgebraHandle types.

#include <algorithm>
#include <numeric>
#include <optional>
#include <vector>

#include "piq/path_algebra.hpp"
#include "piq/quiver.hpp"

namespace oracle {

using namespace piq;

/// Sign of a permutation of 0..n-1 by counting inversions.
inline int permutation_sign(const std::vector<std::size_t>& p)
{
    int inversions = 0;
    for (std::size_t i = 0; i < p.size(); ++i)
        for (std::size_t j = i + 1; j < p.size(); ++j)
            inversions += p[i] > p[j];
    return inversions % 2 ? -1 : 1;
}

/// Arrow-word reduction by naive leftmost search and replacement.
inline std::optional<std::vector<Arrow>> reduce_word(std::vector<Arrow> w, const std::vector<Relation>& relations)
{
    // binomials rewrite the lexicographically larger side to the smaller
    struct Rule {
        std::vector<Arrow> lhs;
        std::optional<std::vector<Arrow>> rhs;
    };
    std::vector<Rule> rules;
    for (const auto& r : relations) {
        std::vector<Arrow> l(r.lhs.arrows().begin(), r.lhs.arrows().end());
        if (!r.rhs) {
            rules.push_back({l, std::nullopt});
            continue;
        }
        std::vector<Arrow> q(r.rhs->arrows().begin(), r.rhs->arrows().end());
        if (l < q)
            std::swap(l, q);
        rules.push_back({l, q});
    }
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t end = 1; end <= w.size() && !changed; ++end)
            for (const auto& rule : rules) {
                if (rule.lhs.size() > end)
                    continue;
                std::size_t begin = end - rule.lhs.size();
                if (!std::equal(rule.lhs.begin(), rule.lhs.end(), w.begin() + static_cast<long>(begin)))
                    continue;
                if (!rule.rhs)
                    return std::nullopt;
                std::vector<Arrow> next(w.begin(), w.begin() + static_cast<long>(begin));
                next.insert(next.end(), rule.rhs->begin(), rule.rhs->end());
                next.insert(next.end(), w.begin() + static_cast<long>(end), w.end());
                w = std::move(next);
                changed = true;
                break;
            }
    }
    return w;
}

/// Concatenate in the free path algebra, then reduce.
inline std::optional<Path> multiply(const AlgebraHandle& algebra, const Path& p, const Path& q)
{
    if (p.target() != q.source())
        return std::nullopt;
    if (p.is_lazy())
        return q;
    if (q.is_lazy())
        return p;
    std::vector<Arrow> w(p.arrows().begin(), p.arrows().end());
    w.insert(w.end(), q.arrows().begin(), q.arrows().end());
    auto reduced = reduce_word(std::move(w), algebra.relations());
    if (!reduced)
        return std::nullopt;
    return Path::from_arrows(algebra.quiver(), std::move(*reduced));
}

/// St_m(tuple) as the signed sum over all m! orderings.
inline Element standard_by_permutations(const AlgebraHandle& algebra, const std::vector<Path>& tuple)
{
    std::vector<std::size_t> perm(tuple.size());
    std::iota(perm.begin(), perm.end(), 0);
    Element out;
    do {
        std::optional<Path> prod = tuple[perm[0]];
        for (std::size_t t = 1; t < perm.size() && prod; ++t)
            prod = algebra.multiply(*prod, tuple[perm[t]]);
        if (prod)
            algebra.accumulate(out, *prod, permutation_sign(perm));
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

/// Signed count of Eulerian trails i -> j by checking every ordering.
inline long long signed_trails_by_permutations(const std::vector<std::pair<Vertex, Vertex>>& arrows, Vertex i,
                                               Vertex j)
{
    std::vector<std::size_t> perm(arrows.size());
    std::iota(perm.begin(), perm.end(), 0);
    long long total = 0;
    do {
        Vertex at = i;
        bool ok = true;
        for (auto h : perm) {
            if (arrows[h].first != at) {
                ok = false;
                break;
            }
            at = arrows[h].second;
        }
        if (ok && at == j)
            total += permutation_sign(perm);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return total;
}

/// Same count by dynamic programming over (used set, current vertex).
inline long long signed_trails_by_subsets(const std::vector<std::pair<Vertex, Vertex>>& arrows, Vertex i, Vertex j,
                                          Vertex vertex_bound)
{
    const std::size_t m = arrows.size();
    std::vector<std::vector<long long>> dp(std::size_t{1} << m, std::vector<long long>(vertex_bound, 0));
    dp[0][i] = 1;
    for (std::size_t mask = 0; mask < dp.size(); ++mask)
        for (Vertex v = 0; v < vertex_bound; ++v) {
            if (dp[mask][v] == 0)
                continue;
            for (std::size_t h = 0; h < m; ++h) {
                if (mask >> h & 1 || arrows[h].first != v)
                    continue;
                // appending h creates one inversion per used arrow above h
                int above = 0;
                for (std::size_t k = h + 1; k < m; ++k)
                    above += mask >> k & 1;
                dp[mask | std::size_t{1} << h][arrows[h].second] += above % 2 ? -dp[mask][v] : dp[mask][v];
            }
        }
    return dp.back()[j];
}

/// reach[u][v]: a path of length >= 1 from u to v exists.
inline std::vector<std::vector<char>> reachability(const Quiver& q)
{
    const std::size_t n = q.vertex_count();
    std::vector<std::vector<char>> reach(n, std::vector<char>(n, 0));
    for (const auto& a : q.arrows())
        reach[a.source][a.target] = 1;
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t u = 0; u < n; ++u)
            if (reach[u][k])
                for (std::size_t v = 0; v < n; ++v)
                    if (reach[k][v])
                        reach[u][v] = 1;
    return reach;
}

/// PI test from reachability alone: a vertex lies on two simple cycles
/// exactly when some vertex has two out-arrows that both lead back to it.
inline bool is_pi_by_reachability(const Quiver& q)
{
    auto reach = reachability(q);
    for (Vertex v = 0; v < q.vertex_count(); ++v) {
        int returning = 0;
        for (Arrow a : q.out_arrows(v))
            returning += q.target(a) == v || reach[q.target(a)][v];
        if (returning >= 2)
            return false;
    }
    return true;
}

/// Strongly connected classes: u ~ v iff u = v or each reaches the other.
inline std::vector<std::vector<Vertex>> components_by_reachability(const Quiver& q)
{
    auto reach = reachability(q);
    std::vector<std::vector<Vertex>> out;
    std::vector<char> done(q.vertex_count(), 0);
    for (Vertex u = 0; u < q.vertex_count(); ++u) {
        if (done[u])
            continue;
        std::vector<Vertex> cls{u};
        done[u] = 1;
        for (Vertex v = u + 1; v < q.vertex_count(); ++v)
            if (!done[v] && reach[u][v] && reach[v][u]) {
                cls.push_back(v);
                done[v] = 1;
            }
        out.push_back(std::move(cls));
    }
    return out;
}

/// Whether the arrows connect all of `vertices` when directions are ignored.
inline bool weakly_connected(const std::vector<std::pair<Vertex, Vertex>>& arrows, const std::vector<Vertex>& vertices)
{
    if (vertices.empty())
        return true;
    std::vector<Vertex> seen{vertices[0]};
    for (std::size_t k = 0; k < seen.size(); ++k)
        for (const auto& [s, t] : arrows) {
            if (s == seen[k] && std::find(seen.begin(), seen.end(), t) == seen.end())
                seen.push_back(t);
            if (t == seen[k] && std::find(seen.begin(), seen.end(), s) == seen.end())
                seen.push_back(s);
        }
    for (Vertex v : vertices)
        if (std::find(seen.begin(), seen.end(), v) == seen.end())
            return false;
    return true;
}

/// Number of simple cycles through each vertex, by plain depth-first search.
inline std::vector<std::size_t> cycles_through(const Quiver& q)
{
    std::vector<std::size_t> count(q.vertex_count(), 0);
    std::vector<char> on(q.vertex_count(), 0);
    std::vector<Vertex> stack;
    for (Vertex s = 0; s < q.vertex_count(); ++s) {
        auto dfs = [&](auto&& self, Vertex v) -> void {
            for (Arrow a : q.out_arrows(v)) {
                Vertex t = q.target(a);
                if (t == s) {
                    for (Vertex x : stack)
                        ++count[x];
                } else if (t > s && !on[t]) {
                    on[t] = 1;
                    stack.push_back(t);
                    self(self, t);
                    stack.pop_back();
                    on[t] = 0;
                }
            }
        };
        on[s] = 1;
        stack = {s};
        dfs(dfs, s);
        on[s] = 0;
    }
    return count;
}

}  // namespace oracle
