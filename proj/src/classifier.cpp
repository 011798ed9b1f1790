#include "piq/classifier.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>
#include <tuple>

#include <omp.h>

namespace piq {

namespace {

struct SubQuiver {
    Quiver quiver;
    std::vector<Vertex> vertex_of;  // local -> global
    std::vector<Arrow> arrow_of;
};

SubQuiver induced(const Quiver& q, const Component& c)
{
    Quiver::Builder b;
    std::map<Vertex, Vertex> local;
    for (Vertex v : c.vertices)
        local[v] = b.add_vertex(q.vertex_name(v));
    for (Arrow a : c.arrows)
        b.add_arrow(q.arrow_name(a), local.at(q.source(a)), local.at(q.target(a)));
    return {std::move(b).build(), c.vertices, c.arrows};
}

bool is_trivial_or_cycle(const Quiver& q, const Component& c)
{
    if (c.vertices.size() == 1)
        return c.arrows.size() <= 1;
    std::map<Vertex, int> out, in;
    for (Arrow a : c.arrows) {
        ++out[q.source(a)];
        ++in[q.target(a)];
    }
    return std::all_of(c.vertices.begin(), c.vertices.end(),
                       [&](Vertex v) { return out[v] == 1 && in[v] == 1; });
}

// Smallest vertex on two cycles of the sorted list, with its two smallest cycles.
std::optional<NonPiWitness> witness_from_cycles(const Quiver& q, const std::vector<SimpleCycle>& cycles)
{
    std::map<Vertex, std::vector<const SimpleCycle*>> through;
    for (const auto& c : cycles)
        for (Vertex v : c.vertices(q))
            through[v].push_back(&c);
    for (const auto& [v, list] : through)
        if (list.size() >= 2)
            return NonPiWitness{v, *list[0], *list[1]};
    return std::nullopt;
}

bool is_forest(const Quiver& q)
{
    std::vector<std::size_t> parent(q.vertex_count());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t x) {
        while (parent[x] != x)
            x = parent[x] = parent[parent[x]];
        return x;
    };
    for (const auto& a : q.arrows()) {
        auto s = find(a.source);
        auto t = find(a.target);
        if (s == t)
            return false;
        parent[s] = t;
    }
    return true;
}

bool is_single_cycle(const Quiver& q)
{
    if (q.arrow_count() != q.vertex_count())
        return false;
    for (Vertex v = 0; v < q.vertex_count(); ++v)
        if (q.out_arrows(v).size() != 1 || q.in_arrows(v).size() != 1)
            return false;
    return strongly_connected_components(q).size() == 1;
}

}  // namespace

PiVerdict classify_pi(const Quiver& q)
{
    for (const auto& c : strongly_connected_components(q)) {
        if (is_trivial_or_cycle(q, c))
            continue;
        SubQuiver sub = induced(q, c);
        std::vector<SimpleCycle> cycles;
        for (const auto& local : enumerate_simple_cycles(sub.quiver)) {
            SimpleCycle g{sub.vertex_of[local.start], {}};
            for (Arrow a : local.arrows)
                g.arrows.push_back(sub.arrow_of[a]);
            cycles.push_back(std::move(g));
        }
        std::sort(cycles.begin(), cycles.end());
        if (auto w = witness_from_cycles(q, cycles))
            return *w;
        throw std::logic_error("strongly connected component without a vertex on two cycles");
    }
    return PiCertificate{2 * q.vertex_count()};
}

PiVerdict classify_pi_bruteforce(const Quiver& q, int threads)
{
    const auto n = static_cast<long>(q.vertex_count());
    std::vector<std::vector<SimpleCycle>> found(static_cast<std::size_t>(n));

    // Cycles are rooted at their smallest vertex, so the search from s only
    // visits vertices above s and each cycle is produced once.
#pragma omp parallel for schedule(dynamic) num_threads(threads > 0 ? threads : omp_get_max_threads())
    for (long si = 0; si < n; ++si) {
        auto s = static_cast<Vertex>(si);
        std::vector<char> on_path(q.vertex_count(), 0);
        std::vector<Arrow> path;
        auto& out = found[static_cast<std::size_t>(si)];
        auto dfs = [&](auto&& self, Vertex v) -> void {
            for (Arrow a : q.out_arrows(v)) {
                Vertex t = q.target(a);
                if (t == s) {
                    path.push_back(a);
                    out.push_back({s, path});
                    path.pop_back();
                } else if (t > s && !on_path[t]) {
                    on_path[t] = 1;
                    path.push_back(a);
                    self(self, t);
                    path.pop_back();
                    on_path[t] = 0;
                }
            }
        };
        on_path[s] = 1;
        dfs(dfs, s);
    }

    std::vector<SimpleCycle> cycles;
    for (auto& part : found)
        cycles.insert(cycles.end(), part.begin(), part.end());
    std::sort(cycles.begin(), cycles.end());
    if (auto w = witness_from_cycles(q, cycles))
        return *w;
    return PiCertificate{2 * q.vertex_count()};
}

NcPoly tideal_generator_acyclic(const Quiver& q)
{
    return u_poly(static_cast<int>(longest_path_length(q) + 1));
}

std::pair<Path, Path> free_subalgebra_witness(const Quiver& q, Vertex v)
{
    if (v >= q.vertex_count())
        throw std::out_of_range("unknown vertex");
    std::vector<const SimpleCycle*> through;
    auto cycles = enumerate_simple_cycles(q);
    for (const auto& c : cycles)
        if (c.passes_through(q, v))
            through.push_back(&c);
    if (through.size() < 2)
        throw std::invalid_argument("vertex " + q.vertex_name(v) + " lies on " + std::to_string(through.size()) +
                                    " simple cycle(s); two are needed");
    return {through[0]->rotated_to(q, v), through[1]->rotated_to(q, v)};
}

const char* to_string(loc_graded::Reason r)
{
    switch (r) {
    case loc_graded::Reason::tree:
        return "tree";
    case loc_graded::Reason::single_cycle:
        return "single-cycle";
    case loc_graded::Reason::acyclic_full_check:
        return "acyclic-full-check";
    }
    return "?";
}

LocAGradedVerdict is_locally_a_graded(const AlgebraHandle& algebra, std::size_t max_len)
{
    using namespace loc_graded;
    if (max_len > algebra.truncation())
        throw std::invalid_argument("max_len " + std::to_string(max_len) + " exceeds truncation length " +
                                    std::to_string(algebra.truncation()));
    const Quiver& q = algebra.quiver();

    // At most one path between any two vertices, or one per length on a
    // cycle; quotients by paths keep the pieces at dimension <= 1 and the
    // basis matrix-like.
    if (is_forest(q))
        return ExactYes{Reason::tree};
    if (is_single_cycle(q))
        return ExactYes{Reason::single_cycle};

    // piece key: (degree, source, target)
    using Key = std::tuple<std::size_t, Vertex, Vertex>;
    std::map<Key, std::vector<Path>> pieces;
    for (auto& p : algebra.standard_basis(max_len))
        pieces[{p.length(), p.source(), p.target()}].push_back(p);

    // Highest offending degree first, then the smallest (source, target);
    // inside the piece prefer paths that use the most distinct arrows.
    const std::vector<Path>* offending = nullptr;
    for (const auto& [key, paths] : pieces)
        if (paths.size() >= 2 && (!offending || std::get<0>(key) > offending->front().length()))
            offending = &paths;
    if (offending) {
        std::vector<Path> paths = *offending;
        auto support = [](const Path& p) {
            return std::set<Arrow>(p.arrows().begin(), p.arrows().end()).size();
        };
        std::stable_sort(paths.begin(), paths.end(),
                         [&](const Path& a, const Path& b) { return support(a) > support(b); });
        Path a = paths[0], b = paths[1];
        if (b < a)
            std::swap(a, b);
        return No{a, b};
    }

    for (const auto& [lk, left] : pieces) {
        const Path& p = left.front();
        if (p.is_lazy())
            continue;
        for (const auto& [rk, right] : pieces) {
            const Path& r = right.front();
            if (r.is_lazy() || r.source() != p.target() || p.length() + r.length() > max_len)
                continue;
            if (!algebra.multiply(p, r) && pieces.count({p.length() + r.length(), p.source(), r.target()}))
                return NotMatrixLike{p, r};
        }
    }

    if (is_acyclic(q) && max_len >= longest_path_length(q))
        return ExactYes{Reason::acyclic_full_check};
    return YesUpTo{max_len};
}

Quiver glued_cycles_quiver(std::size_t n, std::size_t m)
{
    if (n < 1 || m < 1)
        throw std::invalid_argument("cycle lengths must be at least 1");
    Quiver::Builder b;
    Vertex v = b.add_vertex("v");
    std::vector<Vertex> ps{v}, qs{v};
    for (std::size_t i = 1; i < n; ++i)
        ps.push_back(b.add_vertex("p" + std::to_string(i)));
    for (std::size_t i = 1; i < m; ++i)
        qs.push_back(b.add_vertex("q" + std::to_string(i)));
    for (std::size_t i = 1; i < n; ++i)
        b.add_arrow("a" + std::to_string(i), ps[i - 1], ps[i]);
    b.add_arrow("alpha", ps.back(), v);
    b.add_arrow("beta", v, m > 1 ? qs[1] : v);
    for (std::size_t i = 2; i <= m; ++i)
        b.add_arrow("b" + std::to_string(i), qs[i - 1], i < m ? qs[i] : v);
    return std::move(b).build();
}

AlgebraHandle build_glued_cycles(std::size_t n, std::size_t m, bool with_relation, std::size_t truncation,
                                 Field field)
{
    Quiver q = glued_cycles_quiver(n, m);
    std::vector<Relation> relations;
    if (with_relation)
        relations.push_back(Relation::monomial(
            Path::from_arrows(q, {*q.find_arrow("alpha"), *q.find_arrow("beta")})));
    return AlgebraHandle(std::move(q), std::move(relations), truncation, field);
}

std::vector<Path> nonvanishing_witness_u(const Quiver& q, std::size_t k)
{
    auto longest = longest_path(q);
    if (k == 0 || k > longest.size())
        throw std::invalid_argument("k = " + std::to_string(k) + " must lie in [1, " +
                                    std::to_string(longest.size()) + "]");
    std::vector<Path> out;
    for (std::size_t t = 0; t < k; ++t) {
        out.push_back(Path::lazy(q.source(longest[t])));
        out.push_back(Path::arrow(q, longest[t]));
    }
    return out;
}

}  // namespace piq
