#pragma once

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "piq/path_algebra.hpp"

namespace piq {

/// Arrow h of a Swan quiver: tuple element p_h drawn from its source to its target.
struct SwanArrow {
    std::size_t index;
    std::optional<Path> element;  // empty for abstract multigraphs
    Vertex source;
    Vertex target;
};

/**
 * The Swan quiver of a tuple of homogeneous basis elements: one arrow per
 * tuple entry, between the entry's endpoints. Arrow order is tuple order and
 * fixes the sign reference of every unicursal path.
 */
struct SwanQuiver {
    std::vector<Vertex> vertices;  // sorted, exactly the endpoints that occur
    std::vector<SwanArrow> arrows;
    /// Whether p_1 p_2 ... p_m is non-zero in tuple order (recorded, never required).
    bool ordered_product_nonzero = false;

    bool has_vertex(Vertex v) const;
    int flow(Vertex v) const;
};

/// Throws std::invalid_argument when an entry is not a basis path of the algebra.
SwanQuiver build_swan(const AlgebraHandle& algebra, std::span<const Path> tuple);

/// An abstract multigraph with the given arrows, for graph-level checks.
SwanQuiver make_multigraph(std::span<const std::pair<Vertex, Vertex>> arrows);

/// An Eulerian trail: `order[t]` is the tuple index used at step t.
struct UnicursalPath {
    std::vector<std::size_t> order;
    int sign;
    Vertex from;
    Vertex to;

    auto operator<=>(const UnicursalPath&) const = default;
};

struct TrailSearchOptions {
    /// Residual weak connectivity is checked every this many steps.
    std::size_t connectivity_interval = 4;
};

/// Every unicursal path from i to j, lexicographic in `order`.
std::vector<UnicursalPath> enumerate_unicursal(const SwanQuiver& swan, Vertex i, Vertex j,
                                               const TrailSearchOptions& options = {});
/// Every unicursal path, sorted by (from, to, order).
std::vector<UnicursalPath> enumerate_unicursal(const SwanQuiver& swan, const TrailSearchOptions& options = {});

/// Sum of signs of the unicursal paths from i to j.
long long signed_count(const SwanQuiver& swan, Vertex i, Vertex j, const TrailSearchOptions& options = {});

/// Weak connectivity plus the flow balance a trail from i to j needs.
bool check_flow_conditions(const SwanQuiver& swan, Vertex i, Vertex j);
/// Whether some unicursal path exists (for some pair of endpoints).
bool admits_unicursal_path(const SwanQuiver& swan);

/// Whether arrow `index` lies on an oriented cycle of the Swan quiver.
bool lies_on_cycle(const SwanQuiver& swan, std::size_t index);

/**
 * Whether removing arrow `index` disconnects the quiver. Requires a quiver
 * admitting a unicursal path and an arrow on no oriented cycle; in that
 * situation the answer is always true. Throws std::invalid_argument naming
 * the failed hypothesis otherwise.
 */
bool removal_disconnects(const SwanQuiver& swan, std::size_t index);

/**
 * St_m(p_1, ..., p_m) computed as the signed sum, over unicursal paths of
 * the Swan quiver, of the corresponding products. Entries must be pairwise
 * distinct basis paths (repeated entries make St_m vanish; the caller
 * handles that case). Throws TruncationError when a product leaves [0, L].
 */
Element eval_standard_via_swan(const AlgebraHandle& algebra, std::span<const Path> tuple,
                               const TrailSearchOptions& options = {});

}  // namespace piq
