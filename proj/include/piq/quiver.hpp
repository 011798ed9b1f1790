#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace piq {

/// Vertices and arrows are addressed by their declaration index.
using Vertex = std::uint32_t;
using Arrow = std::uint32_t;

struct ArrowInfo {
    std::string name;
    Vertex source;
    Vertex target;

    bool operator==(const ArrowInfo&) const = default;
};

/**
 * A finite quiver: a directed multigraph whose loops and parallel arrows are
 * allowed. Vertex and arrow order is the declaration order, which makes every
 * derived listing reproducible. Instances are immutable; use Quiver::Builder.
 */
class Quiver {
public:
    class Builder;

    std::size_t vertex_count() const { return vertex_names_.size(); }
    std::size_t arrow_count() const { return arrows_.size(); }

    const std::string& vertex_name(Vertex v) const { return vertex_names_.at(v); }
    const std::string& arrow_name(Arrow a) const { return arrows_.at(a).name; }
    Vertex source(Arrow a) const { return arrows_.at(a).source; }
    Vertex target(Arrow a) const { return arrows_.at(a).target; }
    const std::vector<ArrowInfo>& arrows() const { return arrows_; }

    std::optional<Vertex> find_vertex(std::string_view name) const;
    std::optional<Arrow> find_arrow(std::string_view name) const;

    /// Arrows leaving / entering v, in declaration order.
    std::span<const Arrow> out_arrows(Vertex v) const { return out_.at(v); }
    std::span<const Arrow> in_arrows(Vertex v) const { return in_.at(v); }

    bool operator==(const Quiver& other) const
    {
        return vertex_names_ == other.vertex_names_ && arrows_ == other.arrows_;
    }

private:
    std::vector<std::string> vertex_names_;
    std::vector<ArrowInfo> arrows_;
    std::vector<std::vector<Arrow>> out_;
    std::vector<std::vector<Arrow>> in_;
};

class Quiver::Builder {
public:
    /// Throws std::invalid_argument on a duplicate name.
    Vertex add_vertex(std::string name);
    Arrow add_arrow(std::string name, Vertex source, Vertex target);
    Arrow add_arrow(std::string name, std::string_view source, std::string_view target);

    bool has_vertex(std::string_view name) const;
    bool has_arrow(std::string_view name) const;

    /// Throws std::invalid_argument when no vertex was declared.
    Quiver build() &&;

private:
    Quiver q_;
};

/**
 * A path in a quiver: either the lazy path e_v or a non-empty sequence of
 * composable arrows. Paths order by (length, arrow ids lexicographically,
 * source vertex), which is the canonical basis order used everywhere.
 */
class Path {
public:
    static Path lazy(Vertex v) { return Path(v, v, {}); }
    static Path arrow(const Quiver& q, Arrow a);
    /// Throws std::invalid_argument when empty or not composable.
    static Path from_arrows(const Quiver& q, std::vector<Arrow> arrows);

    Vertex source() const { return source_; }
    Vertex target() const { return target_; }
    std::size_t length() const { return arrows_.size(); }
    bool is_lazy() const { return arrows_.empty(); }
    std::span<const Arrow> arrows() const { return arrows_; }

    bool operator==(const Path&) const = default;
    std::strong_ordering operator<=>(const Path& other) const;

private:
    friend std::optional<Path> compose(const Path& p, const Path& q);
    friend class AlgebraHandle;

    Path(Vertex s, Vertex t, std::vector<Arrow> arrows)
        : source_(s), target_(t), arrows_(std::move(arrows))
    {
    }

    Vertex source_;
    Vertex target_;
    std::vector<Arrow> arrows_;
};

/// Concatenation pq, or nullopt when t(p) != s(q).
std::optional<Path> compose(const Path& p, const Path& q);

/// `a*b*c` for arrow paths, `e(v)` for lazy paths.
std::string to_string(const Quiver& q, const Path& p);

/// Out-degree minus in-degree. Throws std::out_of_range for an unknown vertex.
int flow(const Quiver& q, Vertex v);

struct Component {
    std::vector<Vertex> vertices;  // sorted
    std::vector<Arrow> arrows;     // arrows with both ends inside, sorted
};

/// Maximal strongly connected sets, ordered by smallest vertex.
std::vector<Component> strongly_connected_components(const Quiver& q);

/// A simple oriented cycle rotated to start at its smallest vertex.
struct SimpleCycle {
    Vertex start;
    std::vector<Arrow> arrows;

    auto operator<=>(const SimpleCycle&) const = default;

    std::vector<Vertex> vertices(const Quiver& q) const;
    bool passes_through(const Quiver& q, Vertex v) const;
    /// The closed path obtained by reading the cycle from v.
    Path rotated_to(const Quiver& q, Vertex v) const;
};

/// All simple cycles (loops included), canonical rotation, sorted.
std::vector<SimpleCycle> enumerate_simple_cycles(const Quiver& q);

bool is_acyclic(const Quiver& q);

/// Maximal number of arrows on a path. Throws std::domain_error if q has a cycle.
std::size_t longest_path_length(const Quiver& q);

/// A path of maximal length (lexicographically smallest among them).
/// Throws std::domain_error if q has a cycle.
std::vector<Arrow> longest_path(const Quiver& q);

/// 1 -> 2 -> ... -> n with arrows a1 ... a(n-1).
Quiver equioriented_a(std::size_t n);

/// 1 -> 2 -> ... -> n -> 1 with arrows a1 ... an; n = 1 is a single loop.
Quiver oriented_cycle(std::size_t n);

}  // namespace piq
