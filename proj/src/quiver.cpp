#include "piq/quiver.hpp"

#include <algorithm>
#include <stdexcept>

namespace piq {

std::optional<Vertex> Quiver::find_vertex(std::string_view name) const
{
    for (Vertex v = 0; v < vertex_names_.size(); ++v)
        if (vertex_names_[v] == name)
            return v;
    return std::nullopt;
}

std::optional<Arrow> Quiver::find_arrow(std::string_view name) const
{
    for (Arrow a = 0; a < arrows_.size(); ++a)
        if (arrows_[a].name == name)
            return a;
    return std::nullopt;
}

Vertex Quiver::Builder::add_vertex(std::string name)
{
    if (has_vertex(name))
        throw std::invalid_argument("duplicate vertex '" + name + "'");
    q_.vertex_names_.push_back(std::move(name));
    q_.out_.emplace_back();
    q_.in_.emplace_back();
    return static_cast<Vertex>(q_.vertex_names_.size() - 1);
}

Arrow Quiver::Builder::add_arrow(std::string name, Vertex source, Vertex target)
{
    if (has_arrow(name))
        throw std::invalid_argument("duplicate arrow '" + name + "'");
    if (source >= q_.vertex_names_.size() || target >= q_.vertex_names_.size())
        throw std::invalid_argument("arrow '" + name + "' uses an undeclared vertex");
    auto a = static_cast<Arrow>(q_.arrows_.size());
    q_.arrows_.push_back({std::move(name), source, target});
    q_.out_[source].push_back(a);
    q_.in_[target].push_back(a);
    return a;
}

Arrow Quiver::Builder::add_arrow(std::string name, std::string_view source, std::string_view target)
{
    auto s = q_.find_vertex(source);
    auto t = q_.find_vertex(target);
    if (!s)
        throw std::invalid_argument("unknown vertex '" + std::string(source) + "'");
    if (!t)
        throw std::invalid_argument("unknown vertex '" + std::string(target) + "'");
    return add_arrow(std::move(name), *s, *t);
}

bool Quiver::Builder::has_vertex(std::string_view name) const
{
    return q_.find_vertex(name).has_value();
}

bool Quiver::Builder::has_arrow(std::string_view name) const
{
    return q_.find_arrow(name).has_value();
}

Quiver Quiver::Builder::build() &&
{
    if (q_.vertex_names_.empty())
        throw std::invalid_argument("a quiver needs at least one vertex");
    return std::move(q_);
}

Path Path::arrow(const Quiver& q, Arrow a)
{
    return Path(q.source(a), q.target(a), {a});
}

Path Path::from_arrows(const Quiver& q, std::vector<Arrow> arrows)
{
    if (arrows.empty())
        throw std::invalid_argument("an arrow path needs at least one arrow");
    for (Arrow a : arrows)
        if (a >= q.arrow_count())
            throw std::invalid_argument("unknown arrow index");
    for (std::size_t i = 0; i + 1 < arrows.size(); ++i)
        if (q.target(arrows[i]) != q.source(arrows[i + 1]))
            throw std::invalid_argument("arrows '" + q.arrow_name(arrows[i]) + "' and '" +
                                        q.arrow_name(arrows[i + 1]) + "' do not compose");
    Vertex s = q.source(arrows.front());
    Vertex t = q.target(arrows.back());
    return Path(s, t, std::move(arrows));
}

std::strong_ordering Path::operator<=>(const Path& other) const
{
    if (auto c = arrows_.size() <=> other.arrows_.size(); c != 0)
        return c;
    if (auto c = arrows_ <=> other.arrows_; c != 0)
        return c;
    return source_ <=> other.source_;
}

std::optional<Path> compose(const Path& p, const Path& q)
{
    if (p.target() != q.source())
        return std::nullopt;
    if (p.is_lazy())
        return q;
    if (q.is_lazy())
        return p;
    std::vector<Arrow> arrows(p.arrows_);
    arrows.insert(arrows.end(), q.arrows_.begin(), q.arrows_.end());
    return Path(p.source(), q.target(), std::move(arrows));
}

std::string to_string(const Quiver& q, const Path& p)
{
    if (p.is_lazy())
        return "e(" + q.vertex_name(p.source()) + ")";
    std::string out;
    for (Arrow a : p.arrows()) {
        if (!out.empty())
            out += '*';
        out += q.arrow_name(a);
    }
    return out;
}

int flow(const Quiver& q, Vertex v)
{
    if (v >= q.vertex_count())
        throw std::out_of_range("unknown vertex index " + std::to_string(v));
    return static_cast<int>(q.out_arrows(v).size()) - static_cast<int>(q.in_arrows(v).size());
}

namespace {

// Kosaraju on the subquiver induced by vertices >= floor. Returns a component
// index per vertex (-1 below floor).
std::vector<int> scc_labels(const Quiver& q, Vertex floor)
{
    const std::size_t n = q.vertex_count();
    std::vector<int> label(n, -1);
    std::vector<char> seen(n, 0);
    std::vector<Vertex> order;
    order.reserve(n);

    for (Vertex root = floor; root < n; ++root) {
        if (seen[root])
            continue;
        // iterative post-order DFS
        std::vector<std::pair<Vertex, std::size_t>> stack{{root, 0}};
        seen[root] = 1;
        while (!stack.empty()) {
            auto& [v, i] = stack.back();
            auto outs = q.out_arrows(v);
            if (i < outs.size()) {
                Vertex w = q.target(outs[i++]);
                if (w >= floor && !seen[w]) {
                    seen[w] = 1;
                    stack.emplace_back(w, 0);
                }
            } else {
                order.push_back(v);
                stack.pop_back();
            }
        }
    }

    int next = 0;
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        if (label[*it] != -1)
            continue;
        std::vector<Vertex> stack{*it};
        label[*it] = next;
        while (!stack.empty()) {
            Vertex v = stack.back();
            stack.pop_back();
            for (Arrow a : q.in_arrows(v)) {
                Vertex w = q.source(a);
                if (w >= floor && label[w] == -1) {
                    label[w] = next;
                    stack.push_back(w);
                }
            }
        }
        ++next;
    }
    return label;
}

}  // namespace

std::vector<Component> strongly_connected_components(const Quiver& q)
{
    auto label = scc_labels(q, 0);
    std::vector<int> slot(q.vertex_count(), -1);
    std::vector<Component> out;
    // Visiting vertices in increasing order orders components by smallest vertex.
    for (Vertex v = 0; v < q.vertex_count(); ++v) {
        int& s = slot[label[v]];
        if (s == -1) {
            s = static_cast<int>(out.size());
            out.emplace_back();
        }
        out[s].vertices.push_back(v);
    }
    for (Arrow a = 0; a < q.arrow_count(); ++a)
        if (label[q.source(a)] == label[q.target(a)])
            out[slot[label[q.source(a)]]].arrows.push_back(a);
    return out;
}

std::vector<Vertex> SimpleCycle::vertices(const Quiver& q) const
{
    std::vector<Vertex> vs;
    vs.reserve(arrows.size());
    for (Arrow a : arrows)
        vs.push_back(q.source(a));
    return vs;
}

bool SimpleCycle::passes_through(const Quiver& q, Vertex v) const
{
    return std::any_of(arrows.begin(), arrows.end(), [&](Arrow a) { return q.source(a) == v; });
}

Path SimpleCycle::rotated_to(const Quiver& q, Vertex v) const
{
    auto it = std::find_if(arrows.begin(), arrows.end(), [&](Arrow a) { return q.source(a) == v; });
    if (it == arrows.end())
        throw std::invalid_argument("cycle does not pass through vertex '" + q.vertex_name(v) + "'");
    std::vector<Arrow> rotated(it, arrows.end());
    rotated.insert(rotated.end(), arrows.begin(), it);
    return Path::from_arrows(q, std::move(rotated));
}

namespace {

// Johnson's circuit search restricted to one strongly connected piece.
class CircuitSearch {
public:
    CircuitSearch(const Quiver& q, Vertex start, const std::vector<int>& label)
        : q_(q), start_(start), label_(label), blocked_(q.vertex_count(), 0),
          block_map_(q.vertex_count())
    {
    }

    void run(std::vector<SimpleCycle>& out)
    {
        out_ = &out;
        circuit(start_);
    }

private:
    bool inside(Vertex w) const { return w >= start_ && label_[w] == label_[start_]; }

    void unblock(Vertex v)
    {
        blocked_[v] = 0;
        auto pending = std::move(block_map_[v]);
        block_map_[v].clear();
        for (Vertex w : pending)
            if (blocked_[w])
                unblock(w);
    }

    bool circuit(Vertex v)
    {
        bool found = false;
        blocked_[v] = 1;
        for (Arrow a : q_.out_arrows(v)) {
            Vertex w = q_.target(a);
            if (!inside(w))
                continue;
            stack_.push_back(a);
            if (w == start_) {
                out_->push_back({start_, stack_});
                found = true;
            } else if (!blocked_[w] && circuit(w)) {
                found = true;
            }
            stack_.pop_back();
        }
        if (found) {
            unblock(v);
        } else {
            for (Arrow a : q_.out_arrows(v)) {
                Vertex w = q_.target(a);
                if (inside(w) && std::find(block_map_[w].begin(), block_map_[w].end(), v) == block_map_[w].end())
                    block_map_[w].push_back(v);
            }
        }
        return found;
    }

    const Quiver& q_;
    Vertex start_;
    const std::vector<int>& label_;
    std::vector<char> blocked_;
    std::vector<std::vector<Vertex>> block_map_;
    std::vector<Arrow> stack_;
    std::vector<SimpleCycle>* out_ = nullptr;
};

}  // namespace

std::vector<SimpleCycle> enumerate_simple_cycles(const Quiver& q)
{
    std::vector<SimpleCycle> out;
    for (Vertex s = 0; s < q.vertex_count(); ++s) {
        auto label = scc_labels(q, s);
        CircuitSearch(q, s, label).run(out);
    }
    std::sort(out.begin(), out.end());
    return out;
}

bool is_acyclic(const Quiver& q)
{
    for (const auto& c : strongly_connected_components(q))
        if (!c.arrows.empty())
            return false;
    return true;
}

namespace {

std::vector<Vertex> topological_order(const Quiver& q)
{
    std::vector<std::size_t> indegree(q.vertex_count());
    for (Vertex v = 0; v < q.vertex_count(); ++v)
        indegree[v] = q.in_arrows(v).size();
    std::vector<Vertex> order;
    std::vector<Vertex> ready;
    for (Vertex v = q.vertex_count(); v-- > 0;)
        if (indegree[v] == 0)
            ready.push_back(v);
    while (!ready.empty()) {
        Vertex v = ready.back();
        ready.pop_back();
        order.push_back(v);
        for (Arrow a : q.out_arrows(v))
            if (--indegree[q.target(a)] == 0)
                ready.push_back(q.target(a));
    }
    if (order.size() != q.vertex_count())
        throw std::domain_error("quiver has an oriented cycle; path lengths are unbounded");
    return order;
}

}  // namespace

std::size_t longest_path_length(const Quiver& q)
{
    return longest_path(q).size();
}

std::vector<Arrow> longest_path(const Quiver& q)
{
    auto order = topological_order(q);
    // best[v]: the longest path starting at v, lexicographically smallest on ties.
    std::vector<std::vector<Arrow>> best(q.vertex_count());
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        Vertex v = *it;
        for (Arrow a : q.out_arrows(v)) {
            std::vector<Arrow> candidate{a};
            const auto& tail = best[q.target(a)];
            candidate.insert(candidate.end(), tail.begin(), tail.end());
            if (candidate.size() > best[v].size() ||
                (candidate.size() == best[v].size() && candidate < best[v]))
                best[v] = std::move(candidate);
        }
    }
    std::vector<Arrow> result;
    for (const auto& b : best)
        if (b.size() > result.size() || (b.size() == result.size() && !b.empty() && b < result))
            result = b;
    return result;
}

Quiver equioriented_a(std::size_t n)
{
    Quiver::Builder b;
    for (std::size_t i = 1; i <= n; ++i)
        b.add_vertex(std::to_string(i));
    for (std::size_t i = 1; i < n; ++i)
        b.add_arrow("a" + std::to_string(i), static_cast<Vertex>(i - 1), static_cast<Vertex>(i));
    return std::move(b).build();
}

Quiver oriented_cycle(std::size_t n)
{
    Quiver::Builder b;
    for (std::size_t i = 1; i <= n; ++i)
        b.add_vertex(std::to_string(i));
    for (std::size_t i = 1; i <= n; ++i)
        b.add_arrow("a" + std::to_string(i), static_cast<Vertex>(i - 1), static_cast<Vertex>(i % n));
    return std::move(b).build();
}

}  // namespace piq
