#include "report.hpp"

#include <fmt/format.h>

namespace piq::report {

namespace {

std::string vertex(const Quiver& q, Vertex v)
{
    return q.vertex_name(v);
}

std::string path(const AlgebraHandle& algebra, const Path& p)
{
    return algebra.to_string(p);
}

void text_into(std::string& out, const ordered_json& value, int indent)
{
    const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
    auto scalar = [](const ordered_json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); };
    auto is_flat = [](const ordered_json& v) {
        for (const auto& x : v)
            if (x.is_structured())
                return false;
        return true;
    };
    for (const auto& [key, v] : value.items()) {
        std::string label = value.is_array() ? "-" : key + ":";
        if (!v.is_structured()) {
            out += fmt::format("{}{} {}\n", pad, label, scalar(v));
        } else if (v.empty()) {
            out += fmt::format("{}{} {}\n", pad, label, v.is_array() ? "(none)" : "{}");
        } else if (v.is_array() && is_flat(v)) {
            std::string joined;
            for (const auto& x : v)
                joined += (joined.empty() ? "" : ", ") + scalar(x);
            out += fmt::format("{}{} [{}]\n", pad, label, joined);
        } else {
            out += fmt::format("{}{}\n", pad, label);
            text_into(out, v, indent + 1);
        }
    }
}

}  // namespace

ordered_json element(const AlgebraHandle& algebra, const Element& x)
{
    ordered_json terms = ordered_json::array();
    for (const auto& [p, c] : x.terms())
        terms.push_back({{"coefficient", c.get_str()}, {"path", path(algebra, p)}});
    return {{"text", algebra.to_string(x)}, {"terms", terms}};
}

ordered_json cycle(const Quiver& q, const SimpleCycle& c)
{
    ordered_json arrows = ordered_json::array();
    for (Arrow a : c.arrows)
        arrows.push_back(q.arrow_name(a));
    return {{"start", vertex(q, c.start)}, {"arrows", arrows}};
}

ordered_json pi_verdict(const Quiver& q, const PiVerdict& verdict)
{
    if (const auto* pi = std::get_if<PiCertificate>(&verdict))
        return {{"verdict", "PI"},
                {"certificate", {{"identity", "St(" + std::to_string(pi->standard_degree) + ")"},
                                 {"standard_degree", pi->standard_degree}}}};
    const auto& w = std::get<NonPiWitness>(verdict);
    return {{"verdict", "NonPI"},
            {"witness",
             {{"vertex", vertex(q, w.vertex)},
              {"cycles", {cycle(q, w.first), cycle(q, w.second)}},
              {"closed_paths",
               {to_string(q, w.first.rotated_to(q, w.vertex)), to_string(q, w.second.rotated_to(q, w.vertex))}}}}};
}

ordered_json verification(const AlgebraHandle& algebra, const VerificationReport& report, bool timing)
{
    ordered_json out;
    std::visit(
        [&](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, verdict::VerifiedUpTo>) {
                out["verdict"] = "VerifiedUpTo";
                out["max_len"] = v.max_len;
                out["complete"] = v.complete;
                out["probabilistic"] = v.probabilistic;
            } else if constexpr (std::is_same_v<T, verdict::Counterexample>) {
                out["verdict"] = "Counterexample";
                ordered_json tuple = ordered_json::array();
                for (const auto& x : v.tuple)
                    tuple.push_back(algebra.to_string(x));
                out["tuple"] = tuple;
                out["value"] = element(algebra, v.value);
            } else {
                out["verdict"] = "Inconclusive";
                out["truncation_hits"] = v.truncation_hits;
            }
        },
        report.verdict);
    out["tuples_checked"] = report.tuples_checked;
    out["tuples_skipped_overflow"] = report.tuples_skipped_overflow;
    if (timing)
        out["elapsed_seconds"] = report.elapsed.count();
    return out;
}

ordered_json identity_space(const IdentitySpace& space)
{
    ordered_json basis = ordered_json::array();
    for (const auto& f : space.basis)
        basis.push_back(to_string(f));
    return {{"degree", space.degree},
            {"dimension", space.dimension()},
            {"rows", space.rows},
            {"field", space.field.name()},
            {"basis", basis}};
}

ordered_json loc_graded(const AlgebraHandle& algebra, const LocAGradedVerdict& verdict)
{
    using namespace loc_graded;
    return std::visit(
        [&](const auto& v) -> ordered_json {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, ExactYes>)
                return {{"verdict", "ExactYes"}, {"reason", to_string(v.reason)}};
            else if constexpr (std::is_same_v<T, YesUpTo>)
                return {{"verdict", "YesUpTo"}, {"max_len", v.max_len}};
            else if constexpr (std::is_same_v<T, No>)
                return {{"verdict", "No"},
                        {"witness", {path(algebra, v.first), path(algebra, v.second)}},
                        {"degree", v.first.length()},
                        {"source", vertex(algebra.quiver(), v.first.source())},
                        {"target", vertex(algebra.quiver(), v.first.target())}};
            else
                return {{"verdict", "NotMatrixLike"}, {"left", path(algebra, v.left)}, {"right", path(algebra, v.right)}};
        },
        verdict);
}

ordered_json swan(const AlgebraHandle& algebra, const SwanQuiver& s, const std::vector<std::pair<Vertex, Vertex>>& pairs)
{
    const Quiver& q = algebra.quiver();
    ordered_json vertices = ordered_json::array();
    for (Vertex v : s.vertices)
        vertices.push_back(vertex(q, v));
    ordered_json arrows = ordered_json::array();
    for (const auto& a : s.arrows)
        arrows.push_back({{"index", a.index + 1},
                          {"element", a.element ? path(algebra, *a.element) : ""},
                          {"source", vertex(q, a.source)},
                          {"target", vertex(q, a.target)}});
    ordered_json listing = ordered_json::array();
    for (auto [i, j] : pairs) {
        if (!check_flow_conditions(s, i, j))
            continue;
        ordered_json trails = ordered_json::array();
        long long signed_total = 0;
        for (const auto& u : enumerate_unicursal(s, i, j)) {
            ordered_json order = ordered_json::array();
            for (auto h : u.order)
                order.push_back(h + 1);
            trails.push_back({{"order", order}, {"sign", u.sign}});
            signed_total += u.sign;
        }
        listing.push_back({{"from", vertex(q, i)},
                           {"to", vertex(q, j)},
                           {"count", trails.size()},
                           {"signed_count", signed_total},
                           {"unicursal_paths", trails}});
    }
    return {{"vertices", vertices},
            {"arrows", arrows},
            {"ordered_product_nonzero", s.ordered_product_nonzero},
            {"admits_unicursal_path", admits_unicursal_path(s)},
            {"pairs", listing}};
}

std::string to_text(const ordered_json& report)
{
    std::string out;
    text_into(out, report, 0);
    return out;
}

}  // namespace piq::report
