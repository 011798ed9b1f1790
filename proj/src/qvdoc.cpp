#include "piq/qvdoc.hpp"

#include <cctype>
#include <fstream>
#include <optional>
#include <sstream>

namespace piq {

ParseError::ParseError(std::string message, SourceSpan where)
    : std::runtime_error(std::to_string(where.line) + ":" + std::to_string(where.column) + ": " + message),
      message_(std::move(message)), where_(where)
{
}

namespace {

bool is_word_char(char c)
{
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

bool valid_id(std::string_view s)
{
    if (s.empty())
        return false;
    auto all = [&](auto pred) {
        for (char c : s)
            if (!pred(static_cast<unsigned char>(c)))
                return false;
        return true;
    };
    if (all([](unsigned char c) { return std::isdigit(c) != 0; }))
        return true;
    if (std::isdigit(static_cast<unsigned char>(s[0])))
        return false;
    return all([](unsigned char c) { return std::isalnum(c) || c == '_'; });
}

/// Cursor over one line; columns are 1-based.
class LineReader {
public:
    LineReader(std::string_view line, std::size_t number) : line_(line), number_(number) {}

    void skip_space()
    {
        while (pos_ < line_.size() && (line_[pos_] == ' ' || line_[pos_] == '\t'))
            ++pos_;
    }

    bool at_end()
    {
        skip_space();
        return pos_ == line_.size();
    }

    SourceSpan here() const { return {number_, pos_ + 1}; }

    [[noreturn]] void fail(const std::string& message) const { throw ParseError(message, here()); }

    bool accept(std::string_view token)
    {
        skip_space();
        if (line_.substr(pos_, token.size()) != token)
            return false;
        pos_ += token.size();
        return true;
    }

    /// A whole word: `vertex` does not match the start of `vertexes`.
    bool keyword(std::string_view word)
    {
        std::size_t saved = pos_;
        if (accept(word) && (pos_ == line_.size() || !is_word_char(line_[pos_])))
            return true;
        pos_ = saved;
        return false;
    }

    void expect(std::string_view token)
    {
        if (!accept(token))
            fail("expected '" + std::string(token) + "'");
    }

    /// Next identifier; `span` receives its position.
    std::string id(SourceSpan& span)
    {
        skip_space();
        span = here();
        std::size_t begin = pos_;
        while (pos_ < line_.size() && is_word_char(line_[pos_]))
            ++pos_;
        std::string_view word = line_.substr(begin, pos_ - begin);
        if (word.empty())
            fail("expected an identifier");
        if (!valid_id(word))
            throw ParseError("malformed identifier '" + std::string(word) + "'", span);
        return std::string(word);
    }

    std::optional<std::string> maybe_id(SourceSpan& span)
    {
        skip_space();
        if (pos_ == line_.size() || !is_word_char(line_[pos_]))
            return std::nullopt;
        return id(span);
    }

private:
    std::string_view line_;
    std::size_t number_;
    std::size_t pos_ = 0;
};

struct PendingRelation {
    std::vector<std::pair<std::string, SourceSpan>> lhs;
    std::vector<std::pair<std::string, SourceSpan>> rhs;  // empty: monomial
    SourceSpan span;
};

Path path_from_names(const Quiver& q, const std::vector<std::pair<std::string, SourceSpan>>& names)
{
    std::vector<Arrow> arrows;
    for (const auto& [name, span] : names) {
        auto a = q.find_arrow(name);
        if (!a)
            throw ParseError("unknown arrow '" + name + "'", span);
        if (!arrows.empty() && q.target(arrows.back()) != q.source(*a))
            throw ParseError("arrow '" + name + "' does not compose with the preceding arrow", span);
        arrows.push_back(*a);
    }
    return Path::from_arrows(q, std::move(arrows));
}

}  // namespace

QuiverDoc parse_quiver(std::string_view text, std::string name)
{
    Quiver::Builder builder;
    std::vector<SourceSpan> vertex_spans, arrow_spans;
    std::vector<PendingRelation> pending;

    std::size_t number = 0;
    std::size_t begin = 0;
    while (begin <= text.size()) {
        std::size_t end = text.find('\n', begin);
        if (end == std::string_view::npos)
            end = text.size();
        std::string_view line = text.substr(begin, end - begin);
        begin = end + 1;
        ++number;
        if (!line.empty() && line.back() == '\r')
            line.remove_suffix(1);
        if (auto hash = line.find('#'); hash != std::string_view::npos)
            line = line.substr(0, hash);

        LineReader r(line, number);
        if (r.at_end())
            continue;
        SourceSpan keyword_span = r.here();
        SourceSpan span;
        if (r.keyword("vertices")) {
            r.expect(":");
            while (auto v = r.maybe_id(span)) {
                if (builder.has_vertex(*v))
                    throw ParseError("duplicate vertex '" + *v + "'", span);
                builder.add_vertex(*v);
                vertex_spans.push_back(span);
            }
        } else if (r.keyword("vertex")) {
            auto v = r.id(span);
            if (builder.has_vertex(v))
                throw ParseError("duplicate vertex '" + v + "'", span);
            builder.add_vertex(v);
            vertex_spans.push_back(span);
        } else if (r.keyword("arrow")) {
            SourceSpan name_span, source_span, target_span;
            auto a = r.id(name_span);
            r.expect(":");
            auto s = r.id(source_span);
            r.expect("->");
            auto t = r.id(target_span);
            if (builder.has_arrow(a))
                throw ParseError("duplicate arrow '" + a + "'", name_span);
            if (!builder.has_vertex(s))
                throw ParseError("unknown vertex '" + s + "'", source_span);
            if (!builder.has_vertex(t))
                throw ParseError("unknown vertex '" + t + "'", target_span);
            builder.add_arrow(a, s, t);
            arrow_spans.push_back(name_span);
        } else if (r.keyword("relation")) {
            r.expect(":");
            PendingRelation rel;
            rel.span = keyword_span;
            while (auto a = r.maybe_id(span))
                rel.lhs.emplace_back(*a, span);
            if (rel.lhs.empty())
                r.fail("relation needs a path on the left-hand side");
            r.expect("=");
            while (auto a = r.maybe_id(span))
                rel.rhs.emplace_back(*a, span);
            if (rel.rhs.empty())
                r.fail("relation needs '0' or a path on the right-hand side");
            if (rel.rhs.size() == 1 && rel.rhs[0].first == "0")
                rel.rhs.clear();
            pending.push_back(std::move(rel));
        } else {
            r.fail("expected 'vertex', 'vertices:', 'arrow' or 'relation:'");
        }
        if (!r.at_end())
            r.fail("unexpected trailing text");
    }

    QuiverDoc doc{std::move(name), Quiver{}, {}, std::move(vertex_spans), std::move(arrow_spans), {}};
    try {
        doc.quiver = std::move(builder).build();
    } catch (const std::invalid_argument& e) {
        throw ParseError(e.what(), {number, 1});
    }
    for (const auto& rel : pending) {
        Path lhs = path_from_names(doc.quiver, rel.lhs);
        if (lhs.length() < 2)
            throw ParseError("relation paths must have length at least 2", rel.span);
        if (rel.rhs.empty()) {
            doc.relations.push_back(Relation::monomial(std::move(lhs)));
        } else {
            Path rhs = path_from_names(doc.quiver, rel.rhs);
            if (rhs.source() != lhs.source() || rhs.target() != lhs.target() || rhs.length() != lhs.length())
                throw ParseError("binomial relation must relate parallel paths of equal length", rel.span);
            if (rhs == lhs)
                throw ParseError("binomial relation relates a path to itself", rel.span);
            doc.relations.push_back(Relation::binomial(std::move(lhs), std::move(rhs)));
        }
        doc.relation_spans.push_back(rel.span);
    }
    return doc;
}

QuiverDoc load_quiver(const std::filesystem::path& file)
{
    std::ifstream in(file, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot open " + file.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_quiver(buffer.str(), file.stem().string());
}

std::string render_quiver(const QuiverDoc& doc)
{
    const Quiver& q = doc.quiver;
    std::string out;
    if (!doc.name.empty())
        out += "# " + doc.name + "\n";
    out += "vertices:";
    for (Vertex v = 0; v < q.vertex_count(); ++v)
        out += " " + q.vertex_name(v);
    out += "\n";
    for (const auto& a : q.arrows())
        out += "arrow " + a.name + ": " + q.vertex_name(a.source) + " -> " + q.vertex_name(a.target) + "\n";
    auto words = [&](const Path& p) {
        std::string s;
        for (Arrow a : p.arrows())
            s += (s.empty() ? "" : " ") + q.arrow_name(a);
        return s;
    };
    for (const auto& r : doc.relations)
        out += "relation: " + words(r.lhs) + " = " + (r.rhs ? words(*r.rhs) : std::string("0")) + "\n";
    return out;
}

AlgebraHandle make_algebra(const QuiverDoc& doc, std::size_t truncation, Field field)
{
    return AlgebraHandle(doc.quiver, doc.relations, truncation, field);
}

Path parse_path(const Quiver& q, std::string_view text)
{
    auto trim = [](std::string_view s) {
        while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
            s.remove_prefix(1);
        while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
            s.remove_suffix(1);
        return s;
    };
    text = trim(text);
    if (text.starts_with("e(") && text.ends_with(")")) {
        auto name = trim(text.substr(2, text.size() - 3));
        auto v = q.find_vertex(name);
        if (!v)
            throw std::invalid_argument("unknown vertex '" + std::string(name) + "'");
        return Path::lazy(*v);
    }
    std::vector<Arrow> arrows;
    std::size_t begin = 0;
    while (true) {
        std::size_t star = text.find('*', begin);
        auto name = trim(text.substr(begin, star == std::string_view::npos ? std::string_view::npos : star - begin));
        auto a = q.find_arrow(name);
        if (!a)
            throw std::invalid_argument("unknown arrow '" + std::string(name) + "'");
        arrows.push_back(*a);
        if (star == std::string_view::npos)
            break;
        begin = star + 1;
    }
    return Path::from_arrows(q, std::move(arrows));
}

}  // namespace piq
