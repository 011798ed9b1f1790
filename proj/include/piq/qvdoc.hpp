#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "piq/path_algebra.hpp"

namespace piq {

struct SourceSpan {
    std::size_t line = 0;  // 1-based
    std::size_t column = 0;
};

/// A parsed `.qv` file. Equality ignores source spans.
struct QuiverDoc {
    std::string name;
    Quiver quiver;
    std::vector<Relation> relations;
    std::vector<SourceSpan> vertex_spans;
    std::vector<SourceSpan> arrow_spans;
    std::vector<SourceSpan> relation_spans;

    bool operator==(const QuiverDoc& other) const
    {
        return name == other.name && quiver == other.quiver && relations == other.relations;
    }
};

class ParseError : public std::runtime_error {
public:
    ParseError(std::string message, SourceSpan where);
    const std::string& message() const { return message_; }
    SourceSpan where() const { return where_; }

private:
    std::string message_;
    SourceSpan where_;
};

/**
 * Line-oriented quiver files:
 *
 *     # comment
 *     vertex <id>
 *     vertices: <id> <id> ...
 *     arrow <name>: <src> -> <tgt>
 *     relation: <arrow> <arrow> ... = 0
 *     relation: <arrow> ... = <arrow> ...
 *
 * Ids are [A-Za-z_][A-Za-z0-9_]* or integers. A vertex must be declared
 * before an arrow uses it; relations may name any arrow of the file. LF and
 * CRLF line ends are accepted. Errors are ParseError with line and column.
 */
QuiverDoc parse_quiver(std::string_view text, std::string name = {});

/// Reads and parses a file; the document is named after the file stem.
QuiverDoc load_quiver(const std::filesystem::path& file);

/// Canonical text form; parse_quiver(render_quiver(doc), doc.name) == doc.
std::string render_quiver(const QuiverDoc& doc);

AlgebraHandle make_algebra(const QuiverDoc& doc, std::size_t truncation, Field field = Field::rationals());

/**
 * A path written as `a1*a2*...` (arrow names) or `e(<vertex>)`.
 * Throws std::invalid_argument for unknown names or non-composable arrows.
 */
Path parse_path(const Quiver& q, std::string_view text);

}  // namespace piq
