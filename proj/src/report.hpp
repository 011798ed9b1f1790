#pragma once

#include <string>

#include <json.hpp>

#include "piq/classifier.hpp"
#include "piq/identity.hpp"
#include "piq/swan.hpp"

namespace piq::report {

using nlohmann::ordered_json;

inline constexpr const char* schema_version = "piq-report/1";

ordered_json element(const AlgebraHandle& algebra, const Element& x);
ordered_json cycle(const Quiver& q, const SimpleCycle& c);
ordered_json pi_verdict(const Quiver& q, const PiVerdict& verdict);
ordered_json verification(const AlgebraHandle& algebra, const VerificationReport& report, bool timing);
ordered_json identity_space(const IdentitySpace& space);
ordered_json loc_graded(const AlgebraHandle& algebra, const LocAGradedVerdict& verdict);
ordered_json swan(const AlgebraHandle& algebra, const SwanQuiver& swan, const std::vector<std::pair<Vertex, Vertex>>& pairs);

/// Indented `key: value` rendering of a report for terminals.
std::string to_text(const ordered_json& report);

}  // namespace piq::report
