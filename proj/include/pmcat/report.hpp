#pragma once

#include "pmcat/document.hpp"
#include "pmcat/hammock.hpp"
#include "pmcat/localization.hpp"
#include "pmcat/segal.hpp"
#include "pmcat/yoneda.hpp"

#include <json.hpp>

#include <string>
#include <string_view>

namespace pmcat {

using Json = nlohmann::ordered_json;

inline constexpr int kReportFormatVersion = 1;

/// Fields shared by every machine-readable report: format and toolkit version, command,
/// input file name and FNV-1a hash of its bytes.
[[nodiscard]] Json report_header(std::string_view command, const std::string& input_path, std::string_view input_bytes);

[[nodiscard]] Json to_json(const AbelianGroup& g);
[[nodiscard]] Json to_json(const std::vector<AbelianGroup>& groups);
[[nodiscard]] Json to_json(const NerveInvariants& n);
[[nodiscard]] Json to_json(const FinCategory& cat, const PropertyReport& p);
[[nodiscard]] Json to_json(const FinCategory& cat, const TwoOfSixReport& r);
[[nodiscard]] Json to_json(const ValidationReport& r);
[[nodiscard]] Json to_json(const AxiomReport& r);
[[nodiscard]] Json to_json(const FinCategory& cat, const SaturationReport& r);
[[nodiscard]] Json to_json(const FinCategory& cat, const SegalReport& r);
[[nodiscard]] Json to_json(const FinCategory& cat, const HoCategory& ho);
[[nodiscard]] Json to_json(const FinCategory& cat, const YonedaReport& r);
[[nodiscard]] Json to_json(const TruncatedSimplicialSet& s);
[[nodiscard]] Json to_json(const TruncatedBisimplicialSet& b);
[[nodiscard]] Json to_json(const RelCatDocument& doc);

/// Indented `key: value` rendering of a report.
[[nodiscard]] std::string render_text(const Json& report);

}  // namespace pmcat
