#ifndef ZARISKI_IO_HPP
#define ZARISKI_IO_HPP

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "zariski/curve.hpp"

namespace zariski::io {

inline constexpr const char* kDatasetFormat = "zariski-dataset/1";
inline constexpr const char* kReportFormat = "zariski-report/1";

struct DatasetLine {
    BitangentLine line;
    /// (c, d, e) when the dataset fixes the section explicitly.
    std::optional<BitangentSection> section;

    friend bool operator==(const DatasetLine&, const DatasetLine&) = default;
};

struct Dataset {
    FieldPtr field;
    QuarticCurve curve;
    std::vector<DatasetLine> lines;
    std::string description;
    std::string provenance;

    int field_order() const { return field->order(); }
    /// Position (0-based) of a line given by name or by 1-based position text.
    /// Throws SchemaError for unknown references.
    std::size_t resolve(const std::string& reference) const;

    friend bool operator==(const Dataset& lhs, const Dataset& rhs);
};

/// Klein quartic x^3 + t^3 x + t over Q(zeta_28) with its 28 bitangents.
/// Positions 1..7 are the lines L1..L7 with their fixed sections; the other
/// 21 lines are named L{family}_{j} and carry no section.
Dataset builtin_klein();

/// Named constants of the Klein dataset inside Q(zeta_28).
struct KleinConstants {
    FieldPtr field;
    FieldElement zeta7;    // zeta_28^4
    FieldElement sqrt_m1;  // zeta_28^7
    FieldElement eps1;     // zeta7 + zeta7^-1
    FieldElement eps2;     // zeta7^2 + zeta7^-2
    FieldElement eps3;     // zeta7^4 + zeta7^-4

    FieldElement z(long long k) const { return zeta7.pow(k); }
};
KleinConstants klein_constants();

/// The line L_{family, j}, family in 0..3, j in 0..6.
BitangentLine klein_line(const KleinConstants& k, int family, int j);

nlohmann::json element_to_json(const FieldElement& value);
FieldElement element_from_json(const FieldPtr& field, const nlohmann::json& value, const std::string& where);

nlohmann::json dataset_to_json(const Dataset& dataset);
Dataset dataset_from_json(const nlohmann::json& document);

std::string save_dataset(const Dataset& dataset);
Dataset load_dataset(const std::string& text);
void write_dataset_file(const std::filesystem::path& path, const Dataset& dataset);
Dataset read_dataset_file(const std::filesystem::path& path);

/// Hex SHA-256 of the canonical serialisation.
std::string dataset_digest(const Dataset& dataset);

struct Report {
    std::vector<std::string> command;
    std::string input;         // path, or "builtin:klein"
    std::string input_digest;
    nlohmann::json results = nlohmann::json::object();
    nlohmann::json diagnostics = nlohmann::json::array();
    std::optional<nlohmann::json> oracle;
    std::string status = "ok";  // ok | domain-error | usage-error

    friend bool operator==(const Report&, const Report&) = default;
};

nlohmann::json report_to_json(const Report& report);
Report report_from_json(const nlohmann::json& document);
std::string save_report(const Report& report);
Report load_report(const std::string& text);

}  // namespace zariski::io

#endif  // ZARISKI_IO_HPP
