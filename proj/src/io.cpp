#include "zariski/io.hpp"

#include <array>
#include <fstream>
#include <iomanip>
#include <sstream>

#include <openssl/evp.h>

#include "zariski/errors.hpp"

namespace zariski::io {

using nlohmann::json;

// ---------------------------------------------------------------------------
// Klein dataset

KleinConstants klein_constants() {
    const FieldPtr field = CyclotomicField::make(28);
    const FieldElement zeta7 = FieldElement::zeta_power(field, 4);
    const FieldElement sqrt_m1 = FieldElement::zeta_power(field, 7);
    auto z = [&](long long k) { return zeta7.pow(k); };
    return {field, zeta7, sqrt_m1, z(1) + z(-1), z(2) + z(-2), z(4) + z(-4)};
}

BitangentLine klein_line(const KleinConstants& k, int family, int j) {
    const FieldElement one = FieldElement::one(k.field);
    // x_{f,j}(t) = -zeta^j A_f t - zeta^{3j} B_f
    FieldElement slope = one;
    FieldElement offset = one;
    switch (family) {
        case 0: break;
        case 1: slope = k.eps1 * k.eps1; offset = (k.eps3 * k.eps3).inverse(); break;
        case 2: slope = k.eps2 * k.eps2; offset = (k.eps1 * k.eps1).inverse(); break;
        case 3: slope = k.eps3 * k.eps3; offset = (k.eps2 * k.eps2).inverse(); break;
        default: throw std::invalid_argument("Klein bitangent family must be 0..3");
    }
    if (j < 0 || j > 6) throw std::invalid_argument("Klein bitangent index j must be 0..6");
    return {"L" + std::to_string(family) + "_" + std::to_string(j), -(k.z(j) * slope), -(k.z(3 * j) * offset)};
}

Dataset builtin_klein() {
    const KleinConstants k = klein_constants();
    const FieldPtr& field = k.field;
    auto z = [&](long long e) { return k.z(e); };
    auto integer = [&](long v) { return FieldElement::rational(field, Rational(v)); };
    const FieldElement& i = k.sqrt_m1;

    // F(t, x) = x^3 + t^3 x + t
    const Poly p(field);
    const Poly q = Poly::from_rationals(field, {0, 0, 0, 1});
    const Poly r = Poly::from_rationals(field, {0, 1});
    QuarticCurve curve(p, q, r);

    const FieldElement a1 = z(5).scaled(2) + z(4) + z(3) + z(2).scaled(2) + integer(4);
    const FieldElement b1 = z(5).scaled(3) + z(4) + z(3) + z(2).scaled(3) + integer(3);
    const FieldElement a3 = z(5).scaled(2) + z(4) + z(1) + integer(2) + z(6).scaled(4);
    const FieldElement b3 = z(4).scaled(3) + z(3) + integer(1) + z(6).scaled(3) + z(5).scaled(3);
    const FieldElement a7 = z(2) + integer(2) + z(6).scaled(2) + z(4) + z(3).scaled(4);
    const FieldElement b7 = z(5) + z(3).scaled(3) + z(2).scaled(3) + integer(1) + z(6).scaled(3);
    const FieldElement one = integer(1);

    struct Printed {
        int family;
        int j;
        FieldElement scale;  // y = scale * (t^2 + linear t + constant)
        FieldElement linear;
        FieldElement constant;
    };
    const std::array<Printed, 7> printed{{
        {0, 0, i, one, one},
        {1, 0, i * k.eps1, a1, b1},
        {1, 1, i * z(4) * k.eps1, z(2) * a1, z(4) * b1},
        {3, 3, i * z(5) * k.eps3, a3, b3},
        {1, 6, i * z(3) * k.eps1, z(5) * a1, z(3) * b1},
        {3, 4, i * z(2) * k.eps3, z(2) * a3, z(4) * b3},
        {2, 5, i * z(6) * k.eps2, a7, b7},
    }};

    Dataset dataset{field, curve, {}, {}, {}};
    dataset.description =
        "Klein quartic F(t,x) = x^3 + t^3 x + t over Q(zeta_28) with its 28 bitangents "
        "x = a t + b. zeta_7 = zeta_28^4, sqrt(-1) = zeta_28^7. Lines L1..L7 carry fixed sections "
        "y = c t^2 + d t + e; the remaining lines are named L<family>_<j>.";
    dataset.provenance =
        "L1..L7 = L0_0, L1_0, L1_1, L3_3, L1_6, L3_4, L2_5 with "
        "x_{0,j} = -z^j t - z^{3j}, x_{1,j} = -z^j e1^2 t - z^{3j} e3^-2, "
        "x_{2,j} = -z^j e2^2 t - z^{3j} e1^-2, x_{3,j} = -z^j e3^2 t - z^{3j} e2^-2, "
        "e1 = z + z^-1, e2 = z^2 + z^-2, e3 = z^4 + z^-4, z = zeta_7";

    std::array<std::array<bool, 7>, 4> used{};
    for (std::size_t n = 0; n < printed.size(); ++n) {
        const auto& pr = printed[n];
        BitangentLine line = klein_line(k, pr.family, pr.j);
        line.name = "L" + std::to_string(n + 1);
        BitangentSection section{line, pr.scale, pr.scale * pr.linear, pr.scale * pr.constant};
        dataset.lines.push_back({line, section});
        used[pr.family][pr.j] = true;
    }
    for (int family = 0; family < 4; ++family)
        for (int j = 0; j < 7; ++j)
            if (!used[family][j]) dataset.lines.push_back({klein_line(k, family, j), std::nullopt});
    return dataset;
}

// ---------------------------------------------------------------------------
// Dataset serialisation

json element_to_json(const FieldElement& value) {
    json out = json::array();
    for (const auto& c : value.coords()) out.push_back(format_rational(c));
    return out;
}

FieldElement element_from_json(const FieldPtr& field, const json& value, const std::string& where) {
    if (!value.is_array()) throw SchemaError(where + ": expected an array of rationals");
    if (value.size() != field->degree())
        throw SchemaError(where + ": expected " + std::to_string(field->degree()) + " coordinates, got " +
                          std::to_string(value.size()));
    std::vector<Rational> coords;
    coords.reserve(value.size());
    for (std::size_t m = 0; m < value.size(); ++m) {
        if (!value[m].is_string())
            throw SchemaError(where + "[" + std::to_string(m) + "]: expected a \"p/q\" string");
        try {
            coords.push_back(parse_rational(value[m].get<std::string>()));
        } catch (const SchemaError& e) {
            throw SchemaError(where + "[" + std::to_string(m) + "]: " + e.what());
        }
    }
    return FieldElement(field, std::move(coords));
}

namespace {

json poly_to_json(const Poly& p) {
    json out = json::array();
    for (const auto& c : p.coeffs()) out.push_back(element_to_json(c));
    return out;
}

Poly poly_from_json(const FieldPtr& field, const json& value, const std::string& where) {
    if (!value.is_array()) throw SchemaError(where + ": expected an array of field elements");
    std::vector<FieldElement> coeffs;
    for (std::size_t k = 0; k < value.size(); ++k)
        coeffs.push_back(element_from_json(field, value[k], where + "[" + std::to_string(k) + "]"));
    return Poly(field, std::move(coeffs));
}

const json& require(const json& object, const char* key, const std::string& where) {
    if (!object.is_object()) throw SchemaError(where + ": expected an object");
    auto it = object.find(key);
    if (it == object.end()) throw SchemaError(where + ": missing field '" + key + "'");
    return *it;
}

std::string require_string(const json& object, const char* key, const std::string& where) {
    const json& v = require(object, key, where);
    if (!v.is_string()) throw SchemaError(where + "." + key + ": expected a string");
    return v.get<std::string>();
}

std::string sha256_hex(const std::string& data) {
    std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
    unsigned int length = 0;
    if (EVP_Digest(data.data(), data.size(), digest.data(), &length, EVP_sha256(), nullptr) != 1)
        throw std::runtime_error("SHA-256 digest failed");
    std::ostringstream os;
    for (unsigned int i = 0; i < length; ++i) os << std::hex << std::setw(2) << std::setfill('0') << int(digest[i]);
    return os.str();
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw SchemaError("cannot open '" + path.string() + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

}  // namespace

bool operator==(const Dataset& lhs, const Dataset& rhs) {
    return lhs.field->order() == rhs.field->order() && lhs.curve == rhs.curve && lhs.lines == rhs.lines &&
           lhs.description == rhs.description && lhs.provenance == rhs.provenance;
}

std::size_t Dataset::resolve(const std::string& reference) const {
    for (std::size_t n = 0; n < lines.size(); ++n)
        if (lines[n].line.name == reference) return n;
    if (!reference.empty() && reference.find_first_not_of("0123456789") == std::string::npos) {
        const unsigned long position = std::stoul(reference);
        if (position >= 1 && position <= lines.size()) return position - 1;
    }
    throw SchemaError("unknown line reference '" + reference + "'");
}

json dataset_to_json(const Dataset& dataset) {
    json out;
    out["format"] = kDatasetFormat;
    out["field_order"] = dataset.field_order();
    out["description"] = dataset.description;
    out["provenance"] = dataset.provenance;
    out["curve"] = {{"p", poly_to_json(dataset.curve.p())},
                    {"q", poly_to_json(dataset.curve.q())},
                    {"r", poly_to_json(dataset.curve.r())}};
    json lines = json::array();
    for (const auto& entry : dataset.lines) {
        json item;
        item["name"] = entry.line.name;
        item["a"] = element_to_json(entry.line.a);
        item["b"] = element_to_json(entry.line.b);
        if (entry.section)
            item["section"] = {{"c", element_to_json(entry.section->c)},
                               {"d", element_to_json(entry.section->d)},
                               {"e", element_to_json(entry.section->e)}};
        lines.push_back(std::move(item));
    }
    out["bitangents"] = std::move(lines);
    return out;
}

Dataset dataset_from_json(const json& document) {
    const std::string root = "dataset";
    if (require_string(document, "format", root) != kDatasetFormat)
        throw SchemaError("dataset.format: expected '" + std::string(kDatasetFormat) + "'");
    const json& order = require(document, "field_order", root);
    if (!order.is_number_integer() || order.get<long long>() < 1 || order.get<long long>() > 100000)
        throw SchemaError("dataset.field_order: expected a positive integer");
    const FieldPtr field = CyclotomicField::make(order.get<int>());

    const json& curve = require(document, "curve", root);
    Poly p = poly_from_json(field, require(curve, "p", "curve"), "curve.p");
    Poly q = poly_from_json(field, require(curve, "q", "curve"), "curve.q");
    Poly r = poly_from_json(field, require(curve, "r", "curve"), "curve.r");
    std::optional<QuarticCurve> quartic;
    try {
        quartic.emplace(std::move(p), std::move(q), std::move(r));
    } catch (const InvalidCurve& e) {
        throw SchemaError(std::string("curve: ") + e.what());
    }

    Dataset dataset{field, *quartic, {}, {}, {}};
    if (auto it = document.find("description"); it != document.end() && it->is_string())
        dataset.description = it->get<std::string>();
    if (auto it = document.find("provenance"); it != document.end() && it->is_string())
        dataset.provenance = it->get<std::string>();

    const json& lines = require(document, "bitangents", root);
    if (!lines.is_array()) throw SchemaError("dataset.bitangents: expected an array");
    for (std::size_t n = 0; n < lines.size(); ++n) {
        const std::string where = "bitangents[" + std::to_string(n) + "]";
        const json& item = lines[n];
        BitangentLine line{require_string(item, "name", where),
                           element_from_json(field, require(item, "a", where), where + ".a"),
                           element_from_json(field, require(item, "b", where), where + ".b")};
        std::optional<BitangentSection> section;
        if (auto it = item.find("section"); it != item.end() && !it->is_null()) {
            const std::string sw = where + ".section";
            section = BitangentSection{line, element_from_json(field, require(*it, "c", sw), sw + ".c"),
                                       element_from_json(field, require(*it, "d", sw), sw + ".d"),
                                       element_from_json(field, require(*it, "e", sw), sw + ".e")};
        }
        dataset.lines.push_back({std::move(line), std::move(section)});
    }
    return dataset;
}

std::string save_dataset(const Dataset& dataset) { return dataset_to_json(dataset).dump(2) + "\n"; }

Dataset load_dataset(const std::string& text) {
    json document;
    try {
        document = json::parse(text);
    } catch (const json::parse_error& e) {
        throw SchemaError(std::string("dataset is not valid JSON: ") + e.what());
    }
    return dataset_from_json(document);
}

void write_dataset_file(const std::filesystem::path& path, const Dataset& dataset) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw SchemaError("cannot write '" + path.string() + "'");
    out << save_dataset(dataset);
}

Dataset read_dataset_file(const std::filesystem::path& path) { return load_dataset(read_file(path)); }

std::string dataset_digest(const Dataset& dataset) { return sha256_hex(dataset_to_json(dataset).dump()); }

// ---------------------------------------------------------------------------
// Reports

json report_to_json(const Report& report) {
    json out;
    out["format"] = kReportFormat;
    out["command"] = report.command;
    out["input"] = report.input;
    out["input_digest"] = report.input_digest;
    out["status"] = report.status;
    out["results"] = report.results;
    out["diagnostics"] = report.diagnostics;
    if (report.oracle) out["oracle"] = *report.oracle;
    return out;
}

Report report_from_json(const json& document) {
    const std::string root = "report";
    if (require_string(document, "format", root) != kReportFormat)
        throw SchemaError("report.format: expected '" + std::string(kReportFormat) + "'");
    Report report;
    const json& command = require(document, "command", root);
    if (!command.is_array()) throw SchemaError("report.command: expected an array of strings");
    for (const auto& arg : command) {
        if (!arg.is_string()) throw SchemaError("report.command: expected an array of strings");
        report.command.push_back(arg.get<std::string>());
    }
    report.input = require_string(document, "input", root);
    report.input_digest = require_string(document, "input_digest", root);
    report.status = require_string(document, "status", root);
    report.results = require(document, "results", root);
    report.diagnostics = require(document, "diagnostics", root);
    if (auto it = document.find("oracle"); it != document.end()) report.oracle = *it;
    return report;
}

std::string save_report(const Report& report) { return report_to_json(report).dump(2) + "\n"; }

Report load_report(const std::string& text) {
    try {
        return report_from_json(json::parse(text));
    } catch (const json::parse_error& e) {
        throw SchemaError(std::string("report is not valid JSON: ") + e.what());
    }
}

}  // namespace zariski::io
