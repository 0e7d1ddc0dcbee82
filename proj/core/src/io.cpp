#include "stablelat/io.hpp"

#include <charconv>
#include <cstdint>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <system_error>
#include <vector>

#include "json.hpp"
#include "stablelat/errors.hpp"
#include "stablelat/types.hpp"

#include "function_spec_detail.hpp"

namespace stablelat {
namespace io {

using nlohmann::json;

std::string format_double(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

namespace {

std::string format_int(std::int64_t v) {
    char buf[24];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

double parse_double(std::string_view s, const char* what) {
    double v = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
        throw config_error(std::string("malformed number in ") + what + ": '" + std::string(s) +
                           "'");
    return v;
}

std::int64_t parse_int(std::string_view s, const char* what) {
    std::int64_t v = 0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
        throw config_error(std::string("malformed integer in ") + what + ": '" + std::string(s) +
                           "'");
    return v;
}

void write_manifest_line(std::ostream& os, const Manifest& manifest) {
    json j(manifest);  // std::map keeps keys sorted
    os << "# " << j.dump() << "\n";
}

Manifest read_manifest_line(std::istream& is, const char* what) {
    std::string line;
    if (!std::getline(is, line) || line.rfind("# ", 0) != 0)
        throw config_error(std::string(what) + ": missing '# {...}' manifest line");
    Manifest out;
    try {
        const json j = json::parse(line.substr(2));
        if (!j.is_object()) throw config_error(std::string(what) + ": manifest is not an object");
        for (const auto& [key, value] : j.items())
            out[key] = value.is_string() ? value.get<std::string>() : value.dump();
    } catch (const json::exception& e) {
        throw config_error(std::string(what) + ": manifest JSON malformed: " + e.what());
    }
    return out;
}

std::vector<std::string_view> split_csv(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = line.find(',', start);
        if (pos == std::string_view::npos) {
            out.push_back(line.substr(start));
            return out;
        }
        out.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
}

void check_label(const std::string& label) {
    if (label.find(',') != std::string::npos || label.find('\n') != std::string::npos)
        throw config_error("labels must not contain commas or line breaks: '" + label + "'");
}

std::string manifest_value(const Manifest& m, const std::string& key, const char* what) {
    const auto it = m.find(key);
    if (it == m.end())
        throw config_error(std::string(what) + ": manifest key '" + key + "' missing");
    return it->second;
}

}  // namespace

void write_sample_batch(std::ostream& os, const SampleBatch& batch, const Manifest& manifest) {
    if (batch.labels.size() != batch.cols)
        throw config_error("batch needs one label per column");
    Manifest full = manifest;
    full["batch.rows"] = format_int(static_cast<std::int64_t>(batch.rows));
    full["batch.cols"] = format_int(static_cast<std::int64_t>(batch.cols));
    write_manifest_line(os, full);
    for (std::size_t c = 0; c < batch.cols; ++c) {
        check_label(batch.labels[c]);
        os << batch.labels[c] << (c + 1 < batch.cols ? "," : "");
    }
    os << "\n";
    for (std::size_t r = 0; r < batch.rows; ++r) {
        for (std::size_t c = 0; c < batch.cols; ++c)
            os << format_double(batch.at(r, c)) << (c + 1 < batch.cols ? "," : "");
        os << "\n";
    }
}

SampleBatch read_sample_batch(std::istream& is, Manifest* manifest) {
    const Manifest m = read_manifest_line(is, "sample batch");
    SampleBatch batch;
    std::string line;
    if (!std::getline(is, line)) throw config_error("sample batch: missing header row");
    for (const auto& label : split_csv(line)) batch.labels.emplace_back(label);
    batch.cols = batch.labels.size();
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        const auto fields = split_csv(line);
        if (fields.size() != batch.cols)
            throw config_error("sample batch: row width does not match header");
        for (const auto& f : fields) batch.values.push_back(parse_double(f, "sample batch"));
        ++batch.rows;
    }
    const auto declared = parse_int(manifest_value(m, "batch.rows", "sample batch"), "batch.rows");
    if (declared != static_cast<std::int64_t>(batch.rows))
        throw config_error("sample batch: row count does not match manifest");
    if (manifest) *manifest = m;
    return batch;
}

void write_grid_function(std::ostream& os, const GridFunction& grid, const Manifest& manifest) {
    if (grid.values.size() != grid.grid.count)
        throw config_error("grid function needs one value per grid point");
    Manifest full = manifest;
    full["grid.origin"] = format_double(grid.grid.origin);
    full["grid.spacing"] = format_double(grid.grid.spacing);
    full["grid.count"] = format_int(static_cast<std::int64_t>(grid.grid.count));
    write_manifest_line(os, full);
    os << "x,value\n";
    for (std::size_t i = 0; i < grid.grid.count; ++i)
        os << format_double(grid.grid.point(i)) << "," << format_double(grid.values[i]) << "\n";
}

GridFunction read_grid_function(std::istream& is, Manifest* manifest) {
    const Manifest m = read_manifest_line(is, "grid function");
    const GridSpec spec(parse_double(manifest_value(m, "grid.origin", "grid"), "grid.origin"),
                        parse_double(manifest_value(m, "grid.spacing", "grid"), "grid.spacing"),
                        static_cast<std::size_t>(
                            parse_int(manifest_value(m, "grid.count", "grid"), "grid.count")));
    std::string line;
    if (!std::getline(is, line) || line != "x,value")
        throw config_error("grid function: missing 'x,value' header");
    GridFunction out{spec, {}};
    out.values.reserve(spec.count);
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        const auto fields = split_csv(line);
        if (fields.size() != 2) throw config_error("grid function: expected two columns");
        out.values.push_back(parse_double(fields[1], "grid value"));
    }
    if (out.values.size() != spec.count)
        throw config_error("grid function: value count does not match manifest");
    if (manifest) *manifest = m;
    return out;
}

namespace {

const char* scheme_name(Scheme scheme) {
    return scheme == Scheme::ExactSignedPower ? "exact-signed-power" : "cell-average";
}

Scheme scheme_from_name(const std::string& name) {
    if (name == "cell-average") return Scheme::CellAverage;
    if (name == "exact-signed-power") return Scheme::ExactSignedPower;
    throw config_error("unknown scheme '" + name + "'");
}

}  // namespace

void write_coefficients(std::ostream& os, const CellCoefficients& coeffs,
                        const Manifest& manifest) {
    Manifest full = manifest;
    full["coeffs.h"] = format_double(coeffs.h());
    full["coeffs.dim"] = format_int(coeffs.dim());
    full["coeffs.alpha"] = format_double(coeffs.alpha());
    full["coeffs.scheme"] = scheme_name(coeffs.scheme());
    full["coeffs.tail_mass_bound"] = format_double(coeffs.tail_mass_bound());
    for (int i = 0; i < coeffs.dim(); ++i) {
        full["coeffs.window.lo" + std::to_string(i)] = format_int(coeffs.window().lo[i]);
        full["coeffs.window.hi" + std::to_string(i)] = format_int(coeffs.window().hi[i]);
    }
    write_manifest_line(os, full);
    os << (coeffs.dim() == 2 ? "k0,k1,value\n" : "k0,value\n");
    for (const auto& e : coeffs.entries()) {
        os << format_int(e.index.k[0]);
        if (coeffs.dim() == 2) os << "," << format_int(e.index.k[1]);
        os << "," << format_double(e.value) << "\n";
    }
}

CellCoefficients read_coefficients(std::istream& is, Manifest* manifest) {
    const Manifest m = read_manifest_line(is, "coefficients");
    const auto dim = static_cast<int>(parse_int(manifest_value(m, "coeffs.dim", "coefficients"),
                                                "coeffs.dim"));
    if (dim != 1 && dim != 2) throw config_error("coefficients: dim must be 1 or 2");
    const double h = parse_double(manifest_value(m, "coeffs.h", "coefficients"), "coeffs.h");
    const double alpha =
        parse_double(manifest_value(m, "coeffs.alpha", "coefficients"), "coeffs.alpha");
    const Scheme scheme =
        scheme_from_name(manifest_value(m, "coeffs.scheme", "coefficients"));
    const double bound = parse_double(
        manifest_value(m, "coeffs.tail_mass_bound", "coefficients"), "coeffs.tail_mass_bound");
    IndexBox window;
    window.dim = dim;
    for (int i = 0; i < dim; ++i) {
        window.lo[i] = parse_int(
            manifest_value(m, "coeffs.window.lo" + std::to_string(i), "coefficients"), "window");
        window.hi[i] = parse_int(
            manifest_value(m, "coeffs.window.hi" + std::to_string(i), "coefficients"), "window");
    }
    std::string line;
    if (!std::getline(is, line) || line != (dim == 2 ? "k0,k1,value" : "k0,value"))
        throw config_error("coefficients: missing index/value header");
    std::vector<CellEntry> entries;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        const auto fields = split_csv(line);
        if (fields.size() != static_cast<std::size_t>(dim) + 1)
            throw config_error("coefficients: row width does not match dim");
        CellEntry e;
        e.index.k[0] = parse_int(fields[0], "cell index");
        if (dim == 2) e.index.k[1] = parse_int(fields[1], "cell index");
        e.value = parse_double(fields.back(), "cell value");
        entries.push_back(e);
    }
    if (manifest) *manifest = m;
    return CellCoefficients(h, dim, alpha, scheme, window, std::move(entries), bound);
}

namespace {

json node_to_json(const detail::Node& node);

json vector_to_json(const std::vector<double>& v) { return json(v); }

json node_to_json(const detail::Node& node) {
    json j;
    if (const auto* p = dynamic_cast<const detail::IndicatorBoxNode*>(&node)) {
        j["type"] = "indicator_box";
        j["lo"] = vector_to_json(p->lo());
        j["hi"] = vector_to_json(p->hi());
    } else if (const auto* p = dynamic_cast<const detail::GaussBumpNode*>(&node)) {
        j["type"] = "gauss_bump";
        j["center"] = vector_to_json(p->center());
        j["width"] = p->width();
    } else if (const auto* p = dynamic_cast<const detail::PowerTailNode*>(&node)) {
        j["type"] = "power_tail";
        j["delta"] = p->delta();
        j["cutoff"] = p->cutoff();
    } else if (const auto* p = dynamic_cast<const detail::LfsmKernelNode*>(&node)) {
        j["type"] = "lfsm_kernel";
        j["t"] = p->t();
        j["H"] = p->H();
        j["alpha"] = p->alpha();
        j["a"] = p->a();
        j["b"] = p->b();
    } else if (const auto* p = dynamic_cast<const detail::ZeroNode*>(&node)) {
        j["type"] = "zero";
        j["dim"] = p->dim();
    } else if (const auto* p = dynamic_cast<const detail::LinearCombinationNode*>(&node)) {
        j["type"] = "linear_combination";
        json terms = json::array();
        for (const auto& [coeff, child] : p->terms()) {
            json term;
            term["coeff"] = coeff;
            term["spec"] = node_to_json(*child);
            terms.push_back(std::move(term));
        }
        j["terms"] = std::move(terms);
    } else if (const auto* p = dynamic_cast<const detail::ShiftNode*>(&node)) {
        j["type"] = "shift";
        j["offset"] = vector_to_json(p->offset());
        j["spec"] = node_to_json(*p->inner());
    } else if (const auto* p = dynamic_cast<const detail::ScaleNode*>(&node)) {
        j["type"] = "scale";
        j["factor"] = p->factor();
        j["spec"] = node_to_json(*p->inner());
    } else {
        throw config_error("unserializable function spec node");
    }
    return j;
}

std::vector<double> json_to_vector(const json& j, const char* what) {
    if (!j.is_array() || j.empty())
        throw config_error(std::string("spec field '") + what + "' must be a nonempty array");
    std::vector<double> out;
    for (const auto& v : j) {
        if (!v.is_number()) throw config_error(std::string("spec field '") + what +
                                               "' must contain numbers");
        out.push_back(v.get<double>());
    }
    return out;
}

double json_number(const json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_number())
        throw config_error(std::string("spec field '") + key + "' must be a number");
    return j[key].get<double>();
}

FunctionSpec json_to_spec(const json& j) {
    if (!j.is_object() || !j.contains("type") || !j["type"].is_string())
        throw config_error("spec JSON must be an object with a string 'type'");
    const std::string type = j["type"].get<std::string>();
    if (type == "indicator_box")
        return FunctionSpec::indicator_box(json_to_vector(j.value("lo", json()), "lo"),
                                           json_to_vector(j.value("hi", json()), "hi"));
    if (type == "gauss_bump")
        return FunctionSpec::gauss_bump(json_to_vector(j.value("center", json()), "center"),
                                        json_number(j, "width"));
    if (type == "power_tail")
        return FunctionSpec::power_tail(json_number(j, "delta"), json_number(j, "cutoff"));
    if (type == "lfsm_kernel")
        return FunctionSpec::lfsm_kernel(json_number(j, "t"), json_number(j, "H"),
                                         json_number(j, "alpha"), json_number(j, "a"),
                                         json_number(j, "b"));
    if (type == "zero") {
        if (!j.contains("dim") || !j["dim"].is_number_integer())
            throw config_error("spec field 'dim' must be an integer");
        return FunctionSpec::zero(j["dim"].get<int>());
    }
    if (type == "linear_combination") {
        if (!j.contains("terms") || !j["terms"].is_array())
            throw config_error("spec field 'terms' must be an array");
        std::vector<std::pair<double, FunctionSpec>> terms;
        for (const auto& term : j["terms"]) {
            if (!term.is_object() || !term.contains("spec"))
                throw config_error("each term needs 'coeff' and 'spec'");
            terms.emplace_back(json_number(term, "coeff"), json_to_spec(term["spec"]));
        }
        return FunctionSpec::linear_combination(std::move(terms));
    }
    if (type == "shift") {
        if (!j.contains("spec")) throw config_error("shift needs an inner 'spec'");
        return FunctionSpec::shift(json_to_spec(j["spec"]),
                                   json_to_vector(j.value("offset", json()), "offset"));
    }
    if (type == "scale") {
        if (!j.contains("spec")) throw config_error("scale needs an inner 'spec'");
        return FunctionSpec::scale(json_to_spec(j["spec"]), json_number(j, "factor"));
    }
    throw config_error("unknown spec type '" + type + "'");
}

}  // namespace

std::string spec_to_json(const FunctionSpec& spec) { return node_to_json(spec.node()).dump(); }

FunctionSpec spec_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw config_error(std::string("spec JSON malformed: ") + e.what());
    }
    return json_to_spec(j);
}

FunctionSpec parse_spec_argument(const std::string& arg) {
    if (!arg.empty() && arg.front() == '@') {
        std::ifstream file(arg.substr(1));
        if (!file) throw config_error("cannot open spec file '" + arg.substr(1) + "'");
        std::ostringstream buffer;
        buffer << file.rdbuf();
        return spec_from_json(buffer.str());
    }
    return spec_from_json(arg);
}

}  // namespace io
}  // namespace stablelat
