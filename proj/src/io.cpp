#include "zlab/io.hpp"

#include <charconv>
#include <ostream>
#include <stdexcept>

namespace zlab {

std::string format_double(double x) {
    char buf[40];
    const auto res = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, res.ptr);
}

namespace {

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

std::string json_string(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            default: out += c;
        }
    }
    out += '"';
    return out;
}

void check_uniform_keys(const std::vector<ExperimentRecord>& records) {
    if (records.empty()) return;
    const auto& keys = records.front().params;
    for (const auto& r : records) {
        if (r.params.size() != keys.size())
            throw std::invalid_argument("records with mismatched param keys");
        for (size_t i = 0; i < keys.size(); ++i)
            if (r.params[i].first != keys[i].first)
                throw std::invalid_argument("records with mismatched param keys");
    }
}

}  // namespace

void write_csv(std::ostream& os, const std::vector<ExperimentRecord>& records,
               const OutputMeta& meta) {
    check_uniform_keys(records);
    os << "# tool_version=" << meta.tool_version << "\n";
    for (const auto& [k, v] : meta.config) os << "# " << k << "=" << v << "\n";
    os << "experiment_id";
    if (!records.empty())
        for (const auto& [k, v] : records.front().params) os << "," << csv_field(k);
    os << ",value_re,value_im,bound,ratio,notes\n";
    for (const auto& r : records) {
        os << csv_field(r.experiment_id);
        for (const auto& [k, v] : r.params) os << "," << csv_field(v);
        os << "," << format_double(r.value.real()) << "," << format_double(r.value.imag())
           << "," << format_double(r.bound) << "," << format_double(r.ratio) << ","
           << csv_field(r.notes) << "\n";
    }
}

void write_json(std::ostream& os, const std::vector<ExperimentRecord>& records,
                const OutputMeta& meta) {
    os << "{\n  \"meta\": {\n    \"tool_version\": " << json_string(meta.tool_version);
    for (const auto& [k, v] : meta.config)
        os << ",\n    " << json_string(k) << ": " << json_string(v);
    os << "\n  },\n  \"records\": [";
    bool first = true;
    for (const auto& r : records) {
        os << (first ? "\n" : ",\n") << "    {\"experiment_id\": "
           << json_string(r.experiment_id) << ", \"params\": {";
        first = false;
        bool pfirst = true;
        for (const auto& [k, v] : r.params) {
            os << (pfirst ? "" : ", ") << json_string(k) << ": " << json_string(v);
            pfirst = false;
        }
        os << "}, \"value_re\": " << format_double(r.value.real())
           << ", \"value_im\": " << format_double(r.value.imag())
           << ", \"bound\": " << format_double(r.bound)
           << ", \"ratio\": " << format_double(r.ratio)
           << ", \"notes\": " << json_string(r.notes) << "}";
    }
    os << "\n  ]\n}\n";
}

}  // namespace zlab
