#include "mixcast/report.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <stdexcept>

namespace mixcast {

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string escape_json(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            default: out += c;
        }
    }
    return out;
}

void JsonWriter::comma() {
    if (!first_in_scope_.empty()) {
        if (!first_in_scope_.back()) out_ += ",";
        first_in_scope_.back() = false;
    }
}

JsonWriter& JsonWriter::begin_object() {
    comma();
    out_ += "{";
    first_in_scope_.push_back(true);
    return *this;
}

JsonWriter& JsonWriter::end_object() {
    out_ += "}";
    first_in_scope_.pop_back();
    return *this;
}

JsonWriter& JsonWriter::begin_array(const std::string& key) {
    comma();
    out_ += "\"" + escape_json(key) + "\":[";
    first_in_scope_.push_back(true);
    return *this;
}

JsonWriter& JsonWriter::begin_object_in_array() {
    comma();
    out_ += "{";
    first_in_scope_.push_back(true);
    return *this;
}

JsonWriter& JsonWriter::end_array() {
    out_ += "]";
    first_in_scope_.pop_back();
    return *this;
}

JsonWriter& JsonWriter::field(const std::string& key, const std::string& value) {
    comma();
    out_ += "\"" + escape_json(key) + "\":\"" + escape_json(value) + "\"";
    return *this;
}

JsonWriter& JsonWriter::field(const std::string& key, const char* value) {
    return field(key, std::string(value));
}

JsonWriter& JsonWriter::field(const std::string& key, double value) {
    comma();
    // NaN has no JSON literal; emit null (used for unidentifiable eta rows).
    out_ += "\"" + escape_json(key) + "\":" + (std::isnan(value) ? "null" : format_double(value));
    return *this;
}

JsonWriter& JsonWriter::field(const std::string& key, std::int64_t value) {
    comma();
    out_ += "\"" + escape_json(key) + "\":" + std::to_string(value);
    return *this;
}

JsonWriter& JsonWriter::field(const std::string& key, bool value) {
    comma();
    out_ += "\"" + escape_json(key) + "\":" + (value ? "true" : "false");
    return *this;
}

JsonWriter& JsonWriter::raw_field(const std::string& key, const std::string& raw) {
    comma();
    out_ += "\"" + escape_json(key) + "\":" + raw;
    return *this;
}

CsvWriter::CsvWriter(const std::vector<std::string>& header) : columns_(header.size()) {
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (i) out_ += ",";
        out_ += header[i];
    }
    out_ += "\n";
}

void CsvWriter::row(const std::vector<std::string>& cells) {
    if (cells.size() != columns_) throw std::logic_error("CsvWriter: column count mismatch");
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) out_ += ",";
        out_ += cells[i];
    }
    out_ += "\n";
}

}  // namespace mixcast
