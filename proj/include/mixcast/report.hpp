#pragma once

#include <string>
#include <vector>

namespace mixcast {

// Minimal deterministic JSON/CSV writers for the report schema
// {command, parameters, results, checks, tool_version}. Key order is
// insertion order and doubles are printed with 17 significant digits, so a
// given report always serializes to the same bytes.

std::string format_double(double v);  // %.17g; "null" for NaN in JSON context

class JsonWriter {
public:
    JsonWriter& begin_object();
    JsonWriter& end_object();
    JsonWriter& begin_array(const std::string& key);
    JsonWriter& begin_object_in_array();
    JsonWriter& end_array();
    JsonWriter& field(const std::string& key, const std::string& value);
    JsonWriter& field(const std::string& key, const char* value);
    JsonWriter& field(const std::string& key, double value);
    JsonWriter& field(const std::string& key, std::int64_t value);
    JsonWriter& field(const std::string& key, bool value);
    JsonWriter& raw_field(const std::string& key, const std::string& raw);

    std::string str() const { return out_; }

private:
    void comma();
    std::string out_;
    std::vector<bool> first_in_scope_;
};

std::string escape_json(const std::string& s);

// CSV with a fixed header row; fields joined by commas, no quoting needed
// for the numeric/label content this tool emits.
class CsvWriter {
public:
    explicit CsvWriter(const std::vector<std::string>& header);
    void row(const std::vector<std::string>& cells);
    std::string str() const { return out_; }

private:
    std::size_t columns_;
    std::string out_;
};

}  // namespace mixcast
