#include "specgap/report_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "specgap/errors.hpp"

namespace specgap {

namespace {
std::string format_double(double v, int digits) {
  if (std::isnan(v)) return "\"nan\"";
  if (std::isinf(v)) return v > 0 ? "\"inf\"" : "\"-inf\"";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}
}  // namespace

std::string format_json_double(double v) { return format_double(v, 17); }
std::string format_csv_double(double v) { return format_double(v, 12); }

std::string json_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size() + 2);
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  return out;
}

void JsonWriter::separator() {
  if (!first_in_scope_.empty() && !pending_key_) {
    if (!first_in_scope_.back()) out_ += ",";
    first_in_scope_.back() = false;
    out_ += "\n";
    indent();
  }
  pending_key_ = false;
}

void JsonWriter::indent() { out_.append(2 * first_in_scope_.size(), ' '); }

JsonWriter& JsonWriter::begin_object() {
  separator();
  out_ += "{";
  first_in_scope_.push_back(true);
  return *this;
}

JsonWriter& JsonWriter::end_object() {
  bool empty = first_in_scope_.back();
  first_in_scope_.pop_back();
  if (!empty) {
    out_ += "\n";
    indent();
  }
  out_ += "}";
  return *this;
}

JsonWriter& JsonWriter::begin_array() {
  separator();
  out_ += "[";
  first_in_scope_.push_back(true);
  return *this;
}

JsonWriter& JsonWriter::end_array() {
  bool empty = first_in_scope_.back();
  first_in_scope_.pop_back();
  if (!empty) {
    out_ += "\n";
    indent();
  }
  out_ += "]";
  return *this;
}

JsonWriter& JsonWriter::key(const std::string& k) {
  separator();
  out_ += "\"" + json_escape(k) + "\": ";
  pending_key_ = true;
  return *this;
}

JsonWriter& JsonWriter::value(double v) {
  separator();
  out_ += format_json_double(v);
  return *this;
}

JsonWriter& JsonWriter::value(int v) {
  separator();
  out_ += std::to_string(v);
  return *this;
}

JsonWriter& JsonWriter::value(long long v) {
  separator();
  out_ += std::to_string(v);
  return *this;
}

JsonWriter& JsonWriter::value(std::size_t v) {
  separator();
  out_ += std::to_string(v);
  return *this;
}

JsonWriter& JsonWriter::value(bool v) {
  separator();
  out_ += v ? "true" : "false";
  return *this;
}

JsonWriter& JsonWriter::value(const char* s) { return value(std::string(s)); }

JsonWriter& JsonWriter::value(const std::string& s) {
  separator();
  out_ += "\"" + json_escape(s) + "\"";
  return *this;
}

JsonWriter& JsonWriter::value_array(const std::vector<double>& xs) {
  begin_array();
  for (double x : xs) value(x);
  return end_array();
}

JsonWriter& JsonWriter::null_value() {
  separator();
  out_ += "null";
  return *this;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  require(f.good(), ErrorCode::invalid_argument, "cannot open output file: " + path);
  f << content;
  require(f.good(), ErrorCode::invalid_argument, "failed writing output file: " + path);
}

}  // namespace specgap
