#pragma once

#include <string>
#include <vector>

namespace specgap {

/// 17 significant digits: round-trips exactly; the machine-diff surface.
std::string format_json_double(double v);
/// 12 significant digits: the human-facing CSV surface.
std::string format_csv_double(double v);

/// Tiny streaming JSON writer with deterministic key order and fixed float
/// formatting. nlohmann::json is used for parsing; output goes through this
/// so report bytes are stable across library versions.
class JsonWriter {
 public:
  JsonWriter& begin_object();
  JsonWriter& end_object();
  JsonWriter& begin_array();
  JsonWriter& end_array();
  JsonWriter& key(const std::string& k);
  JsonWriter& value(double v);
  JsonWriter& value(int v);
  JsonWriter& value(long long v);
  JsonWriter& value(std::size_t v);
  JsonWriter& value(bool v);
  JsonWriter& value(const char* s);
  JsonWriter& value(const std::string& s);
  JsonWriter& value_array(const std::vector<double>& xs);
  JsonWriter& null_value();

  JsonWriter& kv(const std::string& k, double v) { return key(k).value(v); }
  JsonWriter& kv(const std::string& k, int v) { return key(k).value(v); }
  JsonWriter& kv(const std::string& k, std::size_t v) { return key(k).value(v); }
  JsonWriter& kv(const std::string& k, bool v) { return key(k).value(v); }
  JsonWriter& kv(const std::string& k, const std::string& v) { return key(k).value(v); }
  JsonWriter& kv(const std::string& k, const char* v) { return key(k).value(v); }

  const std::string& str() const { return out_; }

 private:
  void separator();
  void indent();
  std::string out_;
  std::vector<bool> first_in_scope_;
  bool pending_key_ = false;
};

std::string json_escape(const std::string& s);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace specgap
