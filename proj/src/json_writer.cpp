#include "fredproj/json_writer.hpp"

#include "fredproj/csv.hpp"

namespace fredproj {

std::string JsonWriter::escape(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      default: out += c;
    }
  }
  out += '"';
  return out;
}

std::string JsonWriter::number(double v) {
  if (!std::isfinite(v)) return "null";
  return format_double(v);
}

JsonWriter& JsonWriter::field(const std::string& key, double v) {
  parts_.push_back(escape(key) + ":" + number(v));
  return *this;
}

JsonWriter& JsonWriter::field(const std::string& key, int v) {
  parts_.push_back(escape(key) + ":" + std::to_string(v));
  return *this;
}

JsonWriter& JsonWriter::field(const std::string& key, std::int64_t v) {
  parts_.push_back(escape(key) + ":" + std::to_string(v));
  return *this;
}

JsonWriter& JsonWriter::field(const std::string& key, std::uint64_t v) {
  parts_.push_back(escape(key) + ":" + std::to_string(v));
  return *this;
}

JsonWriter& JsonWriter::field(const std::string& key, bool v) {
  parts_.push_back(escape(key) + ":" + (v ? "true" : "false"));
  return *this;
}

JsonWriter& JsonWriter::field(const std::string& key, const std::string& v) {
  parts_.push_back(escape(key) + ":" + escape(v));
  return *this;
}

JsonWriter& JsonWriter::field(const std::string& key, const char* v) {
  return field(key, std::string(v));
}

JsonWriter& JsonWriter::field(const std::string& key,
                              const Eigen::VectorXd& v) {
  std::string arr = "[";
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (i) arr += ',';
    arr += number(v(i));
  }
  arr += ']';
  parts_.push_back(escape(key) + ":" + arr);
  return *this;
}

JsonWriter& JsonWriter::null_field(const std::string& key) {
  parts_.push_back(escape(key) + ":null");
  return *this;
}

JsonWriter& JsonWriter::raw_field(const std::string& key,
                                  const std::string& json) {
  parts_.push_back(escape(key) + ":" + json);
  return *this;
}

std::string JsonWriter::str() const {
  std::string out = "{";
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    if (i) out += ',';
    out += parts_[i];
  }
  out += '}';
  return out;
}

}  // namespace fredproj
