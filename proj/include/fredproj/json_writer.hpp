#pragma once

#include <Eigen/Core>
#include <cmath>
#include <string>
#include <vector>

namespace fredproj {

/// Minimal insertion-ordered JSON emitter. Doubles are rendered with
/// "%.17g" so identical inputs produce byte-identical documents; NaN and
/// infinities become null (with flags carried separately by callers).
class JsonWriter {
 public:
  JsonWriter& field(const std::string& key, double v);
  JsonWriter& field(const std::string& key, int v);
  JsonWriter& field(const std::string& key, std::int64_t v);
  JsonWriter& field(const std::string& key, std::uint64_t v);
  JsonWriter& field(const std::string& key, bool v);
  JsonWriter& field(const std::string& key, const std::string& v);
  JsonWriter& field(const std::string& key, const char* v);
  JsonWriter& field(const std::string& key, const Eigen::VectorXd& v);
  JsonWriter& null_field(const std::string& key);
  /// Nested object, already serialized.
  JsonWriter& raw_field(const std::string& key, const std::string& json);

  std::string str() const;

  static std::string escape(const std::string& s);
  static std::string number(double v);

 private:
  std::vector<std::string> parts_;
};

}  // namespace fredproj
