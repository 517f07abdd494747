#pragma once

#include <json.hpp>
#include <string>
#include <vector>

namespace squidmodes {

inline constexpr const char* kVersion = "0.1.0";

/// 12 significant digits, "." separator, independent of the C locale.
std::string format_number(double x);

/// Column-major CSV with a header row and LF line endings.
std::string csv_text(const std::vector<std::string>& header, const std::vector<std::vector<double>>& columns);

/// Writes to a temporary sibling then renames it over path.
void write_file_atomic(const std::string& path, const std::string& content);

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& columns);
void write_json(const std::string& path, const nlohmann::json& doc);

struct RunManifest {
  std::string command;
  nlohmann::json config;     ///< resolved configuration
  nlohmann::json arguments;  ///< command-line options after defaults
  std::vector<std::string> outputs;
  std::vector<std::string> errors;
  double wall_seconds = 0.0;
  std::string version = kVersion;

  nlohmann::json to_json() const;
};

}  // namespace squidmodes
