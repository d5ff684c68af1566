#pragma once

// Report plumbing: JSON documents, deterministic CSV numbers, grid parsing.

#include <json.hpp>

#include <string>
#include <vector>

namespace hadamard {

using Json = nlohmann::ordered_json;

inline constexpr const char* kArtifactVersion = "0.1.0";

/// %.17g; infinities and NaN spelled inf, -inf, nan.
std::string format_number(double v);

/// Finite doubles as JSON numbers, the rest as strings.
Json json_number(double v);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  void add(std::vector<std::string> row) { rows.push_back(std::move(row)); }
  std::string str() const;
};

void write_file(const std::string& path, const std::string& content);

/// "start:stop:count[:lin|:log]" (linear by default) or a comma list.
std::vector<double> parse_radii(const std::string& spec);

std::vector<double> log_grid(double lo, double hi, int count);
std::vector<double> lin_grid(double lo, double hi, int count);

}  // namespace hadamard
