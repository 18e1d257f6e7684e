#pragma once

// JSON run configuration for the command-line front end. Every validation
// failure throws ConfigError carrying the JSON path of the offending field.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "graphmass/jets.hpp"
#include "graphmass/quadrature.hpp"
#include "json.hpp"

namespace graphmass {

struct SampleSpec {
  int count = 100;
  std::uint64_t seed = 1;
  double radius_min = 0.25;
  double radius_max = 2.0;
};

struct RunConfig {
  int n = 0;
  int m = 0;
  nlohmann::json function_json;  // resolved form, echoed into reports
  FunctionSpec function;
  nlohmann::json domain_json;
  DomainSpec domain;

  std::vector<double> radii;        // surface-mass radii
  std::vector<double> decay_radii;  // defaults to radii
  int degree = 8;
  ExteriorOptions exterior;
  double fd_step = 1e-4;
  double constancy_tolerance = 1e-8;
  std::vector<double> approach_offsets{1e-2, 1e-4, 1e-6};

  SampleSpec sample;
  std::vector<std::vector<double>> points;  // explicit verify points

  // All fields with defaults filled in.
  nlohmann::json resolved() const;
};

// Throws ConfigError; malformed JSON is reported with its byte offset.
RunConfig parse_config_text(const std::string& text);
RunConfig parse_config(const nlohmann::json& j);
RunConfig load_config(const std::string& path);

// Component specs from their JSON form.
ScalarSpec parse_scalar_spec(const nlohmann::json& j, int n, const std::string& path);
FunctionSpec parse_function_spec(const nlohmann::json& j, int n, const std::string& path);
DomainSpec parse_domain_spec(const nlohmann::json& j, int n, const std::string& path);

// 64-bit FNV-1a, printed as 16 hex digits.
std::string fnv1a_hex(const std::string& bytes);

}  // namespace graphmass
