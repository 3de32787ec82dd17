#ifndef EDSIM_CONFIG_HPP
#define EDSIM_CONFIG_HPP

#include <array>
#include <string>

#include "edsim/scenario.hpp"

namespace edsim {

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Full declarative run description: the scenario plus the observed
// per-ESI means used by the validate command.
struct RunConfig {
  ScenarioConfig scenario;
  std::array<double, 5> validation_targets{149, 261, 228, 106, 122};
};

// Parses JSON config text. Omitted keys fall back to the defaults;
// unknown keys are rejected with the offending path in the message.
RunConfig parse_config(const std::string& text);
RunConfig parse_config_file(const std::string& path);

// The built-in defaults as config text; parse(emit_defaults()) round-trips.
std::string emit_defaults();

// Locale-independent fixed-precision number formatting for CSV output.
std::string csv_number(double value, int decimals);

}  // namespace edsim

#endif
