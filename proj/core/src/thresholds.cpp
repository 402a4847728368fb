#include "lamogen/thresholds.hpp"

#include <cstdio>
#include <cstdlib>
#include <sstream>
#include <utility>
#include <vector>

#include "lamogen/error.hpp"

namespace lamogen {

namespace {

std::vector<std::pair<const char*, double ThresholdConfig::*>> double_keys() {
  return {
      {"lower_x_cross", &ThresholdConfig::lower_x_cross},
      {"lower_x_out", &ThresholdConfig::lower_x_out},
      {"lower_y_fwd", &ThresholdConfig::lower_y_fwd},
      {"lower_y_back", &ThresholdConfig::lower_y_back},
      {"lower_z_lo_min", &ThresholdConfig::lower_z_lo_min},
      {"lower_z_hi", &ThresholdConfig::lower_z_hi},
      {"upper_x_cross", &ThresholdConfig::upper_x_cross},
      {"upper_x_out", &ThresholdConfig::upper_x_out},
      {"upper_y_fwd", &ThresholdConfig::upper_y_fwd},
      {"upper_y_back", &ThresholdConfig::upper_y_back},
      {"upper_z_lo", &ThresholdConfig::upper_z_lo},
      {"upper_z_hi", &ThresholdConfig::upper_z_hi},
      {"hold_foot", &ThresholdConfig::hold_foot},
      {"hold_hand", &ThresholdConfig::hold_hand},
      {"bend_bin_deg", &ThresholdConfig::bend_bin_deg},
      {"orient_bin_deg", &ThresholdConfig::orient_bin_deg},
      {"effort_b1", &ThresholdConfig::effort_b1},
      {"effort_b2", &ThresholdConfig::effort_b2},
      {"effort_b3", &ThresholdConfig::effort_b3},
      {"effort_b4", &ThresholdConfig::effort_b4},
  };
}

} // namespace

ThresholdConfig load_thresholds(const std::string& text) {
  ThresholdConfig cfg;
  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  auto keys = double_keys();
  while (std::getline(is, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    size_t a = line.find_first_not_of(" \t\r");
    if (a == std::string::npos) continue;
    size_t b = line.find_last_not_of(" \t\r");
    line = line.substr(a, b - a + 1);
    auto eq = line.find('=');
    if (eq == std::string::npos)
      fail(Errc::parse_error, "thresholds line " + std::to_string(lineno) + ": expected key=value");
    std::string key = line.substr(0, eq), val = line.substr(eq + 1);
    char* end = nullptr;
    double v = std::strtod(val.c_str(), &end);
    if (end == val.c_str() || *end != '\0')
      fail(Errc::parse_error, "thresholds line " + std::to_string(lineno) + ": bad number: " + val);
    if (key == "min_run") {
      cfg.min_run = static_cast<int>(v);
      continue;
    }
    bool known = false;
    for (auto& [name, member] : keys) {
      if (key == name) {
        cfg.*member = v;
        known = true;
        break;
      }
    }
    if (!known)
      fail(Errc::parse_error, "thresholds line " + std::to_string(lineno) + ": unknown key: " + key);
  }
  return cfg;
}

std::string save_thresholds(const ThresholdConfig& cfg) {
  std::ostringstream os;
  char buf[64];
  for (auto& [name, member] : double_keys()) {
    std::snprintf(buf, sizeof buf, "%s=%.17g\n", name, cfg.*member);
    os << buf;
  }
  os << "min_run=" << cfg.min_run << "\n";
  return os.str();
}

} // namespace lamogen
