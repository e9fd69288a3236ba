#pragma once

#include <map>
#include <string>
#include <vector>

namespace weylcal {

// One named check: the measured metric, the tolerance it was held to, and
// whether it passed.  Auxiliary entries carry things like fitted constants or
// excluded guard-band mass.
struct CheckItem {
  std::string name;
  double value = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  std::map<std::string, std::string> aux;
};

struct CheckReport {
  std::string suite;
  std::map<std::string, std::string> params;
  std::vector<CheckItem> checks;
  double wall_time_seconds = 0.0;

  bool passed() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }

  CheckItem& add(std::string name, double value, double tolerance) {
    checks.push_back(CheckItem{std::move(name), value, tolerance, value <= tolerance, {}});
    return checks.back();
  }
};

}  // namespace weylcal
