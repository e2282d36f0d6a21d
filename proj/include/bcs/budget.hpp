#pragma once

#include <cstdlib>
#include <stdexcept>
#include <string>

namespace bcs {

// Raised when an exponential-time routine is asked to exceed its configured
// instance-size ceiling.  CLI maps this to exit code 3.
struct BudgetExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Raised on malformed instance/solution files or malformed BCS_BUDGET values.
// CLI maps this to exit code 2.
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Raised when a caller hands a gadget-witness builder a matching that is not
// actually a valid one for the underlying instance.
struct InvalidMatching : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Size ceilings for the exponential-time routines.  Overridable through the
// BCS_BUDGET environment variable, a comma-separated key=value list, e.g.
//   BCS_BUDGET="oracle_n=14,oracle_k=5,fpt_r=10,dnmts_n=9,angle_n=7"
// Unknown keys are rejected so typos fail loudly instead of silently keeping
// a default.
struct Budget {
  int oracle_max_n = 12;  // brute_force_bottleneck: max point count
  int oracle_max_k = 4;   // brute_force_bottleneck: max set count
  int fpt_max_r = 12;     // flow solver: max interior-point count
  int dnmts_max_n = 8;    // numerical-matching brute force: max triple count
  int angle_max_n = 6;    // angle-partition brute force: max triple count

  static Budget from_env() {
    Budget b;
    const char* raw = std::getenv("BCS_BUDGET");
    if (raw == nullptr || *raw == '\0') return b;
    std::string s(raw);
    std::size_t pos = 0;
    while (pos <= s.size()) {
      std::size_t comma = s.find(',', pos);
      if (comma == std::string::npos) comma = s.size();
      const std::string item = s.substr(pos, comma - pos);
      pos = comma + 1;
      if (item.empty()) continue;
      const std::size_t eq = item.find('=');
      if (eq == std::string::npos) {
        throw ParseError("BCS_BUDGET: expected key=value, got '" + item + "'");
      }
      const std::string key = item.substr(0, eq);
      int value = 0;
      try {
        std::size_t used = 0;
        value = std::stoi(item.substr(eq + 1), &used);
        if (used != item.size() - eq - 1) throw std::invalid_argument("trail");
      } catch (const std::exception&) {
        throw ParseError("BCS_BUDGET: bad integer in '" + item + "'");
      }
      if (value < 0) throw ParseError("BCS_BUDGET: negative value in '" + item + "'");
      if (key == "oracle_n") {
        b.oracle_max_n = value;
      } else if (key == "oracle_k") {
        b.oracle_max_k = value;
      } else if (key == "fpt_r") {
        b.fpt_max_r = value;
      } else if (key == "dnmts_n") {
        b.dnmts_max_n = value;
      } else if (key == "angle_n") {
        b.angle_max_n = value;
      } else {
        throw ParseError("BCS_BUDGET: unknown key '" + key + "'");
      }
    }
    return b;
  }
};

}  // namespace bcs
