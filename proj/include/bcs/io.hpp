#pragma once

#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "bcs/budget.hpp"
#include "bcs/geometry.hpp"
#include "bcs/instances.hpp"
#include "bcs/solution.hpp"

namespace bcs {

// On-disk instance: one "x y" pair per line (integers or p/q rationals),
// '#' comments, blank lines ignored, optional "k=<int>" header anywhere.
struct InstanceFile {
  PointSet points;
  std::optional<int> k;
};

inline InstanceFile parse_instance(const std::string& text) {
  std::vector<Point> pts;
  std::optional<int> k;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string first;
    if (!(ls >> first)) continue;  // blank
    if (first.rfind("k=", 0) == 0) {
      std::string rest;
      if (ls >> rest) {
        throw ParseError("line " + std::to_string(lineno) + ": trailing tokens after k=");
      }
      try {
        std::size_t used = 0;
        const int value = std::stoi(first.substr(2), &used);
        if (used != first.size() - 2) throw std::invalid_argument("trail");
        if (k.has_value()) {
          throw ParseError("line " + std::to_string(lineno) + ": duplicate k= header");
        }
        k = value;
      } catch (const ParseError&) {
        throw;
      } catch (const std::exception&) {
        throw ParseError("line " + std::to_string(lineno) + ": malformed k= header");
      }
      continue;
    }
    std::string second, extra;
    if (!(ls >> second) || (ls >> extra)) {
      throw ParseError("line " + std::to_string(lineno) + ": expected 'x y'");
    }
    const auto x = parse_rational(first);
    const auto y = parse_rational(second);
    if (!x || !y) {
      throw ParseError("line " + std::to_string(lineno) + ": bad coordinate");
    }
    pts.push_back(Point{*x, *y});
  }
  try {
    return InstanceFile{PointSet(std::move(pts)), k};
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
}

inline std::string format_instance(const InstanceFile& inst) {
  std::string out;
  if (inst.k) out += "k=" + std::to_string(*inst.k) + "\n";
  for (const Point& p : inst.points.points()) {
    out += to_string(p.x) + " " + to_string(p.y) + "\n";
  }
  return out;
}

// Solver answers as JSON.  elapsed_ms is wall-clock and therefore the one
// field that varies between identical runs.
struct SolutionFile {
  Solution solution;
  std::string solver;
  double elapsed_ms = 0.0;
};

inline std::string format_solution(const SolutionFile& sf) {
  nlohmann::json j;
  j["sets"] = sf.solution.sets;
  j["value"] = sf.solution.value;
  if (sf.solution.infeasible_k) j["infeasible_k"] = true;
  j["solver"] = sf.solver;
  j["elapsed_ms"] = sf.elapsed_ms;
  return j.dump(2) + "\n";
}

inline SolutionFile parse_solution(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const std::exception& e) {
    throw ParseError(std::string("solution JSON: ") + e.what());
  }
  SolutionFile sf;
  try {
    if (!j.is_object()) throw std::runtime_error("top level must be an object");
    sf.solution.sets = j.at("sets").get<std::vector<std::vector<int>>>();
    sf.solution.value = j.at("value").get<int>();
    sf.solution.infeasible_k = j.value("infeasible_k", false);
    sf.solver = j.value("solver", std::string{});
    sf.elapsed_ms = j.value("elapsed_ms", 0.0);
  } catch (const std::exception& e) {
    throw ParseError(std::string("solution JSON: ") + e.what());
  }
  return sf;
}

// Companion metadata written next to generated gadget instances.
inline std::string format_gadget_sidecar(const GadgetInstance& g) {
  nlohmann::json j;
  j["k"] = g.k;
  j["delta"] = to_string(g.delta);
  j["delta_escalations"] = g.delta_escalations;
  j["wedge_verified"] = g.wedge_verified;
  std::vector<std::string> roles;
  roles.reserve(g.roles.size());
  for (const auto& r : g.roles) roles.push_back(to_string(r));
  j["roles"] = roles;
  return j.dump(2) + "\n";
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write file: " + path);
  out << content;
}

}  // namespace bcs
