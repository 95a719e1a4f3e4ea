#include "bvalue/scenario_file.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <map>
#include <set>
#include <stdexcept>

namespace bvalue {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double to_double(const std::string& key, const std::string& text) {
  char* end = nullptr;
  const double v = std::strtod(text.c_str(), &end);
  if (end != text.c_str() + text.size() || !std::isfinite(v))
    throw std::invalid_argument("scenario: key '" + key +
                                "' has non-numeric value '" + text + "'");
  return v;
}

std::uint64_t to_u64(const std::string& key, const std::string& text) {
  char* end = nullptr;
  const unsigned long long v = std::strtoull(text.c_str(), &end, 10);
  if (end != text.c_str() + text.size() || text.empty() || text[0] == '-')
    throw std::invalid_argument("scenario: key '" + key +
                                "' must be a nonnegative integer, got '" + text + "'");
  return static_cast<std::uint64_t>(v);
}

}  // namespace

SimScenario parse_scenario(std::istream& in) {
  static const std::set<std::string> known = {"n1",    "n2",   "mu1",  "mu2",
                                              "sigma", "alpha", "beta", "reps",
                                              "seed",  "mode"};
  std::map<std::string, std::string> kv;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const std::string row = trim(line);
    if (row.empty()) continue;
    const auto eq = row.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("scenario: line " + std::to_string(lineno) +
                                  " is not of the form key=value");
    const std::string key = trim(row.substr(0, eq));
    const std::string value = trim(row.substr(eq + 1));
    if (!known.count(key))
      throw std::invalid_argument("scenario: unknown key '" + key + "'");
    if (kv.count(key))
      throw std::invalid_argument("scenario: duplicate key '" + key + "'");
    if (value.empty())
      throw std::invalid_argument("scenario: key '" + key + "' has no value");
    kv[key] = value;
  }

  for (const std::string& key : known) {
    if (key != "mode" && !kv.count(key))
      throw std::invalid_argument("scenario: missing required key '" + key + "'");
  }

  SimScenario s;
  s.n1 = static_cast<std::size_t>(to_u64("n1", kv["n1"]));
  s.n2 = static_cast<std::size_t>(to_u64("n2", kv["n2"]));
  s.mu1 = to_double("mu1", kv["mu1"]);
  s.mu2 = to_double("mu2", kv["mu2"]);
  s.sigma = to_double("sigma", kv["sigma"]);
  s.alpha = to_double("alpha", kv["alpha"]);
  s.beta = to_double("beta", kv["beta"]);
  s.reps = static_cast<std::size_t>(to_u64("reps", kv["reps"]));
  s.seed = to_u64("seed", kv["seed"]);
  if (kv.count("mode")) {
    const std::string& mode = kv["mode"];
    if (mode == "raw") {
      s.mode = SimScenario::Mode::Raw;
    } else if (mode == "summary") {
      s.mode = SimScenario::Mode::Summary;
    } else {
      throw std::invalid_argument("scenario: mode must be 'raw' or 'summary'");
    }
  }
  return s;
}

SimScenario parse_scenario_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("scenario: cannot open '" + path + "'");
  return parse_scenario(in);
}

}  // namespace bvalue
