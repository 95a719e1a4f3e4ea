#include "bvalue/dataset.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <stdexcept>

namespace bvalue {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double parse_value(const std::string& text, std::size_t lineno) {
  const std::string t = trim(text);
  if (t.empty())
    throw std::invalid_argument("dataset: missing value on line " +
                                std::to_string(lineno));
  char* end = nullptr;
  const double v = std::strtod(t.c_str(), &end);
  if (end != t.c_str() + t.size() || !std::isfinite(v))
    throw std::invalid_argument("dataset: '" + t + "' on line " +
                                std::to_string(lineno) +
                                " is not a finite number");
  return v;
}

}  // namespace

Dataset Dataset::from_csv(std::istream& in) {
  Dataset out;
  std::string line;
  if (!std::getline(in, line) || trim(line) != "group,value")
    throw std::invalid_argument("dataset: expected header 'group,value'");

  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string row = trim(line);
    if (row.empty()) continue;
    const auto comma = row.find(',');
    if (comma == std::string::npos || row.find(',', comma + 1) != std::string::npos)
      throw std::invalid_argument("dataset: line " + std::to_string(lineno) +
                                  " must have exactly two comma-separated fields");
    const std::string label = trim(row.substr(0, comma));
    if (label.empty())
      throw std::invalid_argument("dataset: empty group label on line " +
                                  std::to_string(lineno));
    out.groups_[label].push_back(parse_value(row.substr(comma + 1), lineno));
    ++out.rows_;
  }
  if (out.groups_.size() < 2)
    throw std::invalid_argument("dataset: need at least two distinct groups");
  return out;
}

Dataset Dataset::from_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("dataset: cannot open '" + path + "'");
  return from_csv(in);
}

const std::vector<double>& Dataset::group(const std::string& label) const {
  const auto it = groups_.find(label);
  if (it == groups_.end())
    throw std::invalid_argument("dataset: unknown group '" + label + "'");
  if (it->second.size() < 2)
    throw std::invalid_argument("dataset: group '" + label +
                                "' has fewer than 2 rows");
  return it->second;
}

std::vector<std::string> Dataset::labels() const {
  std::vector<std::string> out;
  out.reserve(groups_.size());
  for (const auto& [label, values] : groups_) out.push_back(label);
  return out;
}

}  // namespace bvalue
