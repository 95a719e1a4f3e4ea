#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace bvalue {

// Long-format dataset: comma-separated rows of (group,value) under a
// "group,value" header. Parsing throws std::invalid_argument with a
// line-numbered message on any malformed input.
class Dataset {
 public:
  static Dataset from_csv(std::istream& in);
  static Dataset from_csv_file(const std::string& path);

  // Observations of one group; throws std::invalid_argument for an unknown
  // label or a group with fewer than 2 rows.
  const std::vector<double>& group(const std::string& label) const;

  std::vector<std::string> labels() const;
  std::size_t rows() const { return rows_; }

 private:
  std::map<std::string, std::vector<double>> groups_;
  std::size_t rows_ = 0;
};

}  // namespace bvalue
