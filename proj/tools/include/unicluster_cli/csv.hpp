#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "unicluster/core.hpp"

namespace unicluster::cli {

/// Comma-separated, '.' decimals, header row required. A column named
/// "label" holds integer ground truth and is not a feature.
Dataset read_csv(std::istream& in);
Dataset read_csv_file(const std::string& path);

void write_csv(std::ostream& out, const Dataset& data);

/// Shortest decimal text that parses back to the same double.
std::string format_double(double v);

/// Thrown for unreadable or malformed files.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace unicluster::cli
