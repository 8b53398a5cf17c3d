#pragma once

#include <string>
#include <utility>
#include <vector>

namespace hode {

// Reads a two-column data file with header "x,y"; lines starting with '#'
// are skipped.
std::pair<std::vector<double>, std::vector<double>> read_xy_csv(const std::string& path);

void write_xy_csv(const std::string& path, const std::vector<double>& x,
                  const std::vector<double>& y);

}  // namespace hode
