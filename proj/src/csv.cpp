#include "hode/csv.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace hode {

std::pair<std::vector<double>, std::vector<double>> read_xy_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("read_xy_csv: cannot open " + path);
  std::vector<double> x, y;
  std::string line;
  bool header_seen = false;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ss(line);
    std::string xs, ys;
    if (!std::getline(ss, xs, ',') || !std::getline(ss, ys)) {
      throw std::runtime_error("read_xy_csv: malformed line " + std::to_string(lineno) +
                               " in " + path);
    }
    try {
      x.push_back(std::stod(xs));
      y.push_back(std::stod(ys));
    } catch (const std::exception&) {
      if (!header_seen && x.empty()) {
        header_seen = true;  // tolerate (and expect) a "x,y" header row
        continue;
      }
      throw std::runtime_error("read_xy_csv: non-numeric entry on line " +
                               std::to_string(lineno) + " in " + path);
    }
  }
  return {std::move(x), std::move(y)};
}

void write_xy_csv(const std::string& path, const std::vector<double>& x,
                  const std::vector<double>& y) {
  if (x.size() != y.size()) throw std::invalid_argument("write_xy_csv: length mismatch");
  std::ofstream out(path);
  if (!out) throw std::runtime_error("write_xy_csv: cannot open " + path);
  out.precision(17);
  out << "x,y\n";
  for (std::size_t i = 0; i < x.size(); ++i) out << x[i] << ',' << y[i] << '\n';
}

}  // namespace hode
