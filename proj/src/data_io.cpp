#include "mbur/data_io.hpp"

#include <cctype>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace mbur {
namespace {

const std::map<std::string, NamedDataset>& builtins() {
  static const std::map<std::string, NamedDataset> kData = {
      {"dwellings",
       {"dwellings",
        {0.008, 0.007, 0.002, 0.094, 0.123, 0.023, 0.005, 0.005, 0.057, 0.004, 0.005,
         0.001, 0.004, 0.035, 0.002, 0.006, 0.064, 0.025, 0.112, 0.118, 0.001, 0.259,
         0.001, 0.023, 0.009, 0.015, 0.002, 0.003, 0.049, 0.005, 0.001},
        "OECD better-life index: dwellings without basic facilities, proportions"}},
      {"quality",
       {"quality",
        {0.98, 0.96, 0.95, 0.94, 0.93, 0.8,  0.82, 0.85, 0.88, 0.89,
         0.78, 0.92, 0.92, 0.9,  0.96, 0.96, 0.94, 0.77, 0.95, 0.91},
        "OECD better-life index: quality of support network, proportions"}},
      {"education",
       {"education",
        {0.84, 0.86, 0.8,  0.92, 0.67, 0.59, 0.43, 0.94, 0.82, 0.91, 0.91, 0.81,
         0.86, 0.76, 0.86, 0.76, 0.85, 0.88, 0.63, 0.89, 0.89, 0.94, 0.74, 0.42,
         0.81, 0.81, 0.93, 0.55, 0.92, 0.9,  0.63, 0.84, 0.89, 0.42, 0.82, 0.92},
        "OECD better-life index: educational attainment, proportions"}},
      {"flood",
       {"flood",
        {0.26, 0.27, 0.3,  0.32, 0.32, 0.34, 0.38, 0.38, 0.39, 0.4,
         0.41, 0.42, 0.42, 0.42, 0.45, 0.48, 0.49, 0.61, 0.65, 0.74},
        "Maximum flood levels of the Susquehanna river at Harrisburg (20 periods)"}},
      {"pumps",
       {"pumps",
        {0.216,  0.015, 0.4082, 0.0746, 0.0358, 0.0199, 0.0402, 0.0101,
         0.0605, 0.0954, 0.1359, 0.0273, 0.0491, 0.3465, 0.007,  0.656,
         0.106,  0.0062, 0.4992, 0.0614, 0.532,  0.0347, 0.1921},
        "Failure rates of 23 pumps, scaled to the unit interval"}},
  };
  return kData;
}

}  // namespace

const NamedDataset& builtin(const std::string& name) {
  const auto& all = builtins();
  const auto it = all.find(name);
  if (it == all.end()) {
    std::string names;
    for (const auto& [k, v] : all) names += (names.empty() ? "" : ", ") + k;
    throw std::invalid_argument("unknown dataset '" + name + "'; valid names: " + names);
  }
  return it->second;
}

std::vector<std::string> builtin_names() {
  std::vector<std::string> out;
  for (const auto& [k, v] : builtins()) out.push_back(k);
  return out;
}

NamedDataset load_csv(const std::string& path, const CsvOptions& options) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open file: " + path);
  NamedDataset ds;
  ds.name = path;
  ds.source = "file:" + path;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    // pick the requested column
    std::string token = line;
    if (line.find(options.delimiter) != std::string::npos) {
      std::stringstream ss(line);
      std::string field;
      int col = 0;
      bool found = false;
      while (std::getline(ss, field, options.delimiter)) {
        if (col++ == options.column) {
          token = field;
          found = true;
          break;
        }
      }
      if (!found) {
        throw std::runtime_error("line " + std::to_string(lineno) + ": missing column " +
                                 std::to_string(options.column));
      }
    }
    std::size_t pos = 0;
    double v;
    try {
      v = std::stod(token, &pos);
    } catch (const std::exception&) {
      throw std::runtime_error("line " + std::to_string(lineno) + ": malformed value '" +
                               token + "'");
    }
    while (pos < token.size() && std::isspace(static_cast<unsigned char>(token[pos]))) ++pos;
    if (pos != token.size()) {
      throw std::runtime_error("line " + std::to_string(lineno) + ": malformed value '" +
                               token + "'");
    }
    if (!(v > 0.0 && v < 1.0)) {
      throw std::runtime_error("line " + std::to_string(lineno) + ": value " + token +
                               " outside the open interval (0,1)");
    }
    ds.values.push_back(v);
  }
  if (ds.values.empty()) throw std::runtime_error("empty dataset: " + path);
  return ds;
}

NamedDataset resolve_dataset(const std::string& name_or_path, const CsvOptions& options) {
  const auto& all = builtins();
  if (all.count(name_or_path)) return all.at(name_or_path);
  return load_csv(name_or_path, options);
}

}  // namespace mbur
