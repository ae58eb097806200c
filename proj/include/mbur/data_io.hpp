#pragma once

#include <string>
#include <vector>

#include "mbur/types.hpp"

namespace mbur {

struct NamedDataset {
  std::string name;
  std::vector<double> values;  // raw order, unsorted
  std::string source;
  std::size_t n() const { return values.size(); }
  Sample sample() const { return Sample(values); }
};

/// Embedded datasets: dwellings (31), quality (20), education (36),
/// flood (20), pumps (23).
const NamedDataset& builtin(const std::string& name);
std::vector<std::string> builtin_names();

struct CsvOptions {
  int column = 0;
  char delimiter = ',';
};

/// Loads one numeric column; rejects values outside the open unit interval
/// and malformed tokens with the offending line number in the message.
NamedDataset load_csv(const std::string& path, const CsvOptions& options = {});

/// Resolves a CLI-style data argument: builtin name first, then file path.
NamedDataset resolve_dataset(const std::string& name_or_path, const CsvOptions& options = {});

}  // namespace mbur
