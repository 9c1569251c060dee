#pragma once

#include <iosfwd>
#include <string>

#include "banditlab/types.hpp"

// banditlog-v1 file format: a JSON header line
//   {"format":"banditlog-v1","num_items":K}
// followed by one JSON object per event with fields
//   user_id (int), views (int array of length K), action (int),
//   click (0/1), propensity (float).
// Doubles are written with shortest round-trip precision, so
// write -> read -> write reproduces the file byte for byte.

namespace banditlab {

void write_log(const LogDataset& data, std::ostream& out);
LogDataset read_log(std::istream& in);

void write_log_file(const LogDataset& data, const std::string& path);
LogDataset read_log_file(const std::string& path);

}  // namespace banditlab
