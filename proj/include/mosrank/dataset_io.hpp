#pragma once

#include <filesystem>
#include <iosfwd>

#include "mosrank/mos_estimate.hpp"
#include "mosrank/types.hpp"

namespace mosrank {

// Dataset files are UTF-8 CSV with a header row, in one of two schemas:
//
//   condition,mos,ci95[,n[,sd]]   one row per condition (precomputed)
//   condition,vote                one row per vote
//
// The schema is chosen from the header. Votes are grouped by condition in
// first-appearance order and summarised with compute_mos_estimate. Empty
// ci95/n/sd fields are read as absent. Errors carry the 1-based file line.
Dataset read_dataset(std::istream& in, Scale scale = {}, CiMethod method = CiMethod::student_t);
Dataset load_dataset(const std::filesystem::path& path, Scale scale = {},
                     CiMethod method = CiMethod::student_t);

// Writes the estimates schema. Reals use the shortest representation that
// reads back to the same double.
void write_dataset_csv(std::ostream& out, const Dataset& dataset);

}  // namespace mosrank
