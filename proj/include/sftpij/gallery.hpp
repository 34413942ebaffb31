#pragma once

#include <optional>

#include "sftpij/json_io.hpp"

namespace sftpij {

/// One fixture of the example gallery. Expectations live in the manifest
/// (data, not code), so new examples need no rebuild.
struct GalleryEntry {
  std::string name;
  std::string matrix_file;          // relative to the gallery directory
  bool external = false;            // matrix must be supplied by the user
  std::string note;
  std::string measure_mode = "parry";  // "parry" | "uniform"
  std::string expected_verdict;        // "" = no expectation
  std::string expected_witness;        // first failing check, "" = none
  std::optional<int> expect_period;
  std::optional<bool> expect_integer_perron;
  std::optional<int> expect_uniform_n;
  std::optional<int> expect_mk_constant_k;
  std::vector<std::string> rule_files;
  std::optional<int> expect_rules_verified_depth;
  std::optional<int> expect_pij_star_q;
};

std::vector<GalleryEntry> load_gallery(const std::string& dir);

struct GalleryOutcome {
  std::string name;
  bool skipped = false;
  bool matched = true;
  std::vector<std::string> lines;  // human-readable detail, one per aspect
};

/// Runs the entry's pipeline (battery, optional rule verification, optional
/// PIJ* check) and compares every stated expectation.
GalleryOutcome run_gallery_entry(const GalleryEntry& entry, const std::string& dir,
                                 std::int64_t budget = 10000000);

}  // namespace sftpij
