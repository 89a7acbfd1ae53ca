#pragma once

#include <filesystem>
#include <span>
#include <string>

#include "irsdoa/crb.hpp"
#include "irsdoa/harness.hpp"
#include "irsdoa/numerics.hpp"
#include "irsdoa/spectrum.hpp"

namespace irsdoa {

// Reals are printed with 17 significant digits, NaN as "nan", flags as 0/1.

std::string summary_csv(std::span<const SummaryRow> rows);
std::string detail_csv(std::span<const TrialRecord> records);
/// Long format: row,col,re,im.
std::string matrix_csv(const ComplexMatrix& m);
std::string estimate_csv(const DoaEstimate& estimate);
std::string crb_csv(const CrbReport& report, const SceneConfig& scene);

/// Writes `text` to `path`; IoError names the path on failure.
void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace irsdoa
