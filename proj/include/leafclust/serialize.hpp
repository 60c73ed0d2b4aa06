#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "leafclust/ccd.hpp"
#include "leafclust/distances.hpp"
#include "leafclust/hcluster.hpp"

namespace leafclust {

enum class MatrixFormat { kCsv, kJson };

/// CSV: header row ",<label>..." then one row per label; 17 significant digits.
/// JSON: {"labels": [...], "kind": "...", "moment_order": r, "entries": [[...]...]}.
std::string format_matrix(const DistanceMatrix& dm, MatrixFormat format);
void write_matrix(const DistanceMatrix& dm, const std::filesystem::path& path, MatrixFormat format);

/// Reads the CSV form back. The kind is not stored in CSV and must be supplied.
DistanceMatrix parse_matrix_csv(std::string_view text, const DistanceKind& kind);
DistanceMatrix read_matrix_csv(const std::filesystem::path& path, const DistanceKind& kind);

/// {"labels": [...], "linkage": "...", "merges": [{"left","right","height","size"}...]}
std::string format_dendrogram_json(const Dendrogram& dend, Linkage linkage);

/// {"<id>": {"breakpoints": [...], "heights": [...], "rotation": mu, "direction_defined": b}}
std::string format_densities_json(const std::vector<StepDensity>& densities);

}  // namespace leafclust
