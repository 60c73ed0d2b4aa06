#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "leafclust/ccd.hpp"

namespace leafclust {

enum class DatasetFormat { kCsv, kJson };

DatasetFormat parse_dataset_format(std::string_view name);
/// Guess from the file extension (.json -> JSON, anything else -> CSV).
DatasetFormat format_from_extension(const std::filesystem::path& path);

struct Dataset {
  std::vector<CcdSequence> sequences;
  /// Empty, or one group label per sequence.
  std::vector<std::string> groups;

  std::size_t size() const { return sequences.size(); }
  bool has_groups() const { return !groups.empty(); }
  std::vector<std::string> ids() const;
  /// Throws InputError on duplicate ids, an empty dataset, or a group list of the wrong size.
  void validate() const;
};

// Long CSV: header "id,value" (optionally ",group"), one row per sample,
// rows of one id contiguous and in trace order.
//
// JSON: {"<id>": [numbers...], ..., "groups": {"<id>": "<group>", ...}}.
// Key order in the file is the sequence order.
Dataset parse_dataset(std::string_view text, DatasetFormat format);
Dataset read_dataset(const std::filesystem::path& path, DatasetFormat format);

std::string format_dataset(const Dataset& data, DatasetFormat format);
void write_dataset(const Dataset& data, const std::filesystem::path& path, DatasetFormat format);

/// RFC 4180 style field quoting: quoted when it holds a comma, quote or newline.
std::string csv_quote(std::string_view field);
/// Split one CSV record (no embedded newlines) into fields.
std::vector<std::string> csv_split(std::string_view line);

/// Write text to a file, throwing InputError if the path is not writable.
void write_text_file(const std::filesystem::path& path, std::string_view text);
std::string read_text_file(const std::filesystem::path& path);

}  // namespace leafclust
