#include "leafclust/serialize.hpp"

#include "json.hpp"
#include "leafclust/dataset.hpp"
#include "leafclust/error.hpp"
#include "leafclust/numfmt.hpp"

namespace leafclust {

using ordered_json = nlohmann::ordered_json;

std::string format_matrix(const DistanceMatrix& dm, MatrixFormat format) {
  const std::size_t m = dm.size();
  if (format == MatrixFormat::kCsv) {
    std::string out;
    for (const auto& label : dm.labels()) out += ',' + csv_quote(label);
    out += '\n';
    for (std::size_t i = 0; i < m; ++i) {
      out += csv_quote(dm.labels()[i]);
      for (std::size_t k = 0; k < m; ++k) out += ',' + format_g17(dm(i, k));
      out += '\n';
    }
    return out;
  }
  ordered_json doc;
  doc["labels"] = dm.labels();
  doc["kind"] = dm.kind().name();
  if (dm.kind().tag == DistanceTag::kMomentEuclidean) doc["moment_order"] = dm.kind().moment_order;
  ordered_json rows = ordered_json::array();
  for (std::size_t i = 0; i < m; ++i) {
    ordered_json row = ordered_json::array();
    for (std::size_t k = 0; k < m; ++k) row.push_back(dm(i, k));
    rows.push_back(std::move(row));
  }
  doc["entries"] = std::move(rows);
  return doc.dump(1) + "\n";
}

void write_matrix(const DistanceMatrix& dm, const std::filesystem::path& path, MatrixFormat format) {
  write_text_file(path, format_matrix(dm, format));
}

DistanceMatrix parse_matrix_csv(std::string_view text, const DistanceKind& kind) {
  std::vector<std::vector<std::string>> rows;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (!line.empty()) rows.push_back(csv_split(line));
    start = end + 1;
  }
  if (rows.empty()) throw InputError("matrix CSV is empty");
  const auto& header = rows[0];
  const std::size_t m = header.size() - 1;
  if (header.size() < 2 || rows.size() != m + 1) throw InputError("matrix CSV is not square");
  std::vector<std::string> labels(header.begin() + 1, header.end());
  std::vector<double> entries;
  entries.reserve(m * m);
  for (std::size_t i = 0; i < m; ++i) {
    const auto& row = rows[i + 1];
    if (row.size() != m + 1) throw InputError("matrix CSV row " + std::to_string(i + 2) + " has wrong width");
    if (row[0] != labels[i]) throw InputError("matrix CSV row label '" + row[0] + "' does not match header");
    for (std::size_t k = 0; k < m; ++k) entries.push_back(parse_double(row[k + 1]));
  }
  return DistanceMatrix(std::move(labels), std::move(entries), kind);
}

DistanceMatrix read_matrix_csv(const std::filesystem::path& path, const DistanceKind& kind) {
  return parse_matrix_csv(read_text_file(path), kind);
}

std::string format_dendrogram_json(const Dendrogram& dend, Linkage linkage) {
  ordered_json doc;
  doc["labels"] = dend.labels;
  doc["linkage"] = linkage_name(linkage);
  ordered_json merges = ordered_json::array();
  for (const auto& merge : dend.merges) {
    ordered_json record;
    record["left"] = merge.left;
    record["right"] = merge.right;
    record["height"] = merge.height;
    record["size"] = merge.size;
    merges.push_back(std::move(record));
  }
  doc["merges"] = std::move(merges);
  return doc.dump(1) + "\n";
}

std::string format_densities_json(const std::vector<StepDensity>& densities) {
  ordered_json doc = ordered_json::object();
  for (const auto& d : densities) {
    ordered_json entry;
    entry["breakpoints"] = d.breakpoints();
    entry["heights"] = d.heights();
    entry["rotation"] = d.rotation();
    entry["direction_defined"] = d.direction_defined();
    doc[d.source_id()] = std::move(entry);
  }
  return doc.dump(1) + "\n";
}

}  // namespace leafclust
