#include "leafclust/dataset.hpp"

#include <fstream>
#include <set>
#include <sstream>
#include <unordered_map>

#include "json.hpp"
#include "leafclust/error.hpp"
#include "leafclust/numfmt.hpp"

namespace leafclust {

using ordered_json = nlohmann::ordered_json;

DatasetFormat parse_dataset_format(std::string_view name) {
  if (name == "csv") return DatasetFormat::kCsv;
  if (name == "json") return DatasetFormat::kJson;
  throw InputError("unknown dataset format '" + std::string(name) + "'");
}

DatasetFormat format_from_extension(const std::filesystem::path& path) {
  return path.extension() == ".json" ? DatasetFormat::kJson : DatasetFormat::kCsv;
}

std::vector<std::string> Dataset::ids() const {
  std::vector<std::string> out;
  out.reserve(sequences.size());
  for (const auto& seq : sequences) out.push_back(seq.id());
  return out;
}

void Dataset::validate() const {
  if (sequences.empty()) throw InputError("dataset is empty");
  std::set<std::string> seen;
  for (const auto& seq : sequences) {
    if (!seen.insert(seq.id()).second) throw InputError("duplicate sequence id '" + seq.id() + "'");
  }
  if (!groups.empty() && groups.size() != sequences.size()) {
    throw InputError("dataset group labels do not match the number of sequences");
  }
}

std::string csv_quote(std::string_view field) {
  if (field.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(field);
  std::string out = "\"";
  for (char ch : field) {
    if (ch == '"') out += '"';
    out += ch;
  }
  out += '"';
  return out;
}

std::vector<std::string> csv_split(std::string_view line) {
  std::vector<std::string> fields;
  std::string current;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char ch = line[i];
    if (quoted) {
      if (ch == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          current += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        current += ch;
      }
    } else if (ch == '"') {
      quoted = true;
    } else if (ch == ',') {
      fields.push_back(std::move(current));
      current.clear();
    } else {
      current += ch;
    }
  }
  if (quoted) throw InputError("unterminated quoted CSV field");
  fields.push_back(std::move(current));
  return fields;
}

namespace {

std::vector<std::string> split_lines(std::string_view text) {
  std::vector<std::string> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string line(text.substr(start, end - start));
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(std::move(line));
    start = end + 1;
  }
  while (!lines.empty() && lines.back().empty()) lines.pop_back();
  return lines;
}

Dataset parse_csv(std::string_view text) {
  const auto lines = split_lines(text);
  if (lines.empty()) throw InputError("CSV dataset is empty");
  const auto header = csv_split(lines[0]);
  const bool with_groups = header.size() == 3 && header[2] == "group";
  if (header.size() < 2 || header[0] != "id" || header[1] != "value" ||
      (header.size() == 3 && !with_groups) || header.size() > 3) {
    throw InputError("CSV dataset header must be 'id,value' or 'id,value,group'");
  }

  Dataset data;
  std::set<std::string> finished;
  std::string current_id;
  std::string current_group;
  std::vector<double> current_values;
  auto flush = [&] {
    if (current_values.empty()) return;
    data.sequences.emplace_back(current_id, std::move(current_values));
    if (with_groups) data.groups.push_back(current_group);
    finished.insert(current_id);
    current_values.clear();
  };

  for (std::size_t row = 1; row < lines.size(); ++row) {
    const std::string where = "CSV row " + std::to_string(row + 1);
    const auto fields = csv_split(lines[row]);
    if (fields.size() != header.size()) throw InputError(where + ": wrong number of fields");
    const std::string& id = fields[0];
    if (id.empty()) throw InputError(where + ": empty id");
    double value = 0.0;
    try {
      value = parse_double(fields[1]);
    } catch (const InputError& e) {
      throw InputError(where + " (id '" + id + "'): " + e.what());
    }
    if (!(value >= 0.0)) {
      throw InputError(where + " (id '" + id + "'): negative value " + fields[1]);
    }
    if (current_values.empty() || id != current_id) {
      flush();
      if (finished.contains(id)) {
        throw InputError(where + ": rows of id '" + id + "' are not contiguous");
      }
      current_id = id;
      current_group = with_groups ? fields[2] : std::string();
    } else if (with_groups && fields[2] != current_group) {
      throw InputError(where + ": id '" + id + "' changes group");
    }
    current_values.push_back(value);
  }
  flush();
  data.validate();
  return data;
}

Dataset parse_json(std::string_view text) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(std::string("JSON dataset: ") + e.what());
  }
  if (!doc.is_object()) throw InputError("JSON dataset must be an object");

  Dataset data;
  std::unordered_map<std::string, std::string> group_of;
  bool has_groups = false;
  for (const auto& [key, value] : doc.items()) {
    if (key == "groups") {
      if (!value.is_object()) throw InputError("JSON dataset: 'groups' must be an object");
      has_groups = true;
      for (const auto& [id, group] : value.items()) {
        if (!group.is_string()) throw InputError("JSON dataset: group of '" + id + "' is not a string");
        group_of[id] = group.get<std::string>();
      }
      continue;
    }
    if (!value.is_array()) throw InputError("JSON dataset: '" + key + "' is not an array");
    std::vector<double> values;
    values.reserve(value.size());
    for (std::size_t j = 0; j < value.size(); ++j) {
      if (!value[j].is_number()) {
        throw InputError("JSON dataset: '" + key + "' entry " + std::to_string(j + 1) +
                         " is not a number");
      }
      const double y = value[j].get<double>();
      if (!(y >= 0.0)) {
        throw InputError("JSON dataset: '" + key + "' entry " + std::to_string(j + 1) +
                         " is negative");
      }
      values.push_back(y);
    }
    data.sequences.emplace_back(key, std::move(values));
  }
  if (has_groups) {
    for (const auto& seq : data.sequences) {
      auto it = group_of.find(seq.id());
      if (it == group_of.end()) throw InputError("JSON dataset: no group for '" + seq.id() + "'");
      data.groups.push_back(it->second);
    }
  }
  data.validate();
  return data;
}

}  // namespace

Dataset parse_dataset(std::string_view text, DatasetFormat format) {
  return format == DatasetFormat::kCsv ? parse_csv(text) : parse_json(text);
}

Dataset read_dataset(const std::filesystem::path& path, DatasetFormat format) {
  return parse_dataset(read_text_file(path), format);
}

std::string format_dataset(const Dataset& data, DatasetFormat format) {
  data.validate();
  if (format == DatasetFormat::kCsv) {
    std::string out = data.has_groups() ? "id,value,group\n" : "id,value\n";
    for (std::size_t i = 0; i < data.size(); ++i) {
      const std::string id = csv_quote(data.sequences[i].id());
      const std::string group = data.has_groups() ? "," + csv_quote(data.groups[i]) : "";
      for (double y : data.sequences[i].values()) {
        out += id;
        out += ',';
        out += format_g17(y);
        out += group;
        out += '\n';
      }
    }
    return out;
  }
  ordered_json doc = ordered_json::object();
  for (const auto& seq : data.sequences) {
    if (seq.id() == "groups") throw InputError("JSON dataset: 'groups' is a reserved key");
    doc[seq.id()] = seq.values();
  }
  if (data.has_groups()) {
    ordered_json groups = ordered_json::object();
    for (std::size_t i = 0; i < data.size(); ++i) groups[data.sequences[i].id()] = data.groups[i];
    doc["groups"] = std::move(groups);
  }
  return doc.dump(1) + "\n";
}

void write_dataset(const Dataset& data, const std::filesystem::path& path, DatasetFormat format) {
  write_text_file(path, format_dataset(data, format));
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InputError("cannot write '" + path.string() + "'");
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw InputError("failed writing '" + path.string() + "'");
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace leafclust
