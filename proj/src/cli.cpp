#include "leafclust/cli.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "leafclust/ccd.hpp"
#include "leafclust/dataset.hpp"
#include "leafclust/distances.hpp"
#include "leafclust/error.hpp"
#include "leafclust/hcluster.hpp"
#include "leafclust/numfmt.hpp"
#include "leafclust/serialize.hpp"
#include "leafclust/svg.hpp"
#include "leafclust/synth.hpp"

namespace leafclust::cli {
namespace {

namespace fs = std::filesystem;

struct RunConfig {
  std::string input;
  std::string format;  // empty: guess from extension
  std::string distance = "l1";
  int moment_order = 5;
  std::string linkage = "complete";
  std::optional<std::size_t> cut;
  std::string outdir = ".";
  bool no_plots = false;
  unsigned threads = 0;

  // synth
  std::uint64_t seed = 1;
  int groups = 4;
  int per_group = 5;
  std::size_t min_length = 500;
  std::size_t max_length = 4000;
  double noise = 0.02;
  bool fixed_rotation = false;
  bool fixed_scale = false;
  std::string output;
};

// Tags an exception with the pipeline stage it came from.
struct StageError {
  std::string stage;
  std::string message;
  int code;
};

template <typename F>
auto stage(const std::string& name, F&& body) {
  try {
    return body();
  } catch (const InputError& e) {
    throw StageError{name, e.what(), kExitInput};
  } catch (const ComputeError& e) {
    throw StageError{name, e.what(), kExitCompute};
  } catch (const std::exception& e) {
    throw StageError{name, e.what(), kExitCompute};
  }
}

std::vector<DistanceKind> selected_kinds(const RunConfig& cfg) {
  if (cfg.distance == "all") {
    std::vector<DistanceKind> kinds;
    for (const char* name : {"l1", "sup", "hellinger", "moments"}) {
      kinds.push_back(parse_distance_kind(name, cfg.moment_order));
    }
    return kinds;
  }
  return {parse_distance_kind(cfg.distance, cfg.moment_order)};
}

Dataset load(const RunConfig& cfg) {
  if (cfg.input.empty()) throw InputError("--input is required");
  const DatasetFormat format =
      cfg.format.empty() ? format_from_extension(cfg.input) : parse_dataset_format(cfg.format);
  return read_dataset(cfg.input, format);
}

fs::path prepare_outdir(const RunConfig& cfg) {
  fs::path dir(cfg.outdir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw InputError("cannot create output directory '" + cfg.outdir + "': " + ec.message());
  return dir;
}

std::vector<StepDensity> normalize_all(const Dataset& data) {
  std::vector<StepDensity> out;
  out.reserve(data.size());
  for (const auto& seq : data.sequences) out.push_back(normalize_leaf(seq));
  return out;
}

std::string group_of(const Dataset& data, std::size_t i) {
  return data.has_groups() ? data.groups[i] : std::string();
}

void write_plots(const Dataset& data, const fs::path& dir) {
  std::vector<StepSeries> raw;
  std::vector<StepSeries> normalized;
  std::vector<LeafOutline> original;
  std::vector<LeafOutline> rotated;
  for (std::size_t i = 0; i < data.size(); ++i) {
    const auto& seq = data.sequences[i];
    raw.push_back(series_from_raw(seq, group_of(data, i)));
    normalized.push_back(series_from_density(normalize_leaf(seq), group_of(data, i)));
    original.push_back(leaf_outline(seq, false));
    rotated.push_back(leaf_outline(seq, true));
  }
  plot_densities(raw, "CCD traces without normalisation", dir / "densities_raw.svg");
  plot_densities(normalized, "Normalised and rotated circular densities",
                 dir / "densities_normalized.svg");
  plot_leaves(original, 5, "Leaves, original orientation", dir / "leaves_original.svg");
  plot_leaves(rotated, 5, "Leaves after rotation", dir / "leaves_rotated.svg");
}

std::string matrix_stem(const DistanceKind& kind) { return "matrix_" + std::string(kind.name()); }

DistanceMatrix write_distances(const std::vector<StepDensity>& densities,
                               const std::vector<std::string>& labels, const DistanceKind& kind,
                               const fs::path& dir, unsigned threads) {
  DistanceMatrix dm = stage("distances (" + std::string(kind.name()) + ")",
                            [&] { return distance_matrix(densities, labels, kind, threads); });
  stage("write matrix", [&] {
    write_matrix(dm, dir / (matrix_stem(kind) + ".csv"), MatrixFormat::kCsv);
    write_matrix(dm, dir / (matrix_stem(kind) + ".json"), MatrixFormat::kJson);
  });
  return dm;
}

void write_clustering(const DistanceMatrix& dm, const RunConfig& cfg, const fs::path& dir,
                      const std::vector<std::string>* groups) {
  const std::string kind(dm.kind().name());
  const Linkage linkage = stage("cluster", [&] { return parse_linkage(cfg.linkage); });
  const Dendrogram dend = stage("cluster (" + kind + ")", [&] { return agglomerate(dm, linkage); });
  stage("write dendrogram", [&] {
    write_text_file(dir / ("dendrogram_" + kind + ".nwk"), to_newick(dend) + "\n");
    write_text_file(dir / ("dendrogram_" + kind + ".json"), format_dendrogram_json(dend, linkage));
    if (!cfg.no_plots) {
      plot_dendrogram(dend, "Complete-linkage dendrogram, distance " + kind,
                      dir / ("dendrogram_" + kind + ".svg"));
    }
  });
  if (!cfg.cut) return;
  const auto assignment = stage("cut (" + kind + ")", [&] { return cut(dend, *cfg.cut); });
  stage("write cut", [&] {
    std::string out = groups ? "id,cluster,group\n" : "id,cluster\n";
    for (std::size_t i = 0; i < assignment.size(); ++i) {
      out += csv_quote(dend.labels[i]) + ',' + std::to_string(assignment[i]);
      if (groups) out += ',' + csv_quote((*groups)[i]);
      out += '\n';
    }
    write_text_file(dir / ("cut_" + kind + ".csv"), out);
  });
  if (groups) {
    std::vector<std::size_t> truth;
    std::vector<std::string> names;
    for (const auto& g : *groups) {
      auto it = std::find(names.begin(), names.end(), g);
      truth.push_back(static_cast<std::size_t>(it - names.begin()));
      if (it == names.end()) names.push_back(g);
    }
    std::cout << kind << ": k=" << *cfg.cut
              << " adjusted Rand index vs groups = " << format_shortest(adjusted_rand_index(assignment, truth))
              << "\n";
  }
}

void cmd_densify(const RunConfig& cfg) {
  const Dataset data = stage("read", [&] { return load(cfg); });
  const fs::path dir = stage("output", [&] { return prepare_outdir(cfg); });
  const auto densities = stage("normalize", [&] { return normalize_all(data); });
  stage("write densities", [&] { write_text_file(dir / "densities.json", format_densities_json(densities)); });
}

void cmd_distmat(const RunConfig& cfg) {
  const Dataset data = stage("read", [&] { return load(cfg); });
  const auto kinds = stage("options", [&] { return selected_kinds(cfg); });
  const fs::path dir = stage("output", [&] { return prepare_outdir(cfg); });
  const auto densities = stage("normalize", [&] { return normalize_all(data); });
  for (const auto& kind : kinds) write_distances(densities, data.ids(), kind, dir, cfg.threads);
}

void cmd_cluster(const RunConfig& cfg) {
  const auto kinds = stage("options", [&] { return selected_kinds(cfg); });
  if (kinds.size() != 1) throw StageError{"options", "cluster takes a single --distance", kExitInput};
  const DistanceMatrix dm = stage("read matrix", [&] {
    if (cfg.input.empty()) throw InputError("--input is required");
    return read_matrix_csv(cfg.input, kinds.front());
  });
  const fs::path dir = stage("output", [&] { return prepare_outdir(cfg); });
  write_clustering(dm, cfg, dir, nullptr);
}

void cmd_plot(const RunConfig& cfg) {
  const Dataset data = stage("read", [&] { return load(cfg); });
  const fs::path dir = stage("output", [&] { return prepare_outdir(cfg); });
  stage("plot", [&] { write_plots(data, dir); });
}

void cmd_pipeline(const RunConfig& cfg) {
  const Dataset data = stage("read", [&] { return load(cfg); });
  const auto kinds = stage("options", [&] { return selected_kinds(cfg); });
  stage("options", [&] {
    parse_linkage(cfg.linkage);
    if (data.size() < 2) throw InputError("clustering needs at least 2 sequences");
    if (cfg.cut && (*cfg.cut < 1 || *cfg.cut > data.size())) {
      throw InputError("--cut must be in [1, " + std::to_string(data.size()) + "]");
    }
  });
  const fs::path dir = stage("output", [&] { return prepare_outdir(cfg); });
  const auto densities = stage("normalize", [&] { return normalize_all(data); });
  stage("write densities", [&] { write_text_file(dir / "densities.json", format_densities_json(densities)); });
  if (!cfg.no_plots) stage("plot", [&] { write_plots(data, dir); });
  const auto ids = data.ids();
  for (const auto& kind : kinds) {
    const DistanceMatrix dm = write_distances(densities, ids, kind, dir, cfg.threads);
    write_clustering(dm, cfg, dir, data.has_groups() ? &data.groups : nullptr);
  }
}

void cmd_synth(const RunConfig& cfg) {
  SynthConfig synth;
  synth.groups = cfg.groups;
  synth.per_group = cfg.per_group;
  synth.min_length = cfg.min_length;
  synth.max_length = cfg.max_length;
  synth.noise = cfg.noise;
  synth.random_rotation = !cfg.fixed_rotation;
  synth.random_scale = !cfg.fixed_scale;
  synth.seed = cfg.seed;
  const Dataset data = stage("synth", [&] { return synthesize(synth); });
  stage("write dataset", [&] {
    if (cfg.output.empty()) throw InputError("--output is required");
    const DatasetFormat format =
        cfg.format.empty() ? format_from_extension(cfg.output) : parse_dataset_format(cfg.format);
    write_dataset(data, cfg.output, format);
  });
}

}  // namespace

int run(int argc, const char* const* argv) {
  CLI::App app{"Leaf-shape clustering from centroid contour distance traces", "leafclust"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "key=value configuration file; command-line flags take precedence");

  RunConfig cfg;
  app.add_option("--input", cfg.input, "Dataset (CSV/JSON) or, for 'cluster', a matrix CSV");
  app.add_option("--format", cfg.format, "Dataset format")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--distance", cfg.distance, "Dissimilarity")
      ->check(CLI::IsMember({"l1", "sup", "hellinger", "moments", "all"}))
      ->capture_default_str();
  app.add_option("--r", cfg.moment_order, "Trigonometric moment order for 'moments'")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--linkage", cfg.linkage, "Cluster linkage")
      ->check(CLI::IsMember({"complete", "single", "average"}))
      ->capture_default_str();
  app.add_option("--cut", cfg.cut, "Number of flat clusters to extract");
  app.add_option("--outdir", cfg.outdir, "Output directory")->capture_default_str();
  app.add_flag("--no-plots", cfg.no_plots, "Skip SVG output");
  app.add_option("--threads", cfg.threads, "Worker threads for distance matrices (0 = auto)");
  app.add_option("--seed", cfg.seed, "Seed for 'synth'")->capture_default_str();
  app.add_option("--groups", cfg.groups, "Number of shape groups for 'synth'")->capture_default_str();
  app.add_option("--per-group", cfg.per_group, "Traces per group for 'synth'")->capture_default_str();
  app.add_option("--min-length", cfg.min_length, "Shortest trace for 'synth'")->capture_default_str();
  app.add_option("--max-length", cfg.max_length, "Longest trace for 'synth'")->capture_default_str();
  app.add_option("--noise", cfg.noise, "Multiplicative noise sd for 'synth'")->capture_default_str();
  app.add_flag("--fixed-rotation", cfg.fixed_rotation, "'synth': no random rotation");
  app.add_flag("--fixed-scale", cfg.fixed_scale, "'synth': unit scale for every trace");
  app.add_option("--output", cfg.output, "Dataset path written by 'synth'");

  auto* densify = app.add_subcommand("densify", "Normalise traces and write densities.json");
  auto* distmat = app.add_subcommand("distmat", "Write distance matrices");
  auto* cluster = app.add_subcommand("cluster", "Cluster a matrix CSV");
  auto* plot = app.add_subcommand("plot", "Write density and leaf SVGs");
  auto* pipeline = app.add_subcommand("pipeline", "Run every stage");
  auto* synth = app.add_subcommand("synth", "Generate a synthetic dataset");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (densify->parsed()) cmd_densify(cfg);
    if (distmat->parsed()) cmd_distmat(cfg);
    if (cluster->parsed()) cmd_cluster(cfg);
    if (plot->parsed()) cmd_plot(cfg);
    if (pipeline->parsed()) cmd_pipeline(cfg);
    if (synth->parsed()) cmd_synth(cfg);
  } catch (const StageError& e) {
    std::cerr << "leafclust: " << e.stage << ": " << e.message << "\n";
    return e.code;
  }
  return kExitOk;
}

}  // namespace leafclust::cli
