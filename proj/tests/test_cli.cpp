#include <filesystem>
#include <string>
#include <vector>

#include "doctest.h"
#include "leafclust/cli.hpp"
#include "leafclust/dataset.hpp"
#include "leafclust/distances.hpp"
#include "leafclust/serialize.hpp"

using namespace leafclust;
namespace fs = std::filesystem;

namespace {

int run(std::vector<std::string> args) {
  args.insert(args.begin(), "leafclust");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  return cli::run(static_cast<int>(argv.size()), argv.data());
}

fs::path fresh_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "leafclust_test_cli" / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::size_t count_with(const fs::path& dir, const std::string& prefix, const std::string& ext) {
  std::size_t n = 0;
  for (const auto& entry : fs::directory_iterator(dir)) {
    const std::string name = entry.path().filename().string();
    if (name.rfind(prefix, 0) == 0 && entry.path().extension() == ext) ++n;
  }
  return n;
}

}  // namespace

TEST_SUITE_BEGIN("cli");

TEST_CASE("two-leaf pipeline with D1") {
  const fs::path dir = fresh_dir("two");
  write_text_file(dir / "in.csv", "id,value\na,1\na,2\na,3\nb,3\nb,1\nb,1\n");
  REQUIRE(run({"pipeline", "--input", (dir / "in.csv").string(), "--distance", "l1", "--outdir",
               (dir / "out").string()}) == cli::kExitOk);
  CHECK(count_with(dir / "out", "matrix_", ".csv") == 1);
  CHECK(count_with(dir / "out", "dendrogram_", ".svg") == 1);
  CHECK(fs::exists(dir / "out" / "densities_raw.svg"));
  CHECK(fs::exists(dir / "out" / "densities_normalized.svg"));
  CHECK(fs::exists(dir / "out" / "leaves_original.svg"));
  CHECK(fs::exists(dir / "out" / "leaves_rotated.svg"));
  const std::string newick = read_text_file(dir / "out" / "dendrogram_l1.nwk");
  CHECK(newick.rfind("(a:", 0) == 0);
}

TEST_CASE("distance all fans out") {
  const fs::path dir = fresh_dir("all");
  write_text_file(dir / "in.json", R"({"p":[1,2,3,4],"q":[4,3,2,1],"r":[1,1,5,1],"s":[2,2,2,9,1]})");
  REQUIRE(run({"pipeline", "--input", (dir / "in.json").string(), "--distance", "all", "--outdir",
               (dir / "out").string(), "--no-plots"}) == cli::kExitOk);
  CHECK(count_with(dir / "out", "matrix_", ".csv") == 4);
  CHECK(count_with(dir / "out", "matrix_", ".json") == 4);
  CHECK(count_with(dir / "out", "dendrogram_", ".nwk") == 4);
  CHECK(count_with(dir / "out", "dendrogram_", ".json") == 4);
  CHECK(count_with(dir / "out", "dendrogram_", ".svg") == 0);
  CHECK_FALSE(fs::exists(dir / "out" / "densities_raw.svg"));
}

TEST_CASE("stage subcommands agree with the library") {
  const fs::path dir = fresh_dir("stages");
  REQUIRE(run({"synth", "--groups", "2", "--per-group", "3", "--min-length", "100", "--max-length", "300",
               "--seed", "5", "--output", (dir / "synth.json").string()}) == cli::kExitOk);
  const Dataset data = read_dataset(dir / "synth.json", DatasetFormat::kJson);
  CHECK(data.size() == 6);
  CHECK(data.has_groups());

  REQUIRE(run({"distmat", "--input", (dir / "synth.json").string(), "--distance", "moments", "--r", "3",
               "--outdir", dir.string()}) == cli::kExitOk);
  std::vector<StepDensity> ds;
  for (const auto& s : data.sequences) ds.push_back(normalize_leaf(s));
  const auto expected = distance_matrix(ds, data.ids(), DistanceKind{DistanceTag::kMomentEuclidean, 3});
  CHECK(read_text_file(dir / "matrix_moments.csv") == format_matrix(expected, MatrixFormat::kCsv));

  REQUIRE(run({"cluster", "--input", (dir / "matrix_moments.csv").string(), "--distance", "moments", "--cut",
               "2", "--outdir", dir.string()}) == cli::kExitOk);
  CHECK(read_text_file(dir / "dendrogram_moments.nwk") ==
        to_newick(agglomerate(expected, Linkage::kComplete)) + "\n");
  CHECK(fs::exists(dir / "cut_moments.csv"));

  REQUIRE(run({"densify", "--input", (dir / "synth.json").string(), "--outdir", dir.string()}) == cli::kExitOk);
  CHECK(read_text_file(dir / "densities.json") == format_densities_json(ds));

  REQUIRE(run({"plot", "--input", (dir / "synth.json").string(), "--outdir", (dir / "plots").string()}) ==
          cli::kExitOk);
  CHECK(fs::exists(dir / "plots" / "leaves_rotated.svg"));
}

TEST_CASE("config file with flag precedence") {
  const fs::path dir = fresh_dir("config");
  write_text_file(dir / "in.csv", "id,value\na,1\na,2\na,3\nb,3\nb,1\nb,1\nc,2\nc,2\nc,1\n");
  write_text_file(dir / "run.conf", "distance=sup\nno-plots=true\noutdir=" + (dir / "from_config").string() + "\n");
  REQUIRE(run({"pipeline", "--config", (dir / "run.conf").string(), "--input", (dir / "in.csv").string()}) ==
          cli::kExitOk);
  CHECK(fs::exists(dir / "from_config" / "matrix_sup.csv"));
  CHECK_FALSE(fs::exists(dir / "from_config" / "densities_raw.svg"));

  REQUIRE(run({"pipeline", "--config", (dir / "run.conf").string(), "--input", (dir / "in.csv").string(),
               "--distance", "hellinger"}) == cli::kExitOk);
  CHECK(fs::exists(dir / "from_config" / "matrix_hellinger.csv"));
}

TEST_CASE("exit codes") {
  const fs::path dir = fresh_dir("errors");
  CHECK(run({"pipeline", "--input", (dir / "missing.csv").string()}) == cli::kExitInput);
  write_text_file(dir / "neg.csv", "id,value\na,1\na,-2\nb,1\nb,1\n");
  CHECK(run({"pipeline", "--input", (dir / "neg.csv").string(), "--outdir", dir.string()}) == cli::kExitInput);
  write_text_file(dir / "ok.csv", "id,value\na,1\na,2\nb,1\nb,1\n");
  CHECK(run({"pipeline", "--input", (dir / "ok.csv").string(), "--cut", "3", "--outdir", dir.string()}) ==
        cli::kExitInput);
  CHECK(run({"pipeline", "--input", (dir / "ok.csv").string(), "--distance", "wasserstein"}) == cli::kExitInput);
  CHECK(run({"pipeline", "--input", (dir / "ok.csv").string(), "--r", "0"}) == cli::kExitInput);
  CHECK(run({}) == cli::kExitInput);
  CHECK(run({"synth", "--groups", "0", "--output", (dir / "s.csv").string()}) == cli::kExitInput);
}

TEST_SUITE_END();
