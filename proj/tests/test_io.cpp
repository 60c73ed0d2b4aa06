#include <filesystem>
#include <random>

#include "doctest.h"
#include "json.hpp"
#include "leafclust/dataset.hpp"
#include "leafclust/error.hpp"
#include "leafclust/serialize.hpp"
#include "leafclust/synth.hpp"

using namespace leafclust;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "leafclust_test_io";
  fs::create_directories(dir);
  return dir / name;
}

Dataset random_dataset(std::mt19937_64& rng) {
  Dataset data;
  const int m = 1 + static_cast<int>(rng() % 5);
  std::uniform_real_distribution<double> u(0.0, 1000.0);
  for (int i = 0; i < m; ++i) {
    std::vector<double> y(2 + rng() % 30);
    for (auto& v : y) v = u(rng) / 3.0;
    if (y[0] == 0.0) y[0] = 1.0;
    data.sequences.emplace_back("id" + std::to_string(i) + (i % 2 ? ",x" : ""), std::move(y));
    data.groups.push_back(i % 2 ? "odd" : "even");
  }
  return data;
}

}  // namespace

TEST_SUITE_BEGIN("io");

TEST_CASE("read long CSV") {
  const Dataset data = parse_dataset("id,value\na,1\na,1\nb,2\nb,2\n", DatasetFormat::kCsv);
  REQUIRE(data.size() == 2);
  CHECK(data.sequences[0].id() == "a");
  CHECK(data.sequences[1].values() == std::vector<double>{2, 2});
  CHECK_FALSE(data.has_groups());

  const Dataset grouped = parse_dataset("id,value,group\r\na,1,X\r\na,2,X\r\n", DatasetFormat::kCsv);
  CHECK(grouped.groups == std::vector<std::string>{"X"});
}

TEST_CASE("CSV errors") {
  CHECK_THROWS_AS(parse_dataset("", DatasetFormat::kCsv), InputError);
  CHECK_THROWS_AS(parse_dataset("name,value\na,1\na,2\n", DatasetFormat::kCsv), InputError);
  CHECK_THROWS_AS(parse_dataset("id,value\na,1\na,oops\n", DatasetFormat::kCsv), InputError);
  CHECK_THROWS_AS(parse_dataset("id,value\na,1\n", DatasetFormat::kCsv), InputError);  // length 1
  CHECK_THROWS_AS(parse_dataset("id,value\na,1\nb,1\nb,2\na,3\n", DatasetFormat::kCsv), InputError);
  try {
    parse_dataset("id,value\na,1\na,1\nleafX,2\nleafX,-4\n", DatasetFormat::kCsv);
    FAIL("negative value accepted");
  } catch (const InputError& e) {
    const std::string what = e.what();
    CHECK(what.find("leafX") != std::string::npos);
    CHECK(what.find("row 5") != std::string::npos);
  }
}

TEST_CASE("read JSON") {
  const Dataset data = parse_dataset(R"({"a":[1,1,1,1]})", DatasetFormat::kJson);
  REQUIRE(data.size() == 1);
  CHECK(data.sequences[0].values() == std::vector<double>{1, 1, 1, 1});

  const Dataset ordered = parse_dataset(R"({"z":[1,2],"a":[3,4],"groups":{"a":"P","z":"Q"}})", DatasetFormat::kJson);
  CHECK(ordered.ids() == std::vector<std::string>{"z", "a"});
  CHECK(ordered.groups == std::vector<std::string>{"Q", "P"});

  CHECK_THROWS_AS(parse_dataset("{", DatasetFormat::kJson), InputError);
  CHECK_THROWS_AS(parse_dataset("[1,2]", DatasetFormat::kJson), InputError);
  CHECK_THROWS_AS(parse_dataset(R"({"a":[1,-2]})", DatasetFormat::kJson), InputError);
  CHECK_THROWS_AS(parse_dataset(R"({"a":[1,"x"]})", DatasetFormat::kJson), InputError);
  CHECK_THROWS_AS(parse_dataset(R"({"a":[0,0]})", DatasetFormat::kJson), InputError);
  CHECK_THROWS_AS(parse_dataset(R"({"a":[1,2],"groups":{}})", DatasetFormat::kJson), InputError);
}

TEST_CASE("dataset round trips are exact") {
  std::mt19937_64 rng(83);
  for (int trial = 0; trial < 30; ++trial) {
    const Dataset data = random_dataset(rng);
    for (DatasetFormat format : {DatasetFormat::kCsv, DatasetFormat::kJson}) {
      const fs::path path = scratch(format == DatasetFormat::kCsv ? "rt.csv" : "rt.json");
      write_dataset(data, path, format);
      const Dataset back = read_dataset(path, format);
      REQUIRE(back.size() == data.size());
      CHECK(back.groups == data.groups);
      for (std::size_t i = 0; i < data.size(); ++i) {
        CHECK(back.sequences[i].id() == data.sequences[i].id());
        CHECK(back.sequences[i].values() == data.sequences[i].values());
      }
    }
  }
}

TEST_CASE("CSV quoting") {
  CHECK(csv_quote("plain") == "plain");
  CHECK(csv_quote("a,b") == "\"a,b\"");
  CHECK(csv_quote("say \"hi\"") == "\"say \"\"hi\"\"\"");
  CHECK(csv_split("\"a,b\",1,\"x\"\"y\"") == std::vector<std::string>{"a,b", "1", "x\"y"});
  CHECK_THROWS_AS(csv_split("\"open"), InputError);
}

TEST_CASE("matrix output") {
  SUBCASE("2x2 zero matrix") {
    const DistanceMatrix dm({"a", "b"}, {0, 0, 0, 0}, DistanceKind{});
    CHECK(format_matrix(dm, MatrixFormat::kCsv) == ",a,b\na,0,0\nb,0,0\n");
  }
  SUBCASE("labels with commas are quoted and read back") {
    const DistanceMatrix dm({"x,1", "y"}, {0, 0.1, 0.1, 0}, DistanceKind{DistanceTag::kSup});
    const std::string csv = format_matrix(dm, MatrixFormat::kCsv);
    CHECK(csv == ",\"x,1\",y\n\"x,1\",0,0.10000000000000001\ny,0.10000000000000001,0\n");
    const auto back = parse_matrix_csv(csv, dm.kind());
    CHECK(back.labels() == dm.labels());
    CHECK(back.entries() == dm.entries());
  }
  SUBCASE("random entries survive a file round trip bit for bit") {
    std::mt19937_64 rng(89);
    std::uniform_real_distribution<double> u(0.0, 2.0);
    const std::size_t m = 7;
    std::vector<double> e(m * m, 0.0);
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < m; ++i) {
      labels.push_back("L" + std::to_string(i));
      for (std::size_t k = i + 1; k < m; ++k) e[i * m + k] = e[k * m + i] = u(rng);
    }
    const DistanceMatrix dm(labels, e, DistanceKind{DistanceTag::kHellingerSq});
    const fs::path path = scratch("matrix.csv");
    write_matrix(dm, path, MatrixFormat::kCsv);
    CHECK(read_matrix_csv(path, dm.kind()).entries() == dm.entries());
  }
  SUBCASE("JSON schema") {
    const DistanceMatrix dm({"a", "b"}, {0, 0.5, 0.5, 0}, DistanceKind{DistanceTag::kMomentEuclidean, 5});
    const auto doc = nlohmann::json::parse(format_matrix(dm, MatrixFormat::kJson));
    CHECK(doc["labels"] == nlohmann::json({"a", "b"}));
    CHECK(doc["kind"] == "moments");
    CHECK(doc["moment_order"] == 5);
    CHECK(doc["entries"][0][1].get<double>() == 0.5);
  }
  SUBCASE("unwritable path") {
    const DistanceMatrix dm({"a", "b"}, {0, 0, 0, 0}, DistanceKind{});
    CHECK_THROWS_AS(write_matrix(dm, "/nonexistent-dir/x/m.csv", MatrixFormat::kCsv), InputError);
  }
  SUBCASE("malformed matrix CSV") {
    CHECK_THROWS_AS(parse_matrix_csv(",a,b\na,0,1\n", DistanceKind{}), InputError);
    CHECK_THROWS_AS(parse_matrix_csv(",a,b\na,0,1\nb,2,0\n", DistanceKind{}), InputError);
    CHECK_THROWS_AS(parse_matrix_csv(",a,b\nb,0,1\na,1,0\n", DistanceKind{}), InputError);
  }
}

TEST_CASE("dendrogram and density JSON") {
  const DistanceMatrix dm({"A", "B", "C"}, {0, 1, 5, 1, 0, 2, 5, 2, 0}, DistanceKind{});
  const auto dend = agglomerate(dm, Linkage::kComplete);
  const auto doc = nlohmann::json::parse(format_dendrogram_json(dend, Linkage::kComplete));
  CHECK(doc["linkage"] == "complete");
  REQUIRE(doc["merges"].size() == 2);
  CHECK(doc["merges"][1]["left"] == 2);
  CHECK(doc["merges"][1]["right"] == 3);
  CHECK(doc["merges"][1]["height"].get<double>() == 5.0);
  CHECK(doc["merges"][1]["size"] == 3);

  const auto d = normalize_leaf(CcdSequence("q", {1, 0, 0, 0}));
  const auto dj = nlohmann::json::parse(format_densities_json({d}));
  CHECK(dj["q"]["heights"].size() == d.intervals());
  CHECK(dj["q"]["breakpoints"].back().get<double>() == kTwoPi);
  CHECK(dj["q"]["direction_defined"] == true);
}

TEST_SUITE_END();
