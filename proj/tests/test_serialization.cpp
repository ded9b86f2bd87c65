#include <algorithm>
#include <cstdio>
#include <string>
#include <vector>

#include "doctest.h"
#include "symquad/errors.hpp"
#include "symquad/node_selection.hpp"
#include "symquad/node_set.hpp"
#include "symquad/rule.hpp"
#include "symquad/serialization.hpp"

namespace {

using namespace symquad;

SymmetricNodeSet sample_node_set(std::uint64_t seed = 41) {
  return make_node_set(
      3, random_generators(4, 3, MeasureKind::kStdGaussian, seed));
}

}  // namespace

TEST_SUITE("serialization") {

TEST_CASE("doubles print in shortest round-trip form") {
  for (const double v : {1.0 / 3.0, 0.1, 3.141592653589793, 1e-300, 6.02e23,
                         -0.0, 123456789.123456789}) {
    const std::string text = format_double(v);
    CHECK(std::stod(text) == v);
  }
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(2.0) == "2");
}

TEST_CASE("node hash is sensitive to content") {
  const auto ns = sample_node_set();
  const auto ns2 = sample_node_set();
  CHECK(node_set_hash(ns) == node_set_hash(ns2));
  CHECK(node_set_hash(ns) != node_set_hash(sample_node_set(42)));
  CHECK(hash_hex(node_set_hash(ns)).size() == 16);

  // Dropping a set changes the hash.
  SymmetricNodeSet fewer = ns;
  fewer.total_nodes -= fewer.sets.back().size;
  fewer.sets.pop_back();
  CHECK(node_set_hash(ns) != node_set_hash(fewer));
}

TEST_CASE("node set json round trip is exact") {
  const auto ns = sample_node_set();
  const auto doc = node_set_json(ns, {.key = "source", .value = "random:seed=41"});
  CHECK(doc.at("dim") == 3);
  CHECK(doc.at("source") == "random:seed=41");
  CHECK(doc.at("total_nodes") == ns.total_nodes);

  const auto back = node_set_from_json(doc);
  REQUIRE(back.sets.size() == ns.sets.size());
  CHECK(back.dim == ns.dim);
  CHECK(back.total_nodes == ns.total_nodes);
  for (std::size_t j = 0; j < ns.sets.size(); ++j) {
    CHECK(back.sets[j].generator.values == ns.sets[j].generator.values);
    CHECK(back.sets[j].points == ns.sets[j].points);
  }
}

TEST_CASE("node set json text is deterministic") {
  const auto a = node_set_json(sample_node_set(), {.key = "basis", .value = "x"});
  const auto b = node_set_json(sample_node_set(), {.key = "basis", .value = "x"});
  CHECK(a.dump(2) == b.dump(2));
}

TEST_CASE("tampered node set files are rejected") {
  const auto ns = sample_node_set();
  auto doc = node_set_json(ns, {});
  doc["total_nodes"] = doc["total_nodes"].get<std::int64_t>() + 1;
  CHECK_THROWS_AS(node_set_from_json(doc), IoError);

  auto doc2 = node_set_json(ns, {});
  doc2["generators"][0][0] = doc2["generators"][0][0].get<double>() + 0.25;
  CHECK_THROWS_WITH_AS(node_set_from_json(doc2), doctest::Contains("metadata"),
                       IoError);

  auto doc3 = node_set_json(ns, {});
  doc3.erase("hash");
  CHECK_THROWS_AS(node_set_from_json(doc3), IoError);
}

TEST_CASE("rule json round trip preserves weights bit-exactly") {
  const auto ns = sample_node_set();
  const GaussianKernel k(0.8, 1.5);
  const SymmetricMeasure mu(MeasureKind::kStdGaussian, 3);
  const auto rule = make_rule(ns, k, mu);
  const auto doc = rule_json(rule, {.key = "source", .value = "random:seed=41"});
  CHECK(doc.at("kernel").at("family") == "gaussian");
  CHECK(doc.at("measure").at("kind") == "std_gaussian");

  const auto text = doc.dump(2);
  const auto back = rule_from_json(nlohmann::json::parse(text));
  CHECK(back.weights == rule.weights);
  CHECK(back.wce == rule.wce);
  CHECK(back.cond_estimate == rule.cond_estimate);
  CHECK(back.kernel.length_scale == rule.kernel.length_scale);
  CHECK(back.kernel.scale == rule.kernel.scale);
  CHECK(back.measure.kind == rule.measure.kind);

  const auto f = [](std::span<const double> x) {
    return x[0] * x[0] + 0.5 * x[1] - x[2];
  };
  CHECK(integrate(back, f) == integrate(rule, f));
}

TEST_CASE("rule json rejects foreign descriptors") {
  const auto rule = make_rule(sample_node_set(), GaussianKernel(1.0),
                              SymmetricMeasure(MeasureKind::kStdGaussian, 3));
  auto doc = rule_json(rule, {});
  doc["kernel"]["family"] = "matern";
  CHECK_THROWS_AS(rule_from_json(doc), ValidationError);

  auto doc2 = rule_json(rule, {});
  doc2["measure"]["kind"] = "lebesgue";
  CHECK_THROWS_AS(rule_from_json(doc2), ValidationError);
}

TEST_CASE("values files are keyed by the node hash") {
  const auto ns = sample_node_set();
  const std::uint64_t h = node_set_hash(ns);
  const std::vector<double> values = {1.0, 2.0, 3.0};
  const auto doc = values_json(h, values);
  CHECK(values_from_json(doc, h) == values);
  CHECK_THROWS_WITH_AS(values_from_json(doc, h + 1),
                       doctest::Contains("keyed"), ValidationError);
}

TEST_CASE("report csv has the fixed header and one row per entry") {
  ExperimentReport report{.id = "t", .rows = {}};
  report.rows.push_back(ReportRow{.method = "a", .n = 10, .j = 2, .estimate = 0.5,
                                  .truth = 0.25, .rel_error = 1.0, .wce = 0.1,
                                  .t_kernel_s = 0.0, .t_weights_s = 0.0,
                                  .t_fss_s = 0.0, .seed = 0, .length_scale = 1.0,
                                  .warnings = {}});
  report.rows.push_back(ReportRow{.method = "b", .n = 20, .j = 3, .estimate = 0.5,
                                  .truth = 0.25, .rel_error = 1.0, .wce = 0.1,
                                  .t_kernel_s = 0.0, .t_weights_s = 0.0,
                                  .t_fss_s = 0.0, .seed = 1, .length_scale = 1.0,
                                  .warnings = {}});
  const auto csv = report_csv(report);
  CHECK(csv.rfind("n,J,estimate,truth,rel_error,wce,t_kernel_s,t_weights_s,"
                  "t_fss_s\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 3);
  CHECK(report_csv(report, "a").find("10,2,0.5,0.25,1,") != std::string::npos);
  const auto csv_b = report_csv(report, "b");
  CHECK(std::count(csv_b.begin(), csv_b.end(), '\n') == 2);
  CHECK(report_methods(report) == std::vector<std::string>{"a", "b"});
}

TEST_CASE("report json carries the fields the csv cannot") {
  ExperimentReport report{.id = "t", .rows = {}};
  report.rows.push_back(ReportRow{.method = "m", .n = 1, .j = 1, .estimate = 0.0,
                                  .truth = 0.0, .rel_error = 0.0, .wce = 0.0,
                                  .t_kernel_s = 0.0, .t_weights_s = 0.0,
                                  .t_fss_s = 0.0, .seed = 9, .length_scale = 0.7,
                                  .warnings = {"w1"}});
  const auto doc = report_json(report);
  CHECK(doc.at("id") == "t");
  CHECK(doc.at("rows")[0].at("method") == "m");
  CHECK(doc.at("rows")[0].at("seed") == 9);
  CHECK(doc.at("rows")[0].at("warnings")[0] == "w1");
}

TEST_CASE("file io errors carry reason codes") {
  CHECK_THROWS_AS(read_text_file("/nonexistent/path/x.json"), IoError);
  const std::string path = "/tmp/symquad_test_bad.json";
  write_text_file(path, "{not json");
  CHECK_THROWS_AS(read_json_file(path), IoError);
  std::remove(path.c_str());
  write_text_file(path, "{\"a\": 1}");
  CHECK(read_json_file(path).at("a") == 1);
  std::remove(path.c_str());
}

}  // TEST_SUITE
