#include "symquad/serialization.hpp"

#include <bit>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "symquad/errors.hpp"
#include "symquad/node_set.hpp"

namespace symquad {

namespace {

constexpr std::uint64_t kFnvOffset = 0xcbf29ce484222325ull;
constexpr std::uint64_t kFnvPrime = 0x100000001b3ull;

std::uint64_t fnv1a_u64(std::uint64_t h, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) {
    h ^= (v >> (8 * i)) & 0xff;
    h *= kFnvPrime;
  }
  return h;
}

const nlohmann::json& require(const nlohmann::json& doc, const char* key) {
  auto it = doc.find(key);
  if (it == doc.end())
    throw IoError("invalid-config", std::string("missing key '") + key + "'");
  return *it;
}

}  // namespace

std::uint64_t node_set_hash(const SymmetricNodeSet& ns) {
  std::uint64_t h = kFnvOffset;
  h = fnv1a_u64(h, static_cast<std::uint64_t>(ns.dim));
  for (const auto& set : ns.sets) {
    h = fnv1a_u64(h, static_cast<std::uint64_t>(set.size));
    for (double v : set.generator.values)
      h = fnv1a_u64(h, std::bit_cast<std::uint64_t>(v));
  }
  return h;
}

std::string hash_hex(std::uint64_t h) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

nlohmann::json node_set_json(const SymmetricNodeSet& ns,
                             const NodeSetProvenance& prov) {
  nlohmann::json doc;
  doc["dim"] = ns.dim;
  doc[prov.key] = prov.value;
  auto gens = nlohmann::json::array();
  auto sizes = nlohmann::json::array();
  for (const auto& set : ns.sets) {
    gens.push_back(set.generator.values);
    sizes.push_back(set.size);
  }
  doc["generators"] = std::move(gens);
  doc["sizes"] = std::move(sizes);
  doc["total_nodes"] = ns.total_nodes;
  doc["hash"] = hash_hex(node_set_hash(ns));
  return doc;
}

SymmetricNodeSet node_set_from_json(const nlohmann::json& doc,
                                    std::int64_t max_points) {
  const int dim = require(doc, "dim").get<int>();
  std::vector<GeneratorVector> gens;
  for (const auto& g : require(doc, "generators"))
    gens.push_back(canonicalize_generator(g.get<std::vector<double>>()));
  auto ns = make_node_set(dim, gens, max_points);

  const auto& sizes = require(doc, "sizes");
  bool ok = sizes.size() == ns.sets.size();
  for (std::size_t j = 0; ok && j < ns.sets.size(); ++j)
    ok = sizes[j].get<std::int64_t>() == ns.sets[j].size;
  ok = ok && require(doc, "total_nodes").get<std::int64_t>() == ns.total_nodes;
  ok = ok && require(doc, "hash").get<std::string>() == hash_hex(node_set_hash(ns));
  if (!ok)
    throw IoError("hash-mismatch",
                  "node-set file metadata does not match its generators");
  return ns;
}

nlohmann::json rule_json(const FsQuadratureRule& rule,
                         const NodeSetProvenance& prov) {
  nlohmann::json doc = node_set_json(rule.node_set, prov);
  doc["kernel"] = {{"family", "gaussian"},
                   {"length_scale", rule.kernel.length_scale},
                   {"scale", rule.kernel.scale}};
  doc["measure"] = {{"kind", measure_kind_name(rule.measure.kind)},
                    {"dim", rule.measure.dim}};
  doc["weights"] = rule.weights;
  doc["wce"] = rule.wce;
  doc["cond_estimate"] = rule.cond_estimate;
  return doc;
}

FsQuadratureRule rule_from_json(const nlohmann::json& doc,
                                std::int64_t max_points) {
  FsQuadratureRule rule;
  rule.node_set = node_set_from_json(doc, max_points);

  const auto& kj = require(doc, "kernel");
  if (require(kj, "family").get<std::string>() != "gaussian")
    throw ValidationError("invalid-kernel", "unsupported kernel family");
  rule.kernel = GaussianKernel(require(kj, "length_scale").get<double>(),
                               require(kj, "scale").get<double>());

  const auto& mj = require(doc, "measure");
  const auto kind_name = require(mj, "kind").get<std::string>();
  MeasureKind kind;
  if (kind_name == "std_gaussian")
    kind = MeasureKind::kStdGaussian;
  else if (kind_name == "uniform_cube")
    kind = MeasureKind::kUniformCube;
  else
    throw ValidationError("no-closed-form", "unsupported measure '" + kind_name + "'");
  rule.measure = SymmetricMeasure(kind, require(mj, "dim").get<int>());
  if (rule.measure.dim != rule.node_set.dim)
    throw ValidationError("dimension-mismatch",
                          "measure dimension does not match the node set");

  rule.weights = require(doc, "weights").get<std::vector<double>>();
  if (rule.weights.size() != rule.node_set.sets.size())
    throw IoError("invalid-config", "weight count does not match set count");
  rule.wce = require(doc, "wce").get<double>();
  rule.cond_estimate = require(doc, "cond_estimate").get<double>();
  rule.set_means.reserve(rule.node_set.sets.size());
  for (const auto& set : rule.node_set.sets)
    rule.set_means.push_back(
        kernel_mean(rule.kernel, rule.measure, set.generator.values));
  return rule;
}

nlohmann::json values_json(std::uint64_t hash, std::span<const double> values) {
  nlohmann::json doc;
  doc["hash"] = hash_hex(hash);
  doc["values"] = std::vector<double>(values.begin(), values.end());
  return doc;
}

std::vector<double> values_from_json(const nlohmann::json& doc,
                                     std::uint64_t expect_hash) {
  const auto stored = require(doc, "hash").get<std::string>();
  if (stored != hash_hex(expect_hash))
    throw ValidationError("hash-mismatch",
                          "values file is keyed to node hash " + stored +
                              ", rule has " + hash_hex(expect_hash));
  return require(doc, "values").get<std::vector<double>>();
}

std::vector<std::string> report_methods(const ExperimentReport& report) {
  std::vector<std::string> methods;
  for (const auto& row : report.rows) {
    bool seen = false;
    for (const auto& m : methods) seen = seen || m == row.method;
    if (!seen) methods.push_back(row.method);
  }
  return methods;
}

std::string report_csv(const ExperimentReport& report, const std::string& method) {
  std::string out = "n,J,estimate,truth,rel_error,wce,t_kernel_s,t_weights_s,t_fss_s\n";
  for (const auto& row : report.rows) {
    if (!method.empty() && row.method != method) continue;
    out += std::to_string(row.n);
    out += ',';
    out += std::to_string(row.j);
    for (double v : {row.estimate, row.truth, row.rel_error, row.wce,
                     row.t_kernel_s, row.t_weights_s, row.t_fss_s}) {
      out += ',';
      out += format_double(v);
    }
    out += '\n';
  }
  return out;
}

nlohmann::json report_json(const ExperimentReport& report) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : report.rows)
    rows.push_back({{"method", row.method},
                    {"n", row.n},
                    {"J", row.j},
                    {"estimate", row.estimate},
                    {"truth", row.truth},
                    {"rel_error", row.rel_error},
                    {"wce", row.wce},
                    {"t_kernel_s", row.t_kernel_s},
                    {"t_weights_s", row.t_weights_s},
                    {"t_fss_s", row.t_fss_s},
                    {"seed", row.seed},
                    {"length_scale", row.length_scale},
                    {"warnings", row.warnings}});
  return nlohmann::json{{"id", report.id}, {"rows", std::move(rows)}};
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("file-not-found", "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  if (!in.good() && !in.eof())
    throw IoError("read-failure", "error reading '" + path + "'");
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("write-failure", "cannot open '" + path + "' for writing");
  out << text;
  out.flush();
  if (!out.good()) throw IoError("write-failure", "error writing '" + path + "'");
}

nlohmann::json read_json_file(const std::string& path) {
  const auto text = read_text_file(path);
  auto doc = nlohmann::json::parse(text, nullptr, false);
  if (doc.is_discarded())
    throw IoError("parse-failure", "'" + path + "' is not valid JSON");
  return doc;
}

}  // namespace symquad
