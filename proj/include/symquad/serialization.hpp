#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "symquad/experiments.hpp"
#include "symquad/rule.hpp"

namespace symquad {

/// FNV-1a over dimension, set sizes, and generator value bit patterns.
/// Pins the full expanded point list: expansion order is deterministic.
std::uint64_t node_set_hash(const SymmetricNodeSet& ns);

/// 16 lowercase hex digits.
std::string hash_hex(std::uint64_t h);

/// Where the generators came from, recorded in the file for reproducibility.
/// key is "basis" for sparse grids and "source" otherwise.
struct NodeSetProvenance {
  std::string key = "source";
  std::string value = "manual";
};

nlohmann::json node_set_json(const SymmetricNodeSet& ns,
                             const NodeSetProvenance& prov);

/// Rebuilds the set from the stored generators and verifies sizes,
/// total_nodes, and hash against the document.
SymmetricNodeSet node_set_from_json(const nlohmann::json& doc,
                                    std::int64_t max_points = kDefaultExpandCap);

nlohmann::json rule_json(const FsQuadratureRule& rule,
                         const NodeSetProvenance& prov);

/// Weights, wce, and cond_estimate load verbatim from the file; set means
/// are recomputed (they are determined by kernel, measure, and generators).
FsQuadratureRule rule_from_json(const nlohmann::json& doc,
                                std::int64_t max_points = kDefaultExpandCap);

nlohmann::json values_json(std::uint64_t hash, std::span<const double> values);

/// Throws "hash-mismatch" when the file is keyed to a different node set.
std::vector<double> values_from_json(const nlohmann::json& doc,
                                     std::uint64_t expect_hash);

/// Distinct methods in first-appearance order.
std::vector<std::string> report_methods(const ExperimentReport& report);

/// Fixed header; rows filtered to one method, or all rows when method is
/// empty. Floats use shortest round-trip decimals.
std::string report_csv(const ExperimentReport& report,
                       const std::string& method = "");

nlohmann::json report_json(const ExperimentReport& report);

std::string format_double(double v);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);
nlohmann::json read_json_file(const std::string& path);

}  // namespace symquad
