#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace magnusforge::reports {

// Report builders behind the command line subcommands. Every builder is a
// pure function of its arguments, with deterministic, byte-stable output for
// a fixed configuration and seed.

struct CommonConfig {
  long long seed = 0;
};

// Groups are named by compact specs: "z5", "s3", "z5xz7", "zxz", "z",
// "lamp", or "@file.json" for a custom multiplication table.
nlohmann::json magnus_report(const std::string& group_spec, const std::string& word_text,
                             const std::vector<long long>& weights, const CommonConfig& cfg);

std::string cancel_graph_dot(const std::string& group_spec, const std::string& word_text,
                             const std::vector<long long>& weights);

nlohmann::json parafree_report(int radius, int radius_cap, const CommonConfig& cfg);

nlohmann::json embed_report(const std::string& group_spec, double lambda_hint,
                            int radius_cap, const CommonConfig& cfg);

std::string growth_csv(const std::string& group_spec, int max_level);

nlohmann::json folner_report(const std::string& group_spec,
                             const std::optional<std::string>& set_json,
                             const std::optional<std::string>& epsilon,
                             int pool_radius, int max_size, const CommonConfig& cfg);

/// True when the verdict fields of a report are all green; drives exit codes.
bool report_verified(const nlohmann::json& report);

std::string dump_report(const nlohmann::json& report);

}  // namespace magnusforge::reports
