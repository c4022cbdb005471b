#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "magnusforge/log.hpp"
#include "magnusforge/reports.hpp"

namespace {

int emit(const std::string& text, const std::optional<std::string>& out_path) {
  if (out_path) {
    std::ofstream out(*out_path, std::ios::binary);
    if (!out) {
      std::cerr << "cannot open output file: " << *out_path << '\n';
      return 2;
    }
    out << text;
    return 0;
  }
  std::cout << text;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact wreath-product embeddings, Magnus images and length certificates"};
  app.require_subcommand(1);
  app.fallthrough();

  magnusforge::reports::CommonConfig cfg;
  std::optional<std::string> out_path;
  app.add_option("--seed", cfg.seed, "seed echoed into reports");
  app.add_option("-o,--out", out_path, "write output to a file instead of stdout");

  std::string group_spec = "zxz";
  std::string word_text;
  std::vector<long long> weights;

  auto* magnus = app.add_subcommand("magnus", "Magnus image, rs identity and length bound");
  magnus->add_option("--group", group_spec, "group spec: zxz, z5, s3, z5xz7, @table.json");
  magnus->add_option("--word", word_text, "word over x1, x2, ... e.g. \"x1^-3 x2\"")
      ->required();
  magnus->add_option("--weights", weights, "per-generator lengths for free abelian groups");

  auto* graph = app.add_subcommand("cancel-graph", "cancellation graph in DOT format");
  graph->add_option("--group", group_spec, "group spec");
  graph->add_option("--word", word_text, "word over x1, x2, ...")->required();
  graph->add_option("--weights", weights, "per-generator lengths for free abelian groups");

  int radius = 4;
  int radius_cap = 6;
  auto* parafree = app.add_subcommand("parafree", "greedy parallelogram-free set in Z wr Z");
  parafree->add_option("--radius", radius, "ball radius to fill");
  parafree->add_option("--radius-cap", radius_cap, "largest allowed radius");

  std::string embed_group = "z5";
  double lambda_hint = 1.0;
  int embed_cap = 12;
  std::string check = "all";
  auto* embed = app.add_subcommand("embed", "distortion certificates for a finite group");
  embed->add_option("--group", embed_group, "finite group spec: zN, sN, products, @table.json");
  embed->add_option("--lambda-hint", lambda_hint, "starting lambda (largest 1/q tried)");
  embed->add_option("--radius-cap", embed_cap, "largest parafree radius for the build");
  embed->add_option("--check", check, "what to certify (all)");

  int levels = 6;
  auto* growth = app.add_subcommand("growth", "ball growth as CSV: level,count,fitted_a");
  growth->add_option("--group", group_spec, "group spec, including lamp for Z wr Z");
  growth->add_option("--levels", levels, "largest level to count");

  std::optional<std::string> set_json;
  std::optional<std::string> epsilon;
  int pool_radius = 2;
  int max_size = 8;
  auto* folner = app.add_subcommand("folner", "Folner defects and minimal set search");
  folner->add_option("--group", group_spec, "group spec");
  folner->add_option("--set", set_json, "JSON array of elements to measure");
  folner->add_option("--epsilon", epsilon, "target defect p/q for the search mode");
  folner->add_option("--pool-radius", pool_radius, "candidate pool: ball of this radius");
  folner->add_option("--max-size", max_size, "largest subset size tried (<= 12)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return 2;
  }

  try {
    using namespace magnusforge::reports;
    if (magnus->parsed()) {
      const auto report = magnus_report(group_spec, word_text, weights, cfg);
      const int rc = emit(dump_report(report), out_path);
      return rc != 0 ? rc : (report_verified(report) ? 0 : 1);
    }
    if (graph->parsed()) {
      return emit(cancel_graph_dot(group_spec, word_text, weights), out_path);
    }
    if (parafree->parsed()) {
      const auto report = parafree_report(radius, radius_cap, cfg);
      const int rc = emit(dump_report(report), out_path);
      return rc != 0 ? rc : (report_verified(report) ? 0 : 1);
    }
    if (embed->parsed()) {
      if (check != "all") throw std::invalid_argument("embed: unknown --check mode");
      const auto report = embed_report(embed_group, lambda_hint, embed_cap, cfg);
      const int rc = emit(dump_report(report), out_path);
      return rc != 0 ? rc : (report_verified(report) ? 0 : 1);
    }
    if (growth->parsed()) {
      return emit(growth_csv(group_spec, levels), out_path);
    }
    if (folner->parsed()) {
      const auto report = folner_report(group_spec, set_json, epsilon, pool_radius,
                                        max_size, cfg);
      const int rc = emit(dump_report(report), out_path);
      return rc != 0 ? rc : (report_verified(report) ? 0 : 1);
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "verification failure: " << e.what() << '\n';
    return 1;
  }
  return 2;
}
