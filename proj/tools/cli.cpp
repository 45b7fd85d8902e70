#include "cli.hpp"

#include <algorithm>
#include <filesystem>
#include <iostream>

#include "CLI11.hpp"
#include "hyperrst/experiments.hpp"
#include "hyperrst/forest.hpp"
#include "hyperrst/radial_tree.hpp"
#include "hyperrst/serialize.hpp"
#include "hyperrst/svg.hpp"

namespace hyperrst::cli {
namespace {

namespace fs = std::filesystem;

struct Context {
  RunManifest manifest;
  ExperimentConfig config;
  fs::path out;
  std::ostream& log;

  std::string name(const std::string& stem, const std::string& ext) const {
    return (out / (stem + "_" + std::to_string(config.base.seed) + "." + ext)).string();
  }
  void write(const std::string& path, const std::string& content) const {
    write_text_file(path, content);
    log << "wrote " << path << "\n";
  }
};

ExperimentConfig load_config(const RunManifest& m) {
  ExperimentConfig cfg = m.config_path == "defaults" ? ExperimentConfig{} : config_from_json(read_text_file(m.config_path));
  if (m.seed) cfg.base.seed = *m.seed;
  return cfg;
}

fs::path prepare_out(const RunManifest& m, const ExperimentConfig& cfg) {
  fs::path dir = !m.out_dir.empty() ? m.out_dir : !cfg.output_path.empty() ? cfg.output_path : ".";
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) throw ConfigError("cannot create output directory " + dir.string());
  return dir;
}

void cmd_sample(const Context& c) {
  const PointCloud cloud = sample_ball(c.config.base);
  c.write(c.name("cloud", "json"), cloud_to_json(cloud));
  c.write(c.name("cloud", "csv"), cloud_to_csv(cloud));
}

void cmd_rst(const Context& c) {
  const PointCloud cloud = sample_ball(c.config.base);
  const RadialTree tree = build_rst(cloud);
  const auto report = validate(tree);
  if (!report.ok()) throw std::runtime_error("tree audit failed: " + report.violations.front());
  const std::string cloud_path = c.name("cloud", "json");
  c.write(cloud_path, cloud_to_json(cloud));
  c.write(c.name("rst", "json"), tree_to_json(tree, fs::path(cloud_path).filename().string()));
  c.write(c.name("rst", "csv"), tree_edges_csv(tree));
  std::string dev;
  for (double r : c.config.r0_grid) {
    if (r > c.config.r_prime()) continue;
    std::string part = deviations_to_csv(deviation_records(tree, r, c.config.r_prime()));
    if (!dev.empty()) part.erase(0, part.find('\n') + 1);
    dev += part;
  }
  if (!dev.empty()) c.write(c.name("deviations", "csv"), dev);
}

void cmd_dsf(const Context& c) {
  const auto& b = c.config.base;
  const HalfForest forest = build_dsf(sample_half(b.lambda, b.d, c.config.window(), b.seed));
  const auto problems = validate_dsf(forest);
  if (!problems.empty()) throw std::runtime_error("forest audit failed: " + problems.front());
  c.write(c.name("dsf", "json"), forest_to_json(forest));
}

void cmd_analyze(const Context& c) {
  std::vector<std::string> names;
  if (c.manifest.experiment == "all") {
    names = experiment_names();
  } else {
    names.push_back(c.manifest.experiment);
  }
  for (const auto& n : names) {
    c.log << "running " << n << "\n";
    const StatReport rep = run_experiment(n, c.config);
    c.write(c.name(n, "json"), report_to_json(rep));
    c.write(c.name(n, "csv"), report_to_csv(rep));
  }
}

void cmd_render(const Context& c) {
  SvgScene scene;
  scene.disc_radius_px = c.manifest.disc_px;
  scene.edge_style = c.manifest.edge_style == "star" ? SvgScene::EdgeStyle::kStarPolyline : SvgScene::EdgeStyle::kGeodesicArc;
  scene.color_components = c.manifest.color;
  const RadialTree tree = build_rst(sample_ball(c.config.base));
  c.write(c.name("rst", "svg"), render_svg(tree, scene));
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunManifest m;
  CLI::App app{"Radial spanning trees and directed spanning forests in hyperbolic space", "hyperrst"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for every command");

  const auto common = [&](CLI::App* sub) {
    sub->add_option("--config", m.config_path, "JSON config file, or 'defaults'")->capture_default_str();
    sub->add_option("--seed", m.seed, "Override the config seed (unsigned 64-bit)");
    sub->add_option("--out", m.out_dir, "Output directory (created if missing)");
  };
  auto* sample = app.add_subcommand("sample", "Sample a Poisson cloud in B(0, R)");
  auto* rst = app.add_subcommand("rst", "Build the radial spanning tree and its deviation records");
  auto* dsf = app.add_subcommand("dsf", "Build the directed spanning forest in the half-space window");
  auto* analyze = app.add_subcommand("analyze", "Run a Monte Carlo experiment");
  auto* render = app.add_subcommand("render", "Draw the tree in the Poincare disc (d = 1)");
  for (auto* sub : {sample, rst, dsf, analyze, render}) common(sub);

  std::vector<std::string> choices = experiment_names();
  choices.push_back("all");
  analyze->add_option("experiment", m.experiment, "Experiment name or 'all'")
      ->required()
      ->check(CLI::IsMember(choices));
  render->add_option("--style", m.edge_style, "Edge style")->check(CLI::IsMember({"arc", "star"}))->capture_default_str();
  render->add_flag("!--no-color", m.color, "Draw every edge in one colour");
  render->add_option("--size", m.disc_px, "Disc radius in pixels")->check(CLI::PositiveNumber)->capture_default_str();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return kExitConfig;
  }

  const CLI::App* chosen = app.get_subcommands().front();
  if (chosen == sample) m.command = Command::kSample;
  if (chosen == rst) m.command = Command::kRst;
  if (chosen == dsf) m.command = Command::kDsf;
  if (chosen == analyze) m.command = Command::kAnalyze;
  if (chosen == render) m.command = Command::kRender;

  try {
    ExperimentConfig cfg;
    fs::path dir;
    try {
      cfg = load_config(m);
      cfg.validate();
      dir = prepare_out(m, cfg);
    } catch (const std::invalid_argument& e) {
      err << "config error: " << e.what() << "\n";
      return kExitConfig;
    }
    err << config_to_json(cfg);
    const Context ctx{m, cfg, dir, err};
    switch (m.command) {
      case Command::kSample: cmd_sample(ctx); break;
      case Command::kRst: cmd_rst(ctx); break;
      case Command::kDsf: cmd_dsf(ctx); break;
      case Command::kAnalyze: cmd_analyze(ctx); break;
      case Command::kRender: cmd_render(ctx); break;
    }
  } catch (const std::invalid_argument& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitOk;
}

int run(int argc, char** argv) {
  std::vector<std::string> args(argv + std::min(argc, 1), argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace hyperrst::cli
