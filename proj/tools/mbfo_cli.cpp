// mbfo command-line pipeline: threshold -> segment -> post-process ->
// evaluate, plus the exhaustive oracle and synthetic data generation.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "mbfo/bfo.hpp"
#include "mbfo/eval.hpp"
#include "mbfo/image.hpp"
#include "mbfo/otsu.hpp"
#include "mbfo/phantom.hpp"
#include "mbfo/segment.hpp"
#include "mbfo/threshold_search.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct RunConfig {
  std::string input;
  std::string output_dir = ".";
  int m = 3;
  int min_component = 10;
  int connectivity = 8;
  double alpha = mbfo::kPrattAlpha;
  mbfo::BfoConfig bfo;
};

void add_bfo_flags(CLI::App* cmd, mbfo::BfoConfig& cfg) {
  cmd->add_option("--seed", cfg.seed, "RNG seed");
  cmd->add_option("--pop-size", cfg.population, "population size S (even)");
  cmd->add_option("--nc", cfg.chemotactic_steps, "chemotactic steps Nc");
  cmd->add_option("--ns", cfg.max_swim_length, "max swim length Ns");
  cmd->add_option("--nre", cfg.reproduction_steps, "reproduction steps Nre");
  cmd->add_option("--ned", cfg.dispersal_events, "elimination-dispersal events Ned");
  cmd->add_option("--ped", cfg.dispersal_prob, "dispersal probability Ped")->check(CLI::Range(0.0, 1.0));
  cmd->add_option("--step-size", cfg.step_size, "chemotactic step size C(i)");
  cmd->add_option("--d-attract", cfg.d_attract, "swarm attraction depth");
  cmd->add_option("--w-attract", cfg.w_attract, "swarm attraction width");
  cmd->add_option("--h-repellant", cfg.h_repellant, "swarm repulsion height");
  cmd->add_option("--w-repellant", cfg.w_repellant, "swarm repulsion width");
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw mbfo::IoFailure("cannot open for write: " + path.string());
  out << text;
  if (!out) throw mbfo::IoFailure("write failed: " + path.string());
}

std::string trace_csv(const std::vector<double>& trace) {
  std::string csv = "step,best_j\n";
  char buf[64];
  for (std::size_t i = 0; i < trace.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "%zu,%.17g\n", i, trace[i]);
    csv += buf;
  }
  return csv;
}

json bfo_config_json(const mbfo::BfoConfig& c) {
  return json{{"pop_size", c.population},    {"nc", c.chemotactic_steps},
              {"ns", c.max_swim_length},     {"nre", c.reproduction_steps},
              {"ned", c.dispersal_events},   {"ped", c.dispersal_prob},
              {"step_size", c.step_size},    {"d_attract", c.d_attract},
              {"w_attract", c.w_attract},    {"h_repellant", c.h_repellant},
              {"w_repellant", c.w_repellant},{"seed", c.seed}};
}

void warn_level_count(int m) {
  if (m < 3 || m > 4)
    std::cerr << "warning: 3-4 thresholds are typical for this pipeline; got m = " << m << "\n";
}

mbfo::ThresholdSearchResult run_threshold(const RunConfig& cfg, const mbfo::GrayImage& img) {
  const auto hist = mbfo::compute_histogram(img);
  return mbfo::search_thresholds(hist, cfg.m, cfg.bfo);
}

int cmd_threshold(const RunConfig& cfg) {
  warn_level_count(cfg.m);
  const auto img = mbfo::load_image(cfg.input);
  const auto result = run_threshold(cfg, img);
  auto [labels, rendered] = mbfo::apply_thresholds(img, result.thresholds);

  fs::create_directories(cfg.output_dir);
  json report{{"thresholds", result.thresholds.levels}, {"objective", result.objective}};
  write_text(fs::path(cfg.output_dir) / "thresholds.json", report.dump(2) + "\n");
  mbfo::save_image(rendered, (fs::path(cfg.output_dir) / "thresholded.pgm").string());
  std::cout << report.dump(2) << "\n";
  return 0;
}

int cmd_segment(const RunConfig& cfg) {
  warn_level_count(cfg.m);
  const auto img = mbfo::load_image(cfg.input);
  const auto result = run_threshold(cfg, img);
  auto [labels, rendered] = mbfo::apply_thresholds(img, result.thresholds);
  const auto raw_edges = mbfo::detect_edges(rendered);
  const auto edges = mbfo::area_open(raw_edges, cfg.min_component, cfg.connectivity);

  fs::create_directories(cfg.output_dir);
  const fs::path out(cfg.output_dir);
  mbfo::save_image(rendered, (out / "thresholded.pgm").string());
  mbfo::save_image(mbfo::render_edges(edges), (out / "edges.pgm").string());
  write_text(out / "trace.csv", trace_csv(result.trace));

  json manifest{{"input", cfg.input},
                {"m", cfg.m},
                {"p", cfg.min_component},
                {"connectivity", cfg.connectivity},
                {"bfo", bfo_config_json(cfg.bfo)},
                {"thresholds", result.thresholds.levels},
                {"objective", result.objective}};
  write_text(out / "manifest.json", manifest.dump(2) + "\n");
  std::cout << manifest.dump(2) << "\n";
  return 0;
}

int cmd_evaluate(const std::string& candidate_path, const std::string& reference_path,
                 const std::string& output_dir, double alpha, bool bits) {
  const auto candidate = mbfo::load_edge_map(candidate_path);
  const auto reference = mbfo::load_edge_map(reference_path);
  const double base = bits ? 2.0 : std::exp(1.0);
  const auto report = mbfo::evaluate_edges(candidate, reference, alpha, base);
  const json j = report;
  if (!output_dir.empty()) {
    fs::create_directories(output_dir);
    write_text(fs::path(output_dir) / "metrics.json", j.dump(2) + "\n");
  }
  std::cout << j.dump(2) << "\n";
  return 0;
}

int cmd_oracle(const std::string& input, int m, const std::string& output_dir) {
  const auto img = mbfo::load_image(input);
  const auto hist = mbfo::compute_histogram(img);
  const auto [ts, best_j] = mbfo::exhaustive_search(hist, m);
  json report{{"thresholds", ts.levels}, {"objective", best_j}};
  if (!output_dir.empty()) {
    fs::create_directories(output_dir);
    write_text(fs::path(output_dir) / "thresholds.json", report.dump(2) + "\n");
  }
  std::cout << report.dump(2) << "\n";
  return 0;
}

int cmd_synth(const std::string& kind, int width, int height, std::uint64_t seed,
              double noise_sigma, const std::string& output_dir) {
  mbfo::SyntheticImage synth;
  if (kind == "phantom") {
    synth = mbfo::make_phantom(width, height, seed, noise_sigma);
  } else if (kind == "bimodal") {
    synth = mbfo::make_bimodal_field(width, height, seed);
  } else {
    throw mbfo::UnknownKind(kind);
  }
  fs::create_directories(output_dir);
  const fs::path out(output_dir);
  mbfo::save_image(synth.image, (out / "synthetic.pgm").string());
  mbfo::GrayImage truth(synth.truth.width, synth.truth.height);
  for (std::size_t i = 0; i < truth.pixels.size(); ++i)
    truth.pixels[i] = static_cast<std::uint8_t>(synth.truth.labels[i]);
  mbfo::save_image(truth, (out / "truth_labels.pgm").string());
  mbfo::save_image(mbfo::render_edges(synth.reference_edges), (out / "reference_edges.pgm").string());
  std::cout << json{{"kind", kind}, {"width", width}, {"height", height}, {"seed", seed}}.dump(2)
            << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multilevel Otsu thresholding via bacterial foraging optimization"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::string candidate_path, reference_path, eval_output_dir;
  bool vi_bits = false;
  std::string synth_kind = "phantom";
  int synth_w = 256, synth_h = 256;
  std::uint64_t synth_seed = 0;
  double synth_noise = 0.0;

  auto* threshold = app.add_subcommand("threshold", "select thresholds and render the thresholded image");
  threshold->add_option("--input", cfg.input, "input PGM/PNG image")->required();
  threshold->add_option("--output-dir", cfg.output_dir, "output directory");
  threshold->add_option("-m", cfg.m, "number of thresholds")->check(CLI::Range(1, 8));
  add_bfo_flags(threshold, cfg.bfo);

  auto* segment = app.add_subcommand("segment", "full pipeline: threshold, edge detect, clean up");
  segment->add_option("--input", cfg.input, "input PGM/PNG image")->required();
  segment->add_option("--output-dir", cfg.output_dir, "output directory");
  segment->add_option("-m", cfg.m, "number of thresholds")->check(CLI::Range(1, 8));
  segment->add_option("--p", cfg.min_component, "minimum connected-component size kept")->check(CLI::PositiveNumber);
  segment->add_option("--connectivity", cfg.connectivity, "component connectivity")->check(CLI::IsMember({4, 8}));
  add_bfo_flags(segment, cfg.bfo);

  auto* evaluate = app.add_subcommand("evaluate", "score a candidate edge map against a reference");
  evaluate->add_option("candidate", candidate_path, "candidate edge image")->required();
  evaluate->add_option("reference", reference_path, "reference edge image")->required();
  evaluate->add_option("--output-dir", eval_output_dir, "also write metrics.json here");
  evaluate->add_option("--alpha", cfg.alpha, "figure-of-merit scaling constant");
  evaluate->add_flag("--vi-bits", vi_bits, "report variation of information in bits instead of nats");

  auto* oracle = app.add_subcommand("oracle", "exhaustive-search optimum (m <= 4)");
  oracle->add_option("--input", cfg.input, "input PGM/PNG image")->required();
  oracle->add_option("-m", cfg.m, "number of thresholds");
  oracle->add_option("--output-dir", eval_output_dir, "also write thresholds.json here");

  auto* synth = app.add_subcommand("synth", "generate a synthetic test image with ground truth");
  synth->add_option("--kind", synth_kind, "phantom | bimodal");
  synth->add_option("--width", synth_w, "image width")->check(CLI::PositiveNumber);
  synth->add_option("--height", synth_h, "image height")->check(CLI::PositiveNumber);
  synth->add_option("--seed", synth_seed, "RNG seed");
  synth->add_option("--noise-sigma", synth_noise, "additive Gaussian noise sigma (phantom only)");
  synth->add_option("--output-dir", cfg.output_dir, "output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (*threshold) return cmd_threshold(cfg);
    if (*segment) return cmd_segment(cfg);
    if (*evaluate) return cmd_evaluate(candidate_path, reference_path, eval_output_dir, cfg.alpha, vi_bits);
    if (*oracle) {
      if (cfg.m > 4) throw mbfo::MTooLarge(cfg.m);
      return cmd_oracle(cfg.input, cfg.m, eval_output_dir);
    }
    if (*synth) return cmd_synth(synth_kind, synth_w, synth_h, synth_seed, synth_noise, cfg.output_dir);
  } catch (const mbfo::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.exit_code();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
