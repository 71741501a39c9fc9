// tmcm: range-expansion solver for truncated max-of-convex energies.
//
// Subcommands: solve, synthetic, denoise, stereo, audit. Every CSV written
// starts with '#' lines echoing the version and the full command line.

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "tmcm/io.hpp"
#include "tmcm/oracle.hpp"
#include "tmcm/range_expansion.hpp"
#include "tmcm/synthetic.hpp"

namespace {

constexpr const char* kVersion = "1.0.0";

constexpr int kExitInput = 1;
constexpr int kExitInternal = 2;
constexpr int kExitBoundViolation = 3;

std::string command_line(int argc, char** argv) {
  std::string out;
  for (int i = 0; i < argc; ++i) {
    if (i) out += ' ';
    out += argv[i];
  }
  return out;
}

struct SolveFlags {
  int interval_length = 0;
  std::string init = "constant";
  std::string initial_path;
  int max_sweeps = 0;
  std::uint64_t seed = 0;
  std::string log_path;
};

void add_solver_flags(CLI::App* cmd, SolveFlags& flags) {
  cmd->add_option("--interval-len", flags.interval_length,
                  "Interval length h' (0: default from the distance and M)")
      ->check(CLI::NonNegativeNumber);
  cmd->add_option("--init", flags.init,
                  "Initial labeling: constant (all label 1), unary-argmin, "
                  "or file (see --initial)")
      ->check(CLI::IsMember({"constant", "unary-argmin", "file"}));
  cmd->add_option("--initial", flags.initial_path,
                  "Initial labeling file, one label per line (with --init file)");
  cmd->add_option("--max-sweeps", flags.max_sweeps,
                  "Stop after this many sweeps (0: until convergence)")
      ->check(CLI::NonNegativeNumber);
  cmd->add_option("--seed", flags.seed, "Seed recorded in logs");
  cmd->add_option("--log", flags.log_path, "Write the per-move log CSV here");
}

tmcm::Labeling read_label_list(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw tmcm::IoError("cannot open " + path);
  tmcm::Labeling x;
  tmcm::Label v = 0;
  while (in >> v) x.push_back(v);
  if (!in.eof()) throw tmcm::ParseError(static_cast<int>(x.size()) + 1,
                                        "bad label in " + path);
  return x;
}

tmcm::SolverConfig solver_config(const SolveFlags& flags) {
  tmcm::SolverConfig config;
  config.interval_length = flags.interval_length;
  config.seed = flags.seed;
  if (flags.max_sweeps > 0) config.max_sweeps = flags.max_sweeps;
  if (flags.init == "unary-argmin") {
    config.init = tmcm::InitPolicy::unary_argmin;
  } else if (flags.init == "file") {
    if (flags.initial_path.empty()) {
      throw std::invalid_argument("--init file requires --initial");
    }
    config.init = tmcm::InitPolicy::provided;
    config.initial = read_label_list(flags.initial_path);
  }
  return config;
}

std::vector<std::string> header_lines(const std::string& cmdline,
                                      const tmcm::Model& model,
                                      const tmcm::RunResult& result) {
  return {std::string("tmcm ") + kVersion + " " + cmdline,
          "interval_length=" + std::to_string(result.log.interval_length) +
              " dist=" + tmcm::to_string(model.dist()) +
              " M=" + std::to_string(model.dist().truncation) +
              " m=" + std::to_string(model.dist().max_pairs) +
              " unary_shift=" + std::to_string(model.unary_shift()) +
              " seed_initial_energy=" + std::to_string(result.initial_energy)};
}

void write_log(const SolveFlags& flags, const std::string& cmdline,
               const tmcm::Model& model, const tmcm::RunResult& result) {
  if (flags.log_path.empty()) return;
  std::ofstream out(flags.log_path);
  if (!out) throw tmcm::IoError("cannot write " + flags.log_path);
  result.log.write_csv(out, header_lines(cmdline, model, result));
}

void report(const tmcm::Model& model, const tmcm::RunResult& result) {
  std::cout << "energy " << result.energy << '\n'
            << "raw_energy " << result.energy - model.unary_shift() << '\n'
            << "interval_length " << result.log.interval_length << '\n'
            << "sweeps " << result.sweeps << '\n';
}

struct ModelFlags {
  tmcm::Energy weight = 1;
  tmcm::Energy truncation = 5;
  int max_pairs = 1;
  std::string dist = "linear";
};

void add_model_flags(CLI::App* cmd, ModelFlags& flags) {
  cmd->add_option("--weight", flags.weight, "Clique weight")
      ->check(CLI::NonNegativeNumber);
  cmd->add_option("--truncation", flags.truncation, "Truncation M")
      ->check(CLI::NonNegativeNumber);
  cmd->add_option("--max-pairs", flags.max_pairs, "Pair count m")
      ->check(CLI::NonNegativeNumber);
  cmd->add_option("--dist", flags.dist,
                  "Distance: linear, quadratic or table:v0,v1,...");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Range-expansion minimization of truncated max-of-convex energies"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);
  const std::string cmdline = command_line(argc, argv);

  // solve
  auto* solve = app.add_subcommand("solve", "Minimize an energy file");
  std::string model_path;
  std::string out_path;
  SolveFlags solve_flags;
  solve->add_option("--model", model_path, "Energy file")->required();
  solve->add_option("--out", out_path, "Write the labeling here, one per line");
  add_solver_flags(solve, solve_flags);

  // synthetic
  auto* synth = app.add_subcommand("synthetic", "Synthetic lattice sweep (CSV on stdout)");
  tmcm::SyntheticSpec spec;
  std::string synth_dist = "linear";
  std::vector<int> lengths;
  int jobs = 1;
  bool no_timing = false;
  synth->add_option("--side", spec.side, "Lattice side")->capture_default_str();
  synth->add_option("--labels", spec.labels, "Label count")->capture_default_str();
  synth->add_option("--window", spec.window, "Clique window size")->capture_default_str();
  synth->add_option("--unary-lo", spec.unary_lo, "Smallest unary")->capture_default_str();
  synth->add_option("--unary-hi", spec.unary_hi, "Largest unary")->capture_default_str();
  synth->add_option("--weight", spec.weight, "Clique weight")->capture_default_str();
  synth->add_option("--dist", synth_dist, "linear or quadratic")
      ->check(CLI::IsMember({"linear", "quadratic"}))
      ->capture_default_str();
  synth->add_option("--truncation", spec.truncation, "Truncation M")->capture_default_str();
  synth->add_option("--max-pairs", spec.max_pairs, "Pair count m")->capture_default_str();
  synth->add_option("--seed", spec.seed, "Seed of instance 0")->capture_default_str();
  synth->add_option("--instances", spec.instances, "Instances per row")->capture_default_str();
  synth->add_option("--interval-lens", lengths,
                    "Interval lengths to sweep (default: 1 and the default h')")
      ->delimiter(',');
  synth->add_option("--jobs", jobs, "Worker threads")->capture_default_str();
  synth->add_flag("--no-timing", no_timing, "Write 0 for mean_seconds");

  // denoise
  auto* denoise = app.add_subcommand("denoise", "Denoise / inpaint a grayscale PGM");
  std::string image_path;
  std::string seg_path;
  std::string mask_path;
  int stride = 1;
  ModelFlags denoise_model;
  SolveFlags denoise_flags;
  denoise->add_option("--image", image_path, "Noisy PGM")->required();
  denoise->add_option("--segmentation", seg_path, "Segmentation PGM")->required();
  denoise->add_option("--mask", mask_path, "Missing-pixel mask PGM (non-zero = missing)");
  denoise->add_option("--label-stride", stride, "Intensity step between labels")
      ->check(CLI::PositiveNumber);
  denoise->add_option("--out", out_path, "Output PGM")->required();
  add_model_flags(denoise, denoise_model);
  add_solver_flags(denoise, denoise_flags);

  // stereo
  auto* stereo = app.add_subcommand("stereo", "Disparity estimation on a rectified pair");
  std::string left_path;
  std::string right_path;
  int max_disparity = 15;
  ModelFlags stereo_model;
  SolveFlags stereo_flags;
  stereo->add_option("--left", left_path, "Left image (PGM/PPM)")->required();
  stereo->add_option("--right", right_path, "Right image (PGM/PPM)")->required();
  stereo->add_option("--segmentation", seg_path, "Segmentation PGM")->required();
  stereo->add_option("--max-disparity", max_disparity, "Largest disparity")
      ->check(CLI::NonNegativeNumber);
  stereo->add_option("--out", out_path, "Disparity PGM")->required();
  add_model_flags(stereo, stereo_model);
  add_solver_flags(stereo, stereo_flags);

  // audit
  auto* audit = app.add_subcommand("audit", "Check the multiplicative bound against brute force");
  std::string audit_model;
  int random_count = 0;
  std::uint64_t audit_seed = 1;
  int audit_length = 0;
  audit->add_option("--model", audit_model, "Energy file to audit");
  audit->add_option("--random", random_count, "Audit this many random tiny models");
  audit->add_option("--seed", audit_seed, "Seed of the first random model");
  audit->add_option("--interval-len", audit_length,
                    "Interval length (0: default)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*solve) {
      const auto model = tmcm::load_model(model_path);
      const auto result = tmcm::run(model, solver_config(solve_flags));
      write_log(solve_flags, cmdline, model, result);
      if (!out_path.empty()) {
        std::ofstream out(out_path);
        if (!out) throw tmcm::IoError("cannot write " + out_path);
        for (auto l : result.labeling) out << l << '\n';
      }
      report(model, result);
    } else if (*synth) {
      spec.kind = synth_dist == "quadratic" ? tmcm::DistanceKind::quadratic
                                            : tmcm::DistanceKind::linear;
      if (lengths.empty()) {
        lengths = {1, tmcm::default_interval_length(tmcm::generate(spec))};
        if (lengths[1] == 1) lengths.pop_back();
      }
      const auto rows = tmcm::sweep(spec, lengths, jobs);
      tmcm::write_sweep_csv(std::cout, rows,
                            {std::string("tmcm ") + kVersion + " " + cmdline},
                            !no_timing);
    } else if (*denoise) {
      const auto image = tmcm::load_image(image_path);
      const auto seg = tmcm::load_image(seg_path);
      std::optional<tmcm::Image> mask;
      if (!mask_path.empty()) mask = tmcm::load_image(mask_path);
      const auto dist = tmcm::parse_distance(
          denoise_model.dist, denoise_model.truncation, denoise_model.max_pairs);
      const auto model = tmcm::build_denoise_model(
          image, seg, denoise_model.weight, dist, stride,
          mask ? &*mask : nullptr);
      const auto result = tmcm::run(model, solver_config(denoise_flags));
      write_log(denoise_flags, cmdline, model, result);
      tmcm::save_labeling(out_path, result.labeling, image.width, image.height,
                          [stride](tmcm::Label l) {
                            return tmcm::denoise_label_value(l, stride);
                          },
                          image.maxval);
      report(model, result);
    } else if (*stereo) {
      const auto left = tmcm::load_image(left_path);
      const auto right = tmcm::load_image(right_path);
      const auto seg = tmcm::load_image(seg_path);
      const auto dist = tmcm::parse_distance(
          stereo_model.dist, stereo_model.truncation, stereo_model.max_pairs);
      const auto model = tmcm::build_stereo_model(
          left, right, seg, stereo_model.weight, dist, max_disparity);
      const auto result = tmcm::run(model, solver_config(stereo_flags));
      write_log(stereo_flags, cmdline, model, result);
      const int step = std::max(1, 255 / std::max(1, max_disparity));
      tmcm::save_labeling(out_path, result.labeling, left.width, left.height,
                          [step](tmcm::Label l) { return (l - 1) * step; });
      report(model, result);
    } else if (*audit) {
      std::vector<tmcm::BoundReport> reports;
      const auto check = [&](const tmcm::Model& model, const std::string& id) {
        tmcm::SolverConfig config;
        config.interval_length = audit_length;
        const auto result = tmcm::run(model, config);
        reports.push_back(tmcm::audit_bound(model, result.labeling,
                                            result.log.interval_length, id));
      };
      if (!audit_model.empty()) check(tmcm::load_model(audit_model), audit_model);
      for (int k = 0; k < random_count; ++k) {
        const auto seed = audit_seed + static_cast<std::uint64_t>(k);
        check(tmcm::random_tiny_model(seed), "random-" + std::to_string(seed));
      }
      if (reports.empty()) {
        throw std::invalid_argument("audit needs --model or --random");
      }
      tmcm::write_bound_csv(std::cout, reports,
                            {std::string("tmcm ") + kVersion + " " + cmdline});
      for (const auto& r : reports) {
        if (!r.satisfied && !r.advisory) return kExitBoundViolation;
      }
    }
  } catch (const tmcm::MalformedCut& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kExitInternal;
  } catch (const tmcm::CapacityNegative& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kExitInternal;
  } catch (const tmcm::CapacityOverflow& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::runtime_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
  return 0;
}
