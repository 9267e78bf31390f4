#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "jsweep/classify.hpp"
#include "jsweep/curve.hpp"
#include "jsweep/engine.hpp"
#include "jsweep/svg.hpp"

namespace {

struct RunConfig {
  std::string curve_path;
  std::string policy = "largest";
  double eps_min = 0.0;
  long max_steps = 1000000;
  std::uint64_t seed = 0;
  std::string out_dir = ".";
  int svg_every = 0;
};

void add_common_flags(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--curve", cfg.curve_path, "curve spec JSON")->required();
  cmd->add_option("--policy", cfg.policy, "fifo|lifo|largest")
      ->check(CLI::IsMember({"fifo", "lifo", "largest"}));
  cmd->add_option("--eps-min", cfg.eps_min,
                  "minimum actionable segment length (0 = auto)");
  cmd->add_option("--max-steps", cfg.max_steps, "step limit");
  cmd->add_option("--seed", cfg.seed, "rng seed recorded in reports");
  cmd->add_option("--out", cfg.out_dir, "output directory");
  cmd->add_option("--svg-every", cfg.svg_every,
                  "emit an SVG frame every K steps (0 = off)");
}

jsweep::EnginePolicy make_policy(const RunConfig& cfg) {
  jsweep::EnginePolicy policy;
  if (cfg.policy == "fifo") policy.order = jsweep::QueueOrder::FIFO;
  if (cfg.policy == "lifo") policy.order = jsweep::QueueOrder::LIFO;
  if (cfg.policy == "largest") policy.order = jsweep::QueueOrder::LargestFirst;
  policy.eps_min = cfg.eps_min;
  policy.max_steps = cfg.max_steps;
  policy.seed = cfg.seed;
  return policy;
}

jsweep::SweepState run_with_frames(const RunConfig& cfg,
                                   const jsweep::EnginePolicy& policy) {
  namespace fs = std::filesystem;
  auto curve = std::make_shared<jsweep::ClosedPolyline>(
      jsweep::load_curve_file(cfg.curve_path));
  std::string method;
  const jsweep::Point2 root = jsweep::find_root_point(*curve, method);
  jsweep::SweepState state =
      jsweep::make_initial_state(curve, root, policy);
  state.root_method = method;

  fs::create_directories(cfg.out_dir);
  int frame = 0;
  auto emit_frame = [&]() {
    char name[32];
    std::snprintf(name, sizeof(name), "frame_%04d.svg", frame++);
    std::optional<jsweep::HorizontalFreeSegment> current;
    if (!state.nodes.empty()) current = state.nodes.back().t;
    jsweep::write_frame((fs::path(cfg.out_dir) / name).string(), state,
                        current);
  };

  if (cfg.svg_every > 0) emit_frame();
  while (!state.maximal()) {
    if (state.steps >= policy.max_steps) {
      state.step_limit_hit = true;
      break;
    }
    jsweep::step(state, policy);
    if (cfg.svg_every > 0 && state.steps % cfg.svg_every == 0) emit_frame();
  }
  if (cfg.svg_every > 0) emit_frame();
  return state;
}

int cmd_sweep(const RunConfig& cfg) {
  namespace fs = std::filesystem;
  const jsweep::EnginePolicy policy = make_policy(cfg);
  const jsweep::SweepState state = run_with_frames(cfg, policy);
  std::ofstream report(fs::path(cfg.out_dir) / "report.json");
  report << jsweep::report_json(state, policy) << '\n';
  std::printf("steps=%ld total_area=%#.12g maximal=%s\n", state.steps,
              state.total_area, state.maximal() ? "true" : "false");
  return state.step_limit_hit ? 2 : 0;
}

int cmd_area(const RunConfig& cfg) {
  const jsweep::EnginePolicy policy = make_policy(cfg);
  auto curve = std::make_shared<jsweep::ClosedPolyline>(
      jsweep::load_curve_file(cfg.curve_path));
  const jsweep::SweepState state = jsweep::run_sweep(curve, policy);
  if (state.step_limit_hit) {
    std::fprintf(stderr, "step limit reached before maximality\n");
    return 2;
  }
  std::printf("%#.12g\n", state.total_area);
  return 0;
}

int cmd_classify(const RunConfig& cfg, const std::string& points_path) {
  namespace fs = std::filesystem;
  std::string text;
  if (points_path.empty() || points_path == "-") {
    std::ostringstream buf;
    buf << std::cin.rdbuf();
    text = buf.str();
  } else {
    std::ifstream in(points_path);
    if (!in) {
      std::fprintf(stderr, "cannot open points file: %s\n",
                   points_path.c_str());
      return 1;
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    text = buf.str();
  }

  std::vector<jsweep::Point2> points;
  std::istringstream lines(text);
  std::string line;
  int row = 0;
  while (std::getline(lines, line)) {
    ++row;
    if (line.empty()) continue;
    std::size_t consumed_x = 0, consumed_y = 0;
    const std::size_t comma = line.find(',');
    double x = 0.0, y = 0.0;
    bool ok = comma != std::string::npos;
    if (ok) {
      try {
        x = std::stod(line.substr(0, comma), &consumed_x);
        y = std::stod(line.substr(comma + 1), &consumed_y);
      } catch (const std::exception&) {
        ok = false;
      }
    }
    if (ok) {
      // Reject trailing garbage like "1.0x".
      auto rest_blank = [](const std::string& s, std::size_t from) {
        return s.find_first_not_of(" \t\r", from) == std::string::npos;
      };
      ok = rest_blank(line.substr(0, comma), consumed_x) &&
           rest_blank(line.substr(comma + 1), consumed_y);
    }
    if (!ok) {
      std::fprintf(stderr, "malformed CSV row %d: %s\n", row, line.c_str());
      return 1;
    }
    points.push_back(jsweep::Point2(x, y));
  }

  fs::create_directories(cfg.out_dir);
  const fs::path out_path = fs::path(cfg.out_dir) / "verdicts.csv";
  if (points.empty()) {
    std::ofstream(out_path) << "";
    return 0;
  }

  const jsweep::EnginePolicy policy = make_policy(cfg);
  auto curve = std::make_shared<jsweep::ClosedPolyline>(
      jsweep::load_curve_file(cfg.curve_path));
  const jsweep::SweepState state = jsweep::run_sweep(curve, policy);
  const jsweep::SlabIndex index(state);
  const std::string csv =
      jsweep::classify_batch_csv(index, *curve, points, nullptr);
  std::ofstream(out_path) << csv;
  std::cout << csv;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"horizontal-sweep region discovery for closed polylines"};
  app.require_subcommand(1);

  RunConfig cfg_sweep, cfg_classify, cfg_area;
  std::string points_path;

  CLI::App* sweep = app.add_subcommand("sweep", "run a maximal sweep");
  add_common_flags(sweep, cfg_sweep);
  CLI::App* classify =
      app.add_subcommand("classify", "classify points from a CSV");
  add_common_flags(classify, cfg_classify);
  classify->add_option("--points", points_path,
                       "points CSV (x,y per line); '-' or absent = stdin");
  CLI::App* area = app.add_subcommand("area", "print the enclosed area");
  add_common_flags(area, cfg_area);

  CLI11_PARSE(app, argc, argv);

  try {
    if (sweep->parsed()) return cmd_sweep(cfg_sweep);
    if (classify->parsed()) return cmd_classify(cfg_classify, points_path);
    if (area->parsed()) return cmd_area(cfg_area);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 1;
}
