// reasoning-forge CLI: generate puzzle datasets, solve instances, render
// states, evaluate predictions, and print dataset statistics.

#include <cstdio>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "rforge/dataset.hpp"
#include "rforge/decode.hpp"
#include "rforge/flowmatch.hpp"
#include "rforge/metrics.hpp"

namespace {

using rforge::TaskKind;
using rforge::dataset::GenConfig;
using rforge::dataset::json;

constexpr int kExitOk = 0;
constexpr int kExitRuntime = 1;
constexpr int kExitUsage = 2;

struct GenFlags {
  std::string task;
  std::vector<int> sizes;
  std::vector<int> cities;
  std::vector<int> clues;
  std::vector<int> holes;
  int count = 100;
  uint64_t seed = 0;
  std::string out;
  int stride = 1;
  double p_hole = 0.2;
  int threads = 0;
  bool paper_scale = false;
  bool dry_run = false;
};

GenConfig config_from_flags(const GenFlags& f) {
  GenConfig cfg = f.paper_scale ? rforge::dataset::paper_config(f.seed, f.out)
                                : rforge::dataset::desk_config(f.seed, f.out);
  cfg.stride = f.stride;
  cfg.build.p_hole = f.p_hole;
  cfg.threads = f.threads;
  cfg.dry_run = f.dry_run;

  if (!f.task.empty()) {
    const TaskKind kind = rforge::task_kind_from_name(f.task);
    const int count = cfg.count_per_scale.at(kind) == 100 ? f.count
                                                          : cfg.count_per_scale.at(kind);
    cfg.scales = {{kind, cfg.scales.at(kind)}};
    cfg.count_per_scale = {{kind, f.paper_scale ? count : f.count}};
    switch (kind) {
      case TaskKind::Maze:
      case TaskKind::Vsp:
        if (!f.sizes.empty()) cfg.scales[kind] = f.sizes;
        break;
      case TaskKind::Tsp:
        if (!f.cities.empty()) cfg.scales[kind] = f.cities;
        break;
      case TaskKind::Sudoku:
        if (!f.clues.empty()) {
          cfg.scales[kind] = f.clues;
        } else if (!f.holes.empty()) {
          std::vector<int> as_clues;
          for (int h : f.holes) as_clues.push_back(81 - h);
          cfg.scales[kind] = as_clues;
        }
        break;
    }
  } else if (!f.paper_scale) {
    for (auto& [kind, count] : cfg.count_per_scale) count = f.count;
  }
  return cfg;
}

int cmd_gen(const GenFlags& flags) {
  const GenConfig cfg = config_from_flags(flags);
  const auto records = rforge::dataset::generate_dataset(cfg);
  const auto stats = rforge::dataset::dataset_stats(records);
  std::cout << stats.table();
  if (!cfg.dry_run) {
    std::cout << "manifest: " << (cfg.out_dir / "manifest.jsonl").string() << "\n";
  }
  return kExitOk;
}

int cmd_stats(const std::string& manifest_path) {
  const auto records = rforge::dataset::read_manifest(manifest_path);
  std::cout << rforge::dataset::dataset_stats(records).table();
  return kExitOk;
}

int cmd_eval(const std::string& manifest_path, const std::string& pred_path,
             const std::string& report_path, bool strict) {
  const auto manifest = rforge::dataset::read_manifest(manifest_path);
  const auto predictions = rforge::metrics::read_predictions(pred_path);

  rforge::metrics::EvalOptions opts;
  opts.strict_optimal = strict;
  opts.image_base = std::filesystem::path(pred_path).parent_path();
  const auto report = rforge::metrics::evaluate(manifest, predictions, opts);

  for (const auto& warning : report.warnings) std::cerr << "warning: " << warning << "\n";
  std::cout << report.table();
  if (!report_path.empty()) {
    std::ofstream out(report_path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write report: " + report_path);
    out << report.to_json().dump(2) << "\n";
    std::cout << "report: " << report_path << "\n";
  }
  return kExitOk;
}

// Accepts either a manifest record line or a bare gt_structured object with
// --task. Prints the exact solution in the task's serialization.
int cmd_solve(const std::string& file, const std::string& task_flag) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open: " + file);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const std::exception& e) {
    throw std::runtime_error("parse error in " + file + ": " + e.what());
  }

  TaskKind kind;
  json gt;
  if (doc.contains("task_kind") && doc.contains("gt_structured")) {
    kind = rforge::task_kind_from_name(doc.at("task_kind").get<std::string>());
    gt = doc.at("gt_structured");
  } else if (!task_flag.empty()) {
    kind = rforge::task_kind_from_name(task_flag);
    gt = doc;
  } else {
    throw std::runtime_error("no task_kind in file; pass --task");
  }

  switch (kind) {
    case TaskKind::Maze: {
      rforge::maze::Maze m;
      m.n = gt.at("n").get<int>();
      for (const auto& pair : gt.at("corridors")) {
        m.corridors.push_back(rforge::maze::make_corridor(
            rforge::cell_from_string(pair.at(0).get<std::string>()),
            rforge::cell_from_string(pair.at(1).get<std::string>())));
      }
      std::sort(m.corridors.begin(), m.corridors.end());
      m.start = rforge::cell_from_string(gt.at("start").get<std::string>());
      m.goal = rforge::cell_from_string(gt.at("goal").get<std::string>());
      std::cout << rforge::maze::bfs_shortest_path(m).move_string() << "\n";
      return kExitOk;
    }
    case TaskKind::Tsp: {
      rforge::tsp::CityLayout layout;
      layout.width = gt.at("width").get<int>();
      layout.height = gt.at("height").get<int>();
      for (const auto& c : gt.at("cities")) {
        layout.cities.push_back({c.at(0).get<int>(), c.at(1).get<int>()});
      }
      const auto tour = rforge::tsp::heldkarp_solve(layout);
      std::cout << json(tour.order).dump() << "\n";
      std::printf("length: %.6f\n", tour.length);
      return kExitOk;
    }
    case TaskKind::Sudoku: {
      const auto puzzle =
          rforge::sudoku::SudokuGrid::from_string(gt.at("puzzle").get<std::string>());
      if (rforge::sudoku::count_solutions(puzzle, 1) == 0) {
        throw std::runtime_error("0 solutions");
      }
      // re-solve rather than trusting any stored solution
      rforge::sudoku::SudokuGrid grid = puzzle;
      const auto solve = [&](auto&& self, int pos) -> bool {
        while (pos < 81 && grid.cells[pos] != rforge::sudoku::kEmpty) ++pos;
        if (pos == 81) return true;
        for (uint8_t d = 1; d <= 9; ++d) {
          grid.cells[pos] = d;
          if (grid.is_valid() && self(self, pos + 1)) return true;
          grid.cells[pos] = rforge::sudoku::kEmpty;
        }
        return false;
      };
      solve(solve, 0);
      std::cout << grid.to_string() << "\n";
      return kExitOk;
    }
    case TaskKind::Vsp: {
      rforge::vsp::HazardMap map;
      map.n = gt.at("n").get<int>();
      map.tiles =
          rforge::vsp::HazardMap::tiles_from_string(gt.at("tiles").get<std::string>(), map.n);
      map.start = rforge::cell_from_string(gt.at("start").get<std::string>());
      map.goal = rforge::cell_from_string(gt.at("goal").get<std::string>());
      std::cout << rforge::vsp::dijkstra_safe_path(map).move_string() << "\n";
      return kExitOk;
    }
  }
  return kExitRuntime;
}

int cmd_render(const std::string& manifest_path, const std::string& id, const std::string& out,
               const std::string& task, int size, uint64_t seed, int stride, double p_hole) {
  rforge::dataset::TaskInstance inst = [&] {
    if (!manifest_path.empty()) {
      const auto records = rforge::dataset::read_manifest(manifest_path);
      for (const auto& rec : records) {
        if (rec.id == id) {
          return rforge::dataset::instance_from_structured(rec.task_kind, rec.gt_structured);
        }
      }
      throw std::runtime_error("id not found in manifest: " + id);
    }
    if (task.empty()) throw std::runtime_error("pass --manifest/--id or --task/--size/--seed");
    rforge::dataset::BuildOptions build;
    build.p_hole = p_hole;
    return rforge::dataset::build_instance(rforge::task_kind_from_name(task), size, seed, build);
  }();

  std::filesystem::create_directories(out);
  const auto t = rforge::dataset::make_trajectory(inst, stride);
  rforge::render::write_png(std::filesystem::path(out) / "input.png",
                            rforge::dataset::render_input(inst));
  for (int s = 0; s < t.num_states(); ++s) {
    char name[32];
    std::snprintf(name, sizeof(name), "step_%03d.png", s);
    rforge::render::write_png(std::filesystem::path(out) / name,
                              rforge::dataset::render_state(inst, t, s));
  }
  std::cout << "wrote " << (t.num_states() + 1) << " images to " << out << "\n";
  return kExitOk;
}

// Constant-field exactness check: integrating the true velocity from noise
// recovers the data endpoint for any step count.
int cmd_fm_demo() {
  using rforge::fm::SampleVec;
  const SampleVec x0{0.25, -1.5, 3.0};
  const SampleVec x1{1.0, 2.0, -0.5};
  const SampleVec u = rforge::fm::target_velocity(x0, x1);
  const auto field = [&u](const SampleVec&, double) { return u; };

  std::printf("constant-field Euler exactness (target x0 = [%g, %g, %g])\n", x0[0], x0[1], x0[2]);
  for (int steps : {1, 10, 1000}) {
    const SampleVec out = rforge::fm::euler_sample(field, x1, steps);
    double err = 0.0;
    for (size_t i = 0; i < out.size(); ++i) err = std::max(err, std::abs(out[i] - x0[i]));
    std::printf("  steps=%-5d max |x - x0| = %.3e\n", steps, err);
  }
  const double loss = rforge::fm::fm_loss([&u](const SampleVec&, double) { return u; },
                                          x0, x1, 0.5);
  std::printf("fm_loss on the true field: %.3e\n", loss);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"reasoning-forge: puzzle dataset generator, solver oracle, and evaluator"};
  app.require_subcommand(1);

  GenFlags gen;
  auto* gen_cmd = app.add_subcommand("gen", "generate a dataset with rendered trajectories");
  gen_cmd->add_option("--task", gen.task, "restrict to one task")
      ->check(CLI::IsMember({"maze", "tsp", "sudoku", "vsp"}));
  gen_cmd->add_option("--size", gen.sizes, "grid sizes (maze/vsp)");
  gen_cmd->add_option("--cities", gen.cities, "city counts (tsp)");
  gen_cmd->add_option("--clues", gen.clues, "given-clue counts (sudoku)");
  gen_cmd->add_option("--holes", gen.holes, "hole counts (sudoku), scale = 81 - holes");
  gen_cmd->add_option("--count", gen.count, "instances per (task, scale)");
  gen_cmd->add_option("--seed", gen.seed, "master seed");
  gen_cmd->add_option("--out", gen.out, "output directory")->required();
  gen_cmd->add_option("--stride", gen.stride, "trajectory subsampling stride")
      ->check(CLI::PositiveNumber);
  gen_cmd->add_option("--p-hole", gen.p_hole, "vsp hole probability");
  gen_cmd->add_option("--threads", gen.threads, "parallel instance generation cap")
      ->envname("REASONING_FORGE_THREADS");
  gen_cmd->add_flag("--paper-scale", gen.paper_scale, "full-size composition presets");
  gen_cmd->add_flag("--dry-run", gen.dry_run, "plan records only; skip solving and rendering");

  std::string solve_file, solve_task;
  auto* solve_cmd = app.add_subcommand("solve", "print the exact solution of a puzzle file");
  solve_cmd->add_option("file", solve_file, "puzzle JSON (manifest record or gt_structured)")
      ->required();
  solve_cmd->add_option("--task", solve_task, "task kind for bare puzzle files")
      ->check(CLI::IsMember({"maze", "tsp", "sudoku", "vsp"}));

  std::string render_manifest, render_id, render_out, render_task;
  int render_size = 8;
  uint64_t render_seed = 0;
  int render_stride = 1;
  double render_p_hole = 0.2;
  auto* render_cmd = app.add_subcommand("render", "render one instance's trajectory to PNGs");
  render_cmd->add_option("--manifest", render_manifest, "manifest to take the instance from");
  render_cmd->add_option("--id", render_id, "record id within --manifest");
  render_cmd->add_option("--task", render_task, "task kind for seed-based rendering")
      ->check(CLI::IsMember({"maze", "tsp", "sudoku", "vsp"}));
  render_cmd->add_option("--size", render_size, "scale for seed-based rendering");
  render_cmd->add_option("--seed", render_seed, "instance seed");
  render_cmd->add_option("--stride", render_stride, "trajectory stride")
      ->check(CLI::PositiveNumber);
  render_cmd->add_option("--p-hole", render_p_hole, "vsp hole probability");
  render_cmd->add_option("--out", render_out, "output directory")->required();

  std::string eval_manifest, eval_pred, eval_report;
  bool eval_strict = false;
  auto* eval_cmd = app.add_subcommand("eval", "score predictions against a manifest");
  eval_cmd->add_option("--manifest", eval_manifest, "reference manifest")->required();
  eval_cmd->add_option("--pred", eval_pred, "predictions JSONL")->required();
  eval_cmd->add_option("--report", eval_report, "write the JSON report here");
  eval_cmd->add_flag("--strict-optimal", eval_strict,
                     "maze/vsp correctness requires shortest paths");

  std::string stats_manifest;
  auto* stats_cmd = app.add_subcommand("stats", "print dataset composition statistics");
  stats_cmd->add_option("--manifest", stats_manifest, "manifest path")->required();

  app.add_subcommand("fm-demo", "flow-matching kernel sanity printout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\nrun with --help for usage\n";
    return kExitUsage;
  }

  try {
    if (gen_cmd->parsed()) return cmd_gen(gen);
    if (solve_cmd->parsed()) return cmd_solve(solve_file, solve_task);
    if (render_cmd->parsed()) {
      return cmd_render(render_manifest, render_id, render_out, render_task, render_size,
                        render_seed, render_stride, render_p_hole);
    }
    if (eval_cmd->parsed()) return cmd_eval(eval_manifest, eval_pred, eval_report, eval_strict);
    if (stats_cmd->parsed()) return cmd_stats(stats_manifest);
    return cmd_fm_demo();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
}
