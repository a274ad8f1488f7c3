#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "rforge/core.hpp"
#include "rforge/maze.hpp"
#include "rforge/render.hpp"
#include "rforge/sudoku.hpp"
#include "rforge/trajectory.hpp"
#include "rforge/tsp.hpp"
#include "rforge/vsp.hpp"

namespace rforge::dataset {

using json = nlohmann::ordered_json;

struct DatasetError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// One generated puzzle with its exact solution.
struct MazeInstance {
  maze::Maze m;
  GridPath path;
};
struct TspInstance {
  tsp::CityLayout layout;
  tsp::Tour tour;
};
struct SudokuTask {
  sudoku::SudokuInstance inst;
};
struct VspInstance {
  vsp::HazardMap map;
  GridPath path;
};
using TaskInstance = std::variant<MazeInstance, TspInstance, SudokuTask, VspInstance>;

TaskKind kind_of(const TaskInstance& inst);

struct BuildOptions {
  double p_hole = 0.2;
  bool scales_are_clues = true;  // sudoku scale = given clues (else holes)
  int sudoku_max_attempts = 500;
  int vsp_max_resamples = 1000;
};

// City sampling bounds used by the rendering pipeline; chosen so markers
// stay inside the frame and tours stay decodable.
inline constexpr int kCityMargin = 16;
inline constexpr int kCityMinSeparation = 26;

// Builds one instance from its seed. Sudoku digging and VSP map sampling can
// fail (DiggingStuck / MapInfeasible); generate_dataset reseeds on that.
TaskInstance build_instance(TaskKind kind, int scale, uint64_t seed, const BuildOptions& opts);

// Rebuilds an instance from its stored structured serialization.
TaskInstance instance_from_structured(TaskKind kind, const json& gt);
json structured_json(const TaskInstance& inst);

traj::Trajectory make_trajectory(const TaskInstance& inst, int stride = 1);
render::RasterImage render_input(const TaskInstance& inst);
render::RasterImage render_state(const TaskInstance& inst, const traj::Trajectory& t, int state);

// One dataset row. Image paths are relative to the manifest file.
struct ManifestRecord {
  std::string id;  // "task-scale-index"
  TaskKind task_kind{};
  int scale = 0;
  uint64_t seed = 0;
  std::string input_image;
  std::vector<std::string> step_images;
  std::string final_image;
  json gt_structured;
  std::string gt_text;
  int step_count = 0;
  int reseed_bumps = 0;
};

json record_to_json(const ManifestRecord& rec);
ManifestRecord record_from_json(const json& j);

struct GenConfig {
  uint64_t master_seed = 0;
  std::filesystem::path out_dir;
  std::map<TaskKind, std::vector<int>> scales;  // empty = all-task presets
  std::map<TaskKind, int> count_per_scale;      // instances per (task, scale)
  int stride = 1;
  BuildOptions build;
  int threads = 0;       // 0 = hardware concurrency
  bool dry_run = false;  // plan records only; no solving, no files
};

// Tab-1 style scale presets.
std::vector<int> default_scales(TaskKind kind);

// 100 instances per scale across all four tasks.
GenConfig desk_config(uint64_t master_seed, std::filesystem::path out_dir);
// Full-size composition: 75K maze, 30K tsp, 40K sudoku, 37.4K vsp, counts
// split evenly across each task's scales.
GenConfig paper_config(uint64_t master_seed, std::filesystem::path out_dir);

// Generates every (task, scale, index) instance, renders all trajectory
// states, writes PNGs plus out/manifest.jsonl, and returns the records in
// deterministic job order. Same config => byte-identical output.
std::vector<ManifestRecord> generate_dataset(const GenConfig& cfg);

std::vector<ManifestRecord> read_manifest(const std::filesystem::path& path);
void write_manifest(const std::filesystem::path& path, const std::vector<ManifestRecord>& records);

struct ScaleStats {
  TaskKind task_kind{};
  int scale = 0;
  int count = 0;
  int step_min = 0;
  int step_max = 0;
  double step_mean = 0.0;
};

struct DatasetStats {
  std::map<std::string, int> per_task;  // task name -> instance count
  std::vector<ScaleStats> per_scale;    // (task, scale) in manifest order
  int total = 0;

  std::string table() const;  // plain-text summary
};

DatasetStats dataset_stats(const std::vector<ManifestRecord>& records);

}  // namespace rforge::dataset
