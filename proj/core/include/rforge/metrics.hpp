#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rforge/dataset.hpp"

namespace rforge::metrics {

using dataset::json;

// One model answer bound to a manifest id. `payload` is the task's
// structured serialization (move string / order list / 81-char grid), or a
// path to a canonical-style PNG (a string ending in ".png") that is routed
// through decode.
struct PredictionRecord {
  std::string id;
  json payload;
};

std::vector<PredictionRecord> read_predictions(const std::filesystem::path& path);

struct CheckResult {
  bool valid = false;
  bool correct = false;
  // Path tasks only: 100 * |cells(pred) ∩ cells(gt)| / |cells(gt)|, with
  // cells(pred) the legally visited prefix of the replay.
  std::optional<double> repetition;
  bool revisit = false;  // legal replay visited a cell twice
  std::string reason;
};

// Replays predicted moves through the corridor tree. Valid = stays in
// bounds, crosses only corridors, ends at the goal. Strict mode additionally
// requires the shortest (= unique simple) path length.
CheckResult check_maze(const dataset::MazeInstance& ref, std::string_view moves,
                       bool strict_optimal = false);

// Valid = permutation of all cities; correct adds closed length within
// 1e-9 relative of the optimum.
CheckResult check_tour(const dataset::TspInstance& ref, const std::vector<int>& order);

// Valid = complete grid, all constraints, every clue preserved; correct =
// equals the stored solution (equivalent by uniqueness; both computed).
CheckResult check_sudoku(const dataset::SudokuTask& ref, std::string_view grid81);

// Valid = in bounds, all cells Safe, ends at the goal. Strict mode requires
// matching the Dijkstra path length.
CheckResult check_vsp(const dataset::VspInstance& ref, std::string_view moves,
                      bool strict_optimal = false);

struct InstanceResult {
  std::string id;
  TaskKind task_kind{};
  int scale = 0;
  bool valid = false;
  bool correct = false;
  std::optional<double> repetition;
  std::string reason;
};

struct ScaleAggregate {
  TaskKind task_kind{};
  int scale = 0;
  int total = 0;
  int correct = 0;
  double accuracy = 0.0;  // percent
  std::optional<double> mean_repetition;
};

struct EvalReport {
  std::vector<InstanceResult> per_instance;
  std::vector<ScaleAggregate> aggregate;  // manifest task/scale order
  std::vector<std::string> warnings;

  json to_json() const;
  std::string table() const;  // per-scale accuracy / repetition columns
};

struct EvalOptions {
  bool strict_optimal = false;
  // resolution base for ".png" payloads
  std::filesystem::path image_base;
};

// Scores predictions against the manifest. Missing predictions count as
// incorrect; unknown ids produce warnings. Deterministic: results follow
// manifest order.
EvalReport evaluate(const std::vector<dataset::ManifestRecord>& manifest,
                    const std::vector<PredictionRecord>& predictions,
                    const EvalOptions& opts = {});

}  // namespace rforge::metrics
