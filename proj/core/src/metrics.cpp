#include "rforge/metrics.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <set>
#include <unordered_map>

#include "rforge/decode.hpp"
#include "rforge/trajectory.hpp"

namespace rforge::metrics {

namespace {

// Shared maze/VSP replay: walk predicted moves while they stay legal, then
// score cell overlap against the ground-truth path. Invalid-from-the-start
// predictions still contribute their start cell.
template <typename LegalFn>
CheckResult check_grid_moves(int n, Cell start, Cell goal, const std::vector<Cell>& gt_cells,
                             std::string_view moves, bool strict_optimal, LegalFn legal) {
  CheckResult res;
  std::vector<Cell> visited{start};
  bool broke = false;

  std::vector<Direction> parsed;
  try {
    parsed = traj::parse_moves(moves);
  } catch (const traj::ReplayError& e) {
    res.reason = e.what();
    broke = true;
  }

  if (!broke) {
    Cell cur = start;
    for (Direction d : parsed) {
      const Cell next = step(cur, d);
      if (next.row < 0 || next.col < 0 || next.row >= n || next.col >= n) {
        res.reason = "moves leave the grid at " + cell_to_string(next);
        broke = true;
        break;
      }
      if (!legal(cur, next)) {
        res.reason = "illegal move " + cell_to_string(cur) + " -> " + cell_to_string(next);
        broke = true;
        break;
      }
      visited.push_back(next);
      cur = next;
    }
    if (!broke) {
      if (cur != goal) {
        res.reason = "path ends at " + cell_to_string(cur) + ", not the goal";
      } else {
        res.valid = true;
      }
    }
  }

  const std::set<Cell> pred_set(visited.begin(), visited.end());
  res.revisit = pred_set.size() != visited.size();

  const std::set<Cell> gt_set(gt_cells.begin(), gt_cells.end());
  size_t shared = 0;
  for (const Cell& c : pred_set) shared += gt_set.count(c);
  res.repetition = 100.0 * static_cast<double>(shared) / static_cast<double>(gt_set.size());

  res.correct = res.valid;
  if (res.correct && strict_optimal && visited.size() != gt_cells.size()) {
    res.correct = false;
    res.reason = "valid but not shortest (" + std::to_string(visited.size()) + " vs " +
                 std::to_string(gt_cells.size()) + " cells)";
  }
  return res;
}

}  // namespace

CheckResult check_maze(const dataset::MazeInstance& ref, std::string_view moves,
                       bool strict_optimal) {
  return check_grid_moves(ref.m.n, ref.m.start, ref.m.goal, ref.path.cells, moves,
                          strict_optimal,
                          [&](Cell a, Cell b) { return ref.m.has_corridor(a, b); });
}

CheckResult check_vsp(const dataset::VspInstance& ref, std::string_view moves,
                      bool strict_optimal) {
  return check_grid_moves(ref.map.n, ref.map.start, ref.map.goal, ref.path.cells, moves,
                          strict_optimal, [&](Cell, Cell b) { return ref.map.is_safe(b); });
}

CheckResult check_tour(const dataset::TspInstance& ref, const std::vector<int>& order) {
  CheckResult res;
  const int n = static_cast<int>(ref.layout.cities.size());
  if (static_cast<int>(order.size()) != n) {
    res.reason = "order has " + std::to_string(order.size()) + " cities, expected " +
                 std::to_string(n);
    return res;
  }
  std::vector<char> seen(n, 0);
  for (int idx : order) {
    if (idx < 0 || idx >= n || seen[idx]) {
      res.reason = "order is not a permutation of 0.." + std::to_string(n - 1);
      return res;
    }
    seen[idx] = 1;
  }
  res.valid = true;
  const double len = tsp::tour_length(ref.layout, order);
  res.correct = len <= ref.tour.length * (1.0 + 1e-9);
  if (!res.correct) {
    char buf[96];
    std::snprintf(buf, sizeof(buf), "tour length %.6f exceeds optimal %.6f", len,
                  ref.tour.length);
    res.reason = buf;
  }
  return res;
}

CheckResult check_sudoku(const dataset::SudokuTask& ref, std::string_view grid81) {
  CheckResult res;
  sudoku::SudokuGrid pred;
  try {
    pred = sudoku::SudokuGrid::from_string(grid81);
  } catch (const std::invalid_argument& e) {
    res.reason = e.what();
    return res;
  }

  if (!pred.is_complete()) {
    res.reason = "grid is incomplete";
    return res;
  }
  if (!pred.is_valid()) {
    res.reason = "grid violates a row/column/block constraint";
    return res;
  }
  for (int i = 0; i < 81; ++i) {
    if (ref.inst.puzzle.cells[i] != sudoku::kEmpty &&
        pred.cells[i] != ref.inst.puzzle.cells[i]) {
      res.reason = "clue altered at " + cell_to_string({i / 9, i % 9});
      return res;
    }
  }
  res.valid = true;

  // by uniqueness valid <=> equals the stored solution; both routes computed
  const bool matches_solution = pred == ref.inst.solution;
  if (!matches_solution) {
    res.valid = false;
    res.reason = "uniqueness cross-check failed: valid completion differs from stored solution";
    return res;
  }
  res.correct = true;
  return res;
}

std::vector<PredictionRecord> read_predictions(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw dataset::DatasetError("cannot open: " + path.string());
  std::vector<PredictionRecord> out;
  std::string line;
  int line_no = 0;
  while (std::getline(f, line)) {
    ++line_no;
    if (line.empty()) continue;
    try {
      const json j = json::parse(line);
      out.push_back({j.at("id").get<std::string>(), j.at("payload")});
    } catch (const std::exception& e) {
      throw dataset::DatasetError("predictions line " + std::to_string(line_no) + ": " +
                                  e.what());
    }
  }
  return out;
}

namespace {

bool is_image_payload(const json& payload) {
  return payload.is_string() && payload.get<std::string>().ends_with(".png");
}

// Decodes a canonical-style image into the task's structured payload.
json payload_from_image(const dataset::TaskInstance& inst, const std::filesystem::path& img_path) {
  const render::RasterImage img = render::read_png(img_path);
  return std::visit(
      [&](const auto& v) -> json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, dataset::MazeInstance>) {
          return decode::decode_grid_path(img, v.m).move_string();
        } else if constexpr (std::is_same_v<T, dataset::TspInstance>) {
          return decode::decode_tour(img, v.layout);
        } else if constexpr (std::is_same_v<T, dataset::SudokuTask>) {
          return decode::decode_sudoku(img).grid.to_string();
        } else {
          return decode::decode_grid_path(img, v.map).move_string();
        }
      },
      inst);
}

InstanceResult score_one(const dataset::ManifestRecord& rec, const json* payload,
                         const EvalOptions& opts) {
  InstanceResult row;
  row.id = rec.id;
  row.task_kind = rec.task_kind;
  row.scale = rec.scale;

  const bool path_task = rec.task_kind == TaskKind::Maze || rec.task_kind == TaskKind::Vsp;
  if (path_task) row.repetition = 0.0;

  if (payload == nullptr) {
    row.reason = "missing prediction";
    return row;
  }

  dataset::TaskInstance inst = dataset::instance_from_structured(rec.task_kind, rec.gt_structured);

  json effective = *payload;
  if (is_image_payload(effective)) {
    try {
      effective = payload_from_image(inst, opts.image_base / effective.get<std::string>());
    } catch (const std::exception& e) {
      row.reason = std::string("image decode failed: ") + e.what();
      return row;
    }
  }

  CheckResult check;
  switch (rec.task_kind) {
    case TaskKind::Maze:
      if (!effective.is_string()) {
        row.reason = "maze payload must be a move string";
        return row;
      }
      check = check_maze(std::get<dataset::MazeInstance>(inst), effective.get<std::string>(),
                         opts.strict_optimal);
      break;
    case TaskKind::Vsp:
      if (!effective.is_string()) {
        row.reason = "vsp payload must be a move string";
        return row;
      }
      check = check_vsp(std::get<dataset::VspInstance>(inst), effective.get<std::string>(),
                        opts.strict_optimal);
      break;
    case TaskKind::Tsp: {
      std::vector<int> order;
      if (effective.is_array()) {
        try {
          order = effective.get<std::vector<int>>();
        } catch (const std::exception&) {
          row.reason = "tsp payload array must hold integers";
          return row;
        }
      } else if (effective.is_string()) {
        try {
          order = traj::parse_tour_text(effective.get<std::string>());
        } catch (const traj::ReplayError& e) {
          row.reason = e.what();
          return row;
        }
      } else {
        row.reason = "tsp payload must be an order list";
        return row;
      }
      check = check_tour(std::get<dataset::TspInstance>(inst), order);
      break;
    }
    case TaskKind::Sudoku:
      if (!effective.is_string()) {
        row.reason = "sudoku payload must be an 81-character grid string";
        return row;
      }
      check = check_sudoku(std::get<dataset::SudokuTask>(inst), effective.get<std::string>());
      break;
  }

  row.valid = check.valid;
  row.correct = check.correct;
  if (check.repetition) row.repetition = check.repetition;
  row.reason = check.reason;
  return row;
}

}  // namespace

EvalReport evaluate(const std::vector<dataset::ManifestRecord>& manifest,
                    const std::vector<PredictionRecord>& predictions, const EvalOptions& opts) {
  EvalReport report;

  std::unordered_map<std::string, const json*> by_id;
  std::set<std::string> known;
  for (const auto& rec : manifest) known.insert(rec.id);
  for (const auto& pred : predictions) {
    if (!known.count(pred.id)) {
      report.warnings.push_back("prediction id not in manifest: " + pred.id);
      continue;
    }
    if (!by_id.emplace(pred.id, &pred.payload).second) {
      report.warnings.push_back("duplicate prediction id: " + pred.id + " (first kept)");
    }
  }

  std::map<std::pair<std::string, int>, size_t> agg_index;
  for (const auto& rec : manifest) {
    const auto it = by_id.find(rec.id);
    InstanceResult row = score_one(rec, it == by_id.end() ? nullptr : it->second, opts);

    const auto key = std::make_pair(std::string(task_kind_name(rec.task_kind)), rec.scale);
    auto agg_it = agg_index.find(key);
    if (agg_it == agg_index.end()) {
      agg_index[key] = report.aggregate.size();
      report.aggregate.push_back({rec.task_kind, rec.scale, 0, 0, 0.0, std::nullopt});
    }
    ScaleAggregate& agg = report.aggregate[agg_index[key]];
    agg.total += 1;
    agg.correct += row.correct ? 1 : 0;
    if (row.repetition) {
      if (!agg.mean_repetition) agg.mean_repetition = 0.0;
      *agg.mean_repetition += *row.repetition;
    }
    report.per_instance.push_back(std::move(row));
  }

  for (ScaleAggregate& agg : report.aggregate) {
    agg.accuracy = agg.total > 0 ? 100.0 * agg.correct / agg.total : 0.0;
    if (agg.mean_repetition) *agg.mean_repetition /= agg.total;
  }
  return report;
}

json EvalReport::to_json() const {
  json agg = json::array();
  for (const auto& a : aggregate) {
    json row{{"task_kind", std::string(task_kind_name(a.task_kind))},
             {"scale", a.scale},
             {"total", a.total},
             {"correct", a.correct},
             {"accuracy", a.accuracy}};
    if (a.mean_repetition) row["mean_path_repetition"] = *a.mean_repetition;
    agg.push_back(std::move(row));
  }
  json rows = json::array();
  for (const auto& r : per_instance) {
    json row{{"id", r.id},
             {"task_kind", std::string(task_kind_name(r.task_kind))},
             {"scale", r.scale},
             {"valid", r.valid},
             {"correct", r.correct}};
    if (r.repetition) row["path_repetition"] = *r.repetition;
    if (!r.reason.empty()) row["reason"] = r.reason;
    rows.push_back(std::move(row));
  }
  return json{{"aggregate", std::move(agg)},
              {"per_instance", std::move(rows)},
              {"warnings", warnings}};
}

std::string EvalReport::table() const {
  std::string out;
  char buf[160];
  std::snprintf(buf, sizeof(buf), "%-8s %6s %6s %9s %10s\n", "task", "scale", "n", "acc",
                "path_rep");
  out += buf;
  for (const auto& a : aggregate) {
    if (a.mean_repetition) {
      std::snprintf(buf, sizeof(buf), "%-8s %6d %6d %8.1f%% %9.2f%%\n",
                    std::string(task_kind_name(a.task_kind)).c_str(), a.scale, a.total,
                    a.accuracy, *a.mean_repetition);
    } else {
      std::snprintf(buf, sizeof(buf), "%-8s %6d %6d %8.1f%% %10s\n",
                    std::string(task_kind_name(a.task_kind)).c_str(), a.scale, a.total,
                    a.accuracy, "-");
    }
    out += buf;
  }
  return out;
}

}  // namespace rforge::metrics
