#include "rforge/dataset.hpp"

#include <atomic>
#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <thread>

namespace rforge::dataset {

namespace {

constexpr TaskKind kTaskOrder[4] = {TaskKind::Maze, TaskKind::Tsp, TaskKind::Sudoku,
                                    TaskKind::Vsp};

json cell_json(Cell c) { return json(cell_to_string(c)); }
Cell cell_from_json(const json& j) { return cell_from_string(j.get<std::string>()); }

double round6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return std::strtod(buf, nullptr);
}

}  // namespace

TaskKind kind_of(const TaskInstance& inst) {
  return std::visit(
      [](const auto& v) -> TaskKind {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, MazeInstance>) return TaskKind::Maze;
        else if constexpr (std::is_same_v<T, TspInstance>) return TaskKind::Tsp;
        else if constexpr (std::is_same_v<T, SudokuTask>) return TaskKind::Sudoku;
        else return TaskKind::Vsp;
      },
      inst);
}

TaskInstance build_instance(TaskKind kind, int scale, uint64_t seed, const BuildOptions& opts) {
  Rng rng(seed);
  switch (kind) {
    case TaskKind::Maze: {
      maze::Maze m = maze::carve_maze(scale, rng);
      const auto [start, goal] = maze::sample_endpoints(m, rng);
      m.start = start;
      m.goal = goal;
      GridPath path = maze::bfs_shortest_path(m);
      return MazeInstance{std::move(m), std::move(path)};
    }
    case TaskKind::Tsp: {
      tsp::CityLayout layout = tsp::sample_cities(scale, render::kImageSize, render::kImageSize,
                                                  rng, kCityMargin, kCityMinSeparation);
      tsp::Tour tour = tsp::heldkarp_solve(layout);
      return TspInstance{std::move(layout), std::move(tour)};
    }
    case TaskKind::Sudoku: {
      const int clue_target = opts.scales_are_clues ? scale : 81 - scale;
      sudoku::SudokuGrid solution = sudoku::generate_solution(rng);
      sudoku::SudokuInstance inst =
          sudoku::dig_holes(solution, clue_target, rng, opts.sudoku_max_attempts);
      return SudokuTask{std::move(inst)};
    }
    case TaskKind::Vsp: {
      vsp::HazardMap map = vsp::generate_map(scale, opts.p_hole, rng, opts.vsp_max_resamples);
      GridPath path = vsp::dijkstra_safe_path(map);
      return VspInstance{std::move(map), std::move(path)};
    }
  }
  throw DatasetError("bad task kind");
}

json structured_json(const TaskInstance& inst) {
  json out;
  std::visit(
      [&](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, MazeInstance>) {
          json corridors = json::array();
          for (const auto& [a, b] : v.m.corridors) {
            corridors.push_back(json::array({cell_json(a), cell_json(b)}));
          }
          out = json{{"n", v.m.n},
                     {"corridors", std::move(corridors)},
                     {"start", cell_json(v.m.start)},
                     {"goal", cell_json(v.m.goal)},
                     {"moves", v.path.move_string()}};
        } else if constexpr (std::is_same_v<T, TspInstance>) {
          json cities = json::array();
          for (const auto& c : v.layout.cities) cities.push_back(json::array({c[0], c[1]}));
          out = json{{"width", v.layout.width},
                     {"height", v.layout.height},
                     {"cities", std::move(cities)},
                     {"order", v.tour.order},
                     {"length", round6(v.tour.length)}};
        } else if constexpr (std::is_same_v<T, SudokuTask>) {
          out = json{{"puzzle", v.inst.puzzle.to_string()},
                     {"solution", v.inst.solution.to_string()},
                     {"clue_count", v.inst.clue_count}};
        } else {
          out = json{{"n", v.map.n},
                     {"tiles", v.map.tile_string()},
                     {"start", cell_json(v.map.start)},
                     {"goal", cell_json(v.map.goal)},
                     {"moves", v.path.move_string()}};
        }
      },
      inst);
  return out;
}

TaskInstance instance_from_structured(TaskKind kind, const json& gt) {
  switch (kind) {
    case TaskKind::Maze: {
      MazeInstance v;
      v.m.n = gt.at("n").get<int>();
      for (const auto& pair : gt.at("corridors")) {
        v.m.corridors.push_back(maze::make_corridor(cell_from_json(pair.at(0)),
                                                    cell_from_json(pair.at(1))));
      }
      std::sort(v.m.corridors.begin(), v.m.corridors.end());
      v.m.start = cell_from_json(gt.at("start"));
      v.m.goal = cell_from_json(gt.at("goal"));
      v.path = path_from_cells(
          traj::replay_moves(v.m.start, gt.at("moves").get<std::string>(), v.m.n));
      return v;
    }
    case TaskKind::Tsp: {
      TspInstance v;
      v.layout.width = gt.at("width").get<int>();
      v.layout.height = gt.at("height").get<int>();
      for (const auto& c : gt.at("cities")) {
        v.layout.cities.push_back({c.at(0).get<int>(), c.at(1).get<int>()});
      }
      v.tour.order = gt.at("order").get<std::vector<int>>();
      v.tour.length = tsp::tour_length(v.layout, v.tour.order);
      return v;
    }
    case TaskKind::Sudoku: {
      SudokuTask v;
      v.inst.puzzle = sudoku::SudokuGrid::from_string(gt.at("puzzle").get<std::string>());
      v.inst.solution = sudoku::SudokuGrid::from_string(gt.at("solution").get<std::string>());
      v.inst.clue_count = gt.at("clue_count").get<int>();
      return v;
    }
    case TaskKind::Vsp: {
      VspInstance v;
      v.map.n = gt.at("n").get<int>();
      v.map.tiles = vsp::HazardMap::tiles_from_string(gt.at("tiles").get<std::string>(), v.map.n);
      v.map.start = cell_from_json(gt.at("start"));
      v.map.goal = cell_from_json(gt.at("goal"));
      v.path = path_from_cells(
          traj::replay_moves(v.map.start, gt.at("moves").get<std::string>(), v.map.n));
      return v;
    }
  }
  throw DatasetError("bad task kind");
}

traj::Trajectory make_trajectory(const TaskInstance& inst, int stride) {
  return std::visit(
      [&](const auto& v) -> traj::Trajectory {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, MazeInstance>) {
          return traj::maze_trajectory(v.m, v.path, stride);
        } else if constexpr (std::is_same_v<T, TspInstance>) {
          return traj::tsp_trajectory(v.layout, v.tour, stride);
        } else if constexpr (std::is_same_v<T, SudokuTask>) {
          return traj::sudoku_trajectory(v.inst, stride);
        } else {
          return traj::vsp_trajectory(v.map, v.path, stride);
        }
      },
      inst);
}

render::RasterImage render_input(const TaskInstance& inst) {
  return std::visit(
      [&](const auto& v) -> render::RasterImage {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, MazeInstance>) {
          return render::render_maze_state(v.m, {});
        } else if constexpr (std::is_same_v<T, TspInstance>) {
          return render::render_tsp_state(v.layout, {});
        } else if constexpr (std::is_same_v<T, SudokuTask>) {
          return render::render_sudoku_state(v.inst, 0);
        } else {
          return render::render_vsp_state(v.map, {});
        }
      },
      inst);
}

render::RasterImage render_state(const TaskInstance& inst, const traj::Trajectory& t, int state) {
  if (state < 0 || state >= t.num_states()) throw DatasetError("state index out of range");
  const int k = t.prefix_sizes[state];
  return std::visit(
      [&](const auto& v) -> render::RasterImage {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, MazeInstance>) {
          return render::render_maze_state(v.m, std::span(t.path_cells.data(), k));
        } else if constexpr (std::is_same_v<T, TspInstance>) {
          return render::render_tsp_state(v.layout, std::span(t.tour_order.data(), k));
        } else if constexpr (std::is_same_v<T, SudokuTask>) {
          return render::render_sudoku_state(v.inst, k);
        } else {
          return render::render_vsp_state(v.map, std::span(t.path_cells.data(), k));
        }
      },
      inst);
}

json record_to_json(const ManifestRecord& rec) {
  return json{{"id", rec.id},
              {"task_kind", std::string(task_kind_name(rec.task_kind))},
              {"scale", rec.scale},
              {"seed", rec.seed},
              {"input_image", rec.input_image},
              {"step_images", rec.step_images},
              {"final_image", rec.final_image},
              {"gt_structured", rec.gt_structured},
              {"gt_text", rec.gt_text},
              {"step_count", rec.step_count},
              {"reseed_bumps", rec.reseed_bumps}};
}

ManifestRecord record_from_json(const json& j) {
  ManifestRecord rec;
  rec.id = j.at("id").get<std::string>();
  rec.task_kind = task_kind_from_name(j.at("task_kind").get<std::string>());
  rec.scale = j.at("scale").get<int>();
  rec.seed = j.at("seed").get<uint64_t>();
  rec.input_image = j.at("input_image").get<std::string>();
  rec.step_images = j.at("step_images").get<std::vector<std::string>>();
  rec.final_image = j.at("final_image").get<std::string>();
  rec.gt_structured = j.at("gt_structured");
  rec.gt_text = j.at("gt_text").get<std::string>();
  rec.step_count = j.at("step_count").get<int>();
  rec.reseed_bumps = j.value("reseed_bumps", 0);
  return rec;
}

std::vector<int> default_scales(TaskKind kind) {
  switch (kind) {
    case TaskKind::Maze: return {8, 16, 32};
    case TaskKind::Tsp: return {12, 15, 18};
    case TaskKind::Sudoku: return {45, 40, 35, 30};
    case TaskKind::Vsp: return {3, 4, 5, 6, 7, 8, 16, 32};
  }
  throw DatasetError("bad task kind");
}

GenConfig desk_config(uint64_t master_seed, std::filesystem::path out_dir) {
  GenConfig cfg;
  cfg.master_seed = master_seed;
  cfg.out_dir = std::move(out_dir);
  for (TaskKind kind : kTaskOrder) {
    cfg.scales[kind] = default_scales(kind);
    cfg.count_per_scale[kind] = 100;
  }
  return cfg;
}

GenConfig paper_config(uint64_t master_seed, std::filesystem::path out_dir) {
  GenConfig cfg = desk_config(master_seed, std::move(out_dir));
  cfg.count_per_scale[TaskKind::Maze] = 25000;    // 75K over 3 scales
  cfg.count_per_scale[TaskKind::Tsp] = 10000;     // 30K over 3 scales
  cfg.count_per_scale[TaskKind::Sudoku] = 10000;  // 40K over 4 scales
  cfg.count_per_scale[TaskKind::Vsp] = 4675;      // 37.4K over 8 scales
  return cfg;
}

namespace {

struct Job {
  TaskKind kind;
  int scale;
  int index;
};

std::vector<Job> enumerate_jobs(const GenConfig& cfg) {
  std::vector<Job> jobs;
  for (TaskKind kind : kTaskOrder) {
    const auto scales_it = cfg.scales.find(kind);
    const auto count_it = cfg.count_per_scale.find(kind);
    if (scales_it == cfg.scales.end() || count_it == cfg.count_per_scale.end()) continue;
    for (int scale : scales_it->second) {
      for (int i = 0; i < count_it->second; ++i) jobs.push_back({kind, scale, i});
    }
  }
  return jobs;
}

std::string job_tag(const Job& job, int bump) {
  std::string tag = std::string(task_kind_name(job.kind)) + "-" + std::to_string(job.scale);
  if (bump > 0) tag += "#retry" + std::to_string(bump);
  return tag;
}

ManifestRecord run_job(const GenConfig& cfg, const Job& job) {
  ManifestRecord rec;
  rec.task_kind = job.kind;
  rec.scale = job.scale;
  rec.id = std::string(task_kind_name(job.kind)) + "-" + std::to_string(job.scale) + "-" +
           std::to_string(job.index);

  // reseed with a bumped nonce until rejection sampling succeeds
  TaskInstance inst = [&] {
    for (int bump = 0;; ++bump) {
      const uint64_t seed = derive_seed(
          {cfg.master_seed, job_tag(job, bump), static_cast<uint64_t>(job.index)});
      try {
        TaskInstance built = build_instance(job.kind, job.scale, seed, cfg.build);
        rec.seed = seed;
        rec.reseed_bumps = bump;
        return built;
      } catch (const sudoku::DiggingStuck&) {
      } catch (const vsp::MapInfeasible&) {
      }
      if (bump >= 64) throw DatasetError("instance " + rec.id + " kept failing generation");
    }
  }();

  const traj::Trajectory t = make_trajectory(inst, cfg.stride);
  rec.gt_structured = structured_json(inst);
  rec.gt_text = t.reasoning_text;
  rec.step_count = t.num_states();

  const std::string rel_dir = std::string(task_kind_name(job.kind)) + "/" +
                              std::to_string(job.scale) + "/" + rec.id;
  const std::filesystem::path abs_dir = cfg.out_dir / rel_dir;
  std::error_code ec;
  std::filesystem::create_directories(abs_dir, ec);
  if (ec) throw DatasetError("cannot create " + abs_dir.string() + ": " + ec.message());

  rec.input_image = rel_dir + "/input.png";
  render::write_png(cfg.out_dir / rec.input_image, render_input(inst));
  for (int s = 0; s < t.num_states(); ++s) {
    char name[32];
    std::snprintf(name, sizeof(name), "step_%03d.png", s);
    const std::string rel = rel_dir + "/" + name;
    render::write_png(cfg.out_dir / rel, render_state(inst, t, s));
    rec.step_images.push_back(rel);
  }
  rec.final_image = rec.step_images.back();
  return rec;
}

}  // namespace

std::vector<ManifestRecord> generate_dataset(const GenConfig& cfg) {
  const std::vector<Job> jobs = enumerate_jobs(cfg);
  std::vector<ManifestRecord> records(jobs.size());

  if (cfg.dry_run) {
    for (size_t i = 0; i < jobs.size(); ++i) {
      const Job& job = jobs[i];
      ManifestRecord& rec = records[i];
      rec.task_kind = job.kind;
      rec.scale = job.scale;
      rec.id = std::string(task_kind_name(job.kind)) + "-" + std::to_string(job.scale) + "-" +
               std::to_string(job.index);
      rec.seed = derive_seed({cfg.master_seed, job_tag(job, 0), static_cast<uint64_t>(job.index)});
    }
    return records;
  }

  if (cfg.out_dir.empty()) throw DatasetError("output directory not set");
  std::error_code ec;
  std::filesystem::create_directories(cfg.out_dir, ec);
  if (ec) throw DatasetError("cannot create " + cfg.out_dir.string() + ": " + ec.message());

  unsigned threads = cfg.threads > 0 ? static_cast<unsigned>(cfg.threads)
                                     : std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, std::max<size_t>(jobs.size(), 1));

  std::atomic<size_t> next{0};
  std::atomic<bool> failed{false};
  std::vector<std::string> errors(threads);

  const auto worker = [&](unsigned tid) {
    for (;;) {
      const size_t i = next.fetch_add(1);
      if (i >= jobs.size() || failed.load()) return;
      try {
        records[i] = run_job(cfg, jobs[i]);
      } catch (const std::exception& e) {
        errors[tid] = e.what();
        failed.store(true);
        return;
      }
    }
  };

  if (threads <= 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned tid = 0; tid < threads; ++tid) pool.emplace_back(worker, tid);
    for (auto& th : pool) th.join();
  }

  if (failed.load()) {
    std::string reason;
    for (const auto& e : errors) {
      if (!e.empty()) {
        reason = e;
        break;
      }
    }
    throw DatasetError("generation aborted (partial output left in " + cfg.out_dir.string() +
                       "): " + reason);
  }

  write_manifest(cfg.out_dir / "manifest.jsonl", records);
  return records;
}

void write_manifest(const std::filesystem::path& path,
                    const std::vector<ManifestRecord>& records) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw DatasetError("cannot open for writing: " + path.string());
  for (const auto& rec : records) {
    f << record_to_json(rec).dump() << '\n';
  }
  if (!f) throw DatasetError("short write: " + path.string());
}

std::vector<ManifestRecord> read_manifest(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw DatasetError("cannot open: " + path.string());
  std::vector<ManifestRecord> records;
  std::string line;
  int line_no = 0;
  while (std::getline(f, line)) {
    ++line_no;
    if (line.empty()) continue;
    try {
      records.push_back(record_from_json(json::parse(line)));
    } catch (const std::exception& e) {
      throw DatasetError("manifest line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return records;
}

DatasetStats dataset_stats(const std::vector<ManifestRecord>& records) {
  DatasetStats stats;
  std::map<std::pair<std::string, int>, size_t> index;
  for (const auto& rec : records) {
    const std::string task(task_kind_name(rec.task_kind));
    stats.per_task[task] += 1;
    stats.total += 1;
    const auto key = std::make_pair(task, rec.scale);
    auto it = index.find(key);
    if (it == index.end()) {
      index[key] = stats.per_scale.size();
      stats.per_scale.push_back(
          {rec.task_kind, rec.scale, 1, rec.step_count, rec.step_count, double(rec.step_count)});
    } else {
      ScaleStats& s = stats.per_scale[it->second];
      s.step_min = std::min(s.step_min, rec.step_count);
      s.step_max = std::max(s.step_max, rec.step_count);
      s.step_mean += (rec.step_count - s.step_mean) / (s.count + 1);
      s.count += 1;
    }
  }
  return stats;
}

std::string DatasetStats::table() const {
  std::string out;
  char buf[160];
  std::snprintf(buf, sizeof(buf), "%-8s %6s %8s %9s %9s %9s\n", "task", "scale", "count",
                "step_min", "step_mean", "step_max");
  out += buf;
  for (const auto& s : per_scale) {
    std::snprintf(buf, sizeof(buf), "%-8s %6d %8d %9d %9.1f %9d\n",
                  std::string(task_kind_name(s.task_kind)).c_str(), s.scale, s.count, s.step_min,
                  s.step_mean, s.step_max);
    out += buf;
  }
  for (const auto& [task, count] : per_task) {
    std::snprintf(buf, sizeof(buf), "%-8s total %8d\n", task.c_str(), count);
    out += buf;
  }
  std::snprintf(buf, sizeof(buf), "%-8s total %8d\n", "all", total);
  out += buf;
  return out;
}

}  // namespace rforge::dataset
