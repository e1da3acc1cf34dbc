#pragma once

#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "gridknot/grid_diagram.hpp"
#include "gridknot/knot_table.hpp"
#include "gridknot/moves.hpp"
#include "gridknot/rng.hpp"
#include "gridknot/util.hpp"

namespace gridknot {

struct GenError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct GenConfig {
  std::vector<std::string> classes;  // empty: all registry classes
  int batch_size = 2048;
  int complexity_min = 25;
  int complexity_max = 30;
  int switch_moves = 1000;
  MoveSet move_set = MoveSet::WithExternal;
  uint64_t seed = 0;
  int validation_complexity = 35;
  int validation_count = 10000;
};

struct SampleMeta {
  std::string seed_class;
  uint64_t rng_seed = 0;  // per-sample stream seed; replays the sample
  int stab_count = 0;
  int switch_count = 0;
};

struct LabeledSample {
  GridDiagram diagram;
  ClassLabel label;
  SampleMeta meta;
};

namespace detail {

constexpr uint64_t kValidationTag = 0x76616c6964ULL;  // distinct batch space

inline std::vector<int> class_indices(const GenConfig& cfg, const ClassRegistry& reg) {
  std::vector<int> idx;
  if (cfg.classes.empty()) {
    for (const auto& e : reg.entries()) idx.push_back(e.label.index);
  } else {
    for (const auto& name : cfg.classes) idx.push_back(reg.label(name).index);
  }
  if (idx.empty()) throw GenError("no classes selected");
  return idx;
}

inline void check_target(const GenConfig& cfg, const ClassRegistry& reg,
                         const std::vector<int>& classes, int floor_complexity) {
  if (cfg.complexity_min < 2 || cfg.complexity_min > cfg.complexity_max)
    throw GenError("bad complexity range");
  for (int ci : classes) {
    const auto& e = reg.at(ci);
    if (e.seed.n() > floor_complexity)
      throw GenError("class " + e.label.name + " seed has complexity " +
                     std::to_string(e.seed.n()) + " above the requested target " +
                     std::to_string(floor_complexity));
  }
}

inline LabeledSample make_sample(const ClassRegistry& reg, const std::vector<int>& classes,
                                 int target, int switch_moves, MoveSet move_set, Rng stream) {
  const uint64_t stream_seed = stream.seed();
  const int ci = classes[stream.below(classes.size())];
  const auto& entry = reg.at(ci);
  GridDiagram d = entry.seed;
  int stabs = 0;
  while (d.n() < target) {
    // all 8n stabilization variants are legal; draw uniformly
    const int idx = static_cast<int>(stream.below(static_cast<uint64_t>(8 * d.n())));
    const int row = idx / 8 + 1;
    const Marker mk = (idx % 8) / 4 == 0 ? Marker::X : Marker::O;
    const Corner cn = static_cast<Corner>(idx % 4);
    d = stabilize(d, row, mk, cn);
    ++stabs;
  }
  d = scramble(d, stream, switch_moves, move_set);
  return LabeledSample{std::move(d), entry.label,
                       SampleMeta{entry.label.name, stream_seed, stabs, switch_moves}};
}

}  // namespace detail

/// One batch of labeled diagrams: a single per-batch complexity target drawn
/// uniformly from [complexity_min, complexity_max]; each sample picks a
/// class uniformly with repetition, stabilizes the seed up to the target and
/// then applies the switch-move scramble. Counter-derived per-sample streams
/// make the result independent of thread count.
inline std::vector<LabeledSample> make_batch(const GenConfig& cfg, const ClassRegistry& reg,
                                             uint64_t batch_index, int threads = 1) {
  const auto classes = detail::class_indices(cfg, reg);
  detail::check_target(cfg, reg, classes, cfg.complexity_min);
  Rng base(cfg.seed);
  Rng batch_stream = base.derive(1, batch_index);
  const int target = cfg.complexity_min +
                     static_cast<int>(batch_stream.below(
                         static_cast<uint64_t>(cfg.complexity_max - cfg.complexity_min + 1)));
  std::vector<LabeledSample> out;
  out.reserve(static_cast<size_t>(cfg.batch_size));
  for (int s = 0; s < cfg.batch_size; ++s)
    out.push_back(LabeledSample{GridDiagram::validate({1, 2}, {2, 1}), {}, {}});
  parallel_for_chunked(cfg.batch_size, threads, [&](int lo, int hi) {
    for (int s = lo; s < hi; ++s)
      out[static_cast<size_t>(s)] =
          detail::make_sample(reg, classes, target, cfg.switch_moves, cfg.move_set,
                              base.derive(2, batch_index, static_cast<uint64_t>(s)));
  });
  return out;
}

/// Fixed-complexity held-out set (complexity = validation_complexity,
/// count = validation_count), built with the batch protocol.
inline std::vector<LabeledSample> make_validation_set(const GenConfig& cfg,
                                                      const ClassRegistry& reg,
                                                      int threads = 1) {
  const auto classes = detail::class_indices(cfg, reg);
  detail::check_target(cfg, reg, classes, cfg.validation_complexity);
  Rng base(cfg.seed);
  std::vector<LabeledSample> out;
  out.reserve(static_cast<size_t>(cfg.validation_count));
  for (int s = 0; s < cfg.validation_count; ++s)
    out.push_back(LabeledSample{GridDiagram::validate({1, 2}, {2, 1}), {}, {}});
  parallel_for_chunked(cfg.validation_count, threads, [&](int lo, int hi) {
    for (int s = lo; s < hi; ++s)
      out[static_cast<size_t>(s)] =
          detail::make_sample(reg, classes, cfg.validation_complexity, cfg.switch_moves,
                              cfg.move_set,
                              base.derive(3, detail::kValidationTag, static_cast<uint64_t>(s)));
  });
  return out;
}

inline nlohmann::json sample_to_json(const LabeledSample& s) {
  return nlohmann::json{
      {"label", s.label.index},
      {"name", s.label.name},
      {"x", s.diagram.xs()},
      {"o", s.diagram.os()},
      {"meta",
       {{"seed_class", s.meta.seed_class},
        {"rng_seed", s.meta.rng_seed},
        {"stab_count", s.meta.stab_count},
        {"switch_count", s.meta.switch_count}}}};
}

inline LabeledSample sample_from_json(const nlohmann::json& j) {
  LabeledSample s{diagram_from_json(j),
                  ClassLabel{j.at("label").get<int>(), j.at("name").get<std::string>()},
                  {}};
  if (j.contains("meta")) {
    const auto& m = j.at("meta");
    s.meta.seed_class = m.value("seed_class", std::string());
    s.meta.rng_seed = m.value("rng_seed", uint64_t{0});
    s.meta.stab_count = m.value("stab_count", 0);
    s.meta.switch_count = m.value("switch_count", 0);
  }
  return s;
}

/// JSONL: one sample per line.
inline void write_jsonl(const std::vector<LabeledSample>& samples, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw GenError("cannot write " + path);
  for (const auto& s : samples) out << sample_to_json(s).dump() << '\n';
  if (!out) throw GenError("failed while writing " + path);
}

inline std::vector<LabeledSample> read_jsonl(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw GenError("cannot read " + path);
  std::vector<LabeledSample> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    out.push_back(sample_from_json(nlohmann::json::parse(line)));
  }
  return out;
}

}  // namespace gridknot
