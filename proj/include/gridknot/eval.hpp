#pragma once

#include <fstream>
#include <string>
#include <vector>

#include "gridknot/generator.hpp"
#include "gridknot/learner.hpp"
#include "gridknot/moves.hpp"

namespace gridknot {

struct EvalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ClassificationReport {
  std::vector<double> precision, recall, f1;
  std::vector<long long> support;
  double accuracy = 0.0;
};

struct ConfusionMatrix {
  int C = 0;
  std::vector<long long> counts;  // row: true class, column: predicted

  long long& at(int i, int j) { return counts[static_cast<size_t>(i) * C + j]; }
  long long at(int i, int j) const { return counts[static_cast<size_t>(i) * C + j]; }
};

inline ConfusionMatrix confusion(const std::vector<int>& predictions,
                                 const std::vector<int>& labels, int C) {
  if (predictions.size() != labels.size()) throw EvalError("length mismatch");
  ConfusionMatrix cm;
  cm.C = C;
  cm.counts.assign(static_cast<size_t>(C) * C, 0);
  for (size_t k = 0; k < labels.size(); ++k) cm.at(labels[k], predictions[k]) += 1;
  return cm;
}

/// Entries strictly greater than the threshold become true.
inline std::vector<bool> binarize(const ConfusionMatrix& cm, long long threshold = 40) {
  std::vector<bool> out(cm.counts.size());
  for (size_t k = 0; k < cm.counts.size(); ++k) out[k] = cm.counts[k] > threshold;
  return out;
}

/// Per-class precision/recall/f1 with a zero-denominator convention of 0.
inline ClassificationReport report(const std::vector<int>& predictions,
                                   const std::vector<int>& labels, int C) {
  if (predictions.empty()) throw EvalError("empty input");
  ConfusionMatrix cm = confusion(predictions, labels, C);
  ClassificationReport rep;
  rep.precision.assign(static_cast<size_t>(C), 0.0);
  rep.recall.assign(static_cast<size_t>(C), 0.0);
  rep.f1.assign(static_cast<size_t>(C), 0.0);
  rep.support.assign(static_cast<size_t>(C), 0);
  long long correct = 0;
  for (int i = 0; i < C; ++i) {
    long long tp = cm.at(i, i);
    long long row = 0, col = 0;
    for (int j = 0; j < C; ++j) {
      row += cm.at(i, j);
      col += cm.at(j, i);
    }
    rep.support[static_cast<size_t>(i)] = row;
    correct += tp;
    const double precision = col > 0 ? static_cast<double>(tp) / col : 0.0;
    const double recall = row > 0 ? static_cast<double>(tp) / row : 0.0;
    rep.precision[static_cast<size_t>(i)] = precision;
    rep.recall[static_cast<size_t>(i)] = recall;
    rep.f1[static_cast<size_t>(i)] =
        precision + recall > 0 ? 2.0 * precision * recall / (precision + recall) : 0.0;
  }
  rep.accuracy = static_cast<double>(correct) / static_cast<double>(labels.size());
  return rep;
}

/// Test-time augmentation: perturb one switch move at a time, predict after
/// each move, return the running mean of the j predictions.
inline Vec tta_predict(const LearnerParams& params, const GridDiagram& d, int j, Rng& rng,
                       MoveSet move_set, EncodeMode mode) {
  if (j < 1) throw EvalError("tta needs at least one step");
  Vec mean(static_cast<size_t>(params.C), 0.0);
  GridDiagram current = d;
  for (int k = 0; k < j; ++k) {
    current = scramble(current, rng, 1, move_set);
    Vec probs = predict(params, current, mode);
    for (size_t c = 0; c < mean.size(); ++c) mean[c] += probs[c];
  }
  for (double& v : mean) v /= j;
  return mean;
}

struct SweepRow {
  int complexity = 0;
  int moves = 0;  // total switch moves applied before measuring
  double accuracy = 0.0;
};

/// Accuracy as diagrams are complicated further: for each complexity,
/// generate a test set, apply `warmup` switch moves, then measure every
/// `step` moves, `probes` measurements in total.
inline std::vector<SweepRow> sweep_accuracy_vs_moves(
    const LearnerParams& params, const ClassRegistry& reg, const GenConfig& gcfg,
    const std::vector<int>& complexities, int warmup, int step, int probes,
    int samples_per_complexity, EncodeMode mode, int threads = 1) {
  std::vector<SweepRow> rows;
  if (probes <= 0) return rows;
  const auto classes = detail::class_indices(gcfg, reg);
  std::vector<int> class_of_index(reg.size(), -1);
  for (int k = 0; k < static_cast<int>(classes.size()); ++k)
    class_of_index[static_cast<size_t>(classes[k])] = k;
  for (int complexity : complexities) {
    GenConfig cfg = gcfg;
    cfg.validation_complexity = complexity;
    cfg.validation_count = samples_per_complexity;
    cfg.seed = Rng(gcfg.seed).derive(4, static_cast<uint64_t>(complexity)).seed();
    std::vector<LabeledSample> set = make_validation_set(cfg, reg, threads);
    std::vector<Rng> streams;
    for (int s = 0; s < samples_per_complexity; ++s)
      streams.push_back(Rng(cfg.seed).derive(5, static_cast<uint64_t>(s)));
    for (int s = 0; s < samples_per_complexity; ++s)
      set[static_cast<size_t>(s)].diagram =
          scramble(set[static_cast<size_t>(s)].diagram, streams[static_cast<size_t>(s)], warmup,
                   cfg.move_set);
    for (int probe = 0; probe < probes; ++probe) {
      if (probe > 0) {
        for (int s = 0; s < samples_per_complexity; ++s)
          set[static_cast<size_t>(s)].diagram =
              scramble(set[static_cast<size_t>(s)].diagram, streams[static_cast<size_t>(s)],
                       step, cfg.move_set);
      }
      long long correct = 0;
      for (int s = 0; s < samples_per_complexity; ++s) {
        const auto& sample = set[static_cast<size_t>(s)];
        const int local = class_of_index[static_cast<size_t>(sample.label.index)];
        if (argmax(predict(params, sample.diagram, mode)) == local) ++correct;
      }
      rows.push_back(SweepRow{complexity, warmup + probe * step,
                              static_cast<double>(correct) / samples_per_complexity});
    }
  }
  return rows;
}

struct PairedCurves {
  std::vector<EpochStats> internal_only;
  std::vector<EpochStats> with_external;
};

/// Trains two models whose configs differ only in the move set.
inline PairedCurves internal_vs_external(const TrainConfig& tcfg, const GenConfig& gcfg,
                                         const ClassRegistry& reg) {
  GenConfig internal = gcfg;
  internal.move_set = MoveSet::InternalOnly;
  GenConfig external = gcfg;
  external.move_set = MoveSet::WithExternal;
  PairedCurves curves;
  curves.internal_only = train(tcfg, internal, reg).history;
  curves.with_external = train(tcfg, external, reg).history;
  return curves;
}

inline void write_report_csv(const ClassificationReport& rep,
                             const std::vector<std::string>& names, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw EvalError("cannot write " + path);
  out << "class,precision,recall,f1,support\n";
  for (size_t i = 0; i < rep.precision.size(); ++i) {
    out << (i < names.size() ? names[i] : std::to_string(i)) << ',' << rep.precision[i] << ','
        << rep.recall[i] << ',' << rep.f1[i] << ',' << rep.support[i] << '\n';
  }
  out << "accuracy," << rep.accuracy << ",,,\n";
}

inline void write_confusion_csv(const ConfusionMatrix& cm, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw EvalError("cannot write " + path);
  for (int i = 0; i < cm.C; ++i) {
    for (int j = 0; j < cm.C; ++j) {
      if (j) out << ',';
      out << cm.at(i, j);
    }
    out << '\n';
  }
}

inline void write_sweep_csv(const std::vector<SweepRow>& rows, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw EvalError("cannot write " + path);
  out << "complexity,moves,accuracy\n";
  for (const auto& r : rows) out << r.complexity << ',' << r.moves << ',' << r.accuracy << '\n';
}

}  // namespace gridknot
