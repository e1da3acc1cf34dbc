#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "gridknot/generator.hpp"
#include "gridknot/grid_diagram.hpp"
#include "gridknot/linalg.hpp"
#include "gridknot/rng.hpp"
#include "gridknot/util.hpp"

namespace gridknot {

struct LearnerError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class EncodeMode { Normalized, Raw };
enum class OptimizerKind { SGD, Adam };

/// One recurrent direction: four gates with input, recurrent and bias terms.
struct DirParams {
  Mat Wf, Wi, Wo, Wc;  // d x 2
  Mat Uf, Ui, Uo, Uc;  // d x d
  Vec bf, bi, bo, bc;  // d

  explicit DirParams(int d = 0)
      : Wf(d, 2), Wi(d, 2), Wo(d, 2), Wc(d, 2),
        Uf(d, d), Ui(d, d), Uo(d, d), Uc(d, d),
        bf(d, 0.0), bi(d, 0.0), bo(d, 0.0), bc(d, 0.0) {}
};

struct LearnerParams {
  int d = 0;
  int C = 0;
  DirParams fwd, bwd;
  Mat Wfc;  // C x 2d, no bias

  LearnerParams() = default;
  LearnerParams(int d_, int C_) : d(d_), C(C_), fwd(d_), bwd(d_), Wfc(C_, 2 * d_) {}
};

/// Fixed tensor order shared by the optimizer state and serialization.
template <typename F>
void for_each_tensor(LearnerParams& p, F f) {
  for (DirParams* dir : {&p.fwd, &p.bwd}) {
    f(dir->Wf.a); f(dir->Wi.a); f(dir->Wo.a); f(dir->Wc.a);
    f(dir->Uf.a); f(dir->Ui.a); f(dir->Uo.a); f(dir->Uc.a);
    f(dir->bf); f(dir->bi); f(dir->bo); f(dir->bc);
  }
  f(p.Wfc.a);
}

inline void add_params(LearnerParams& acc, const LearnerParams& inc) {
  LearnerParams& inc_mut = const_cast<LearnerParams&>(inc);
  std::vector<std::vector<double>*> a, b;
  for_each_tensor(acc, [&](std::vector<double>& t) { a.push_back(&t); });
  for_each_tensor(inc_mut, [&](std::vector<double>& t) { b.push_back(&t); });
  for (size_t k = 0; k < a.size(); ++k)
    for (size_t i = 0; i < a[k]->size(); ++i) (*a[k])[i] += (*b[k])[i];
}

/// Weights uniform in +-scale (default 1/sqrt(d)), biases zero.
inline LearnerParams init_params(int d, int C, Rng& rng, double scale = 0.0) {
  if (scale <= 0.0) scale = 1.0 / std::sqrt(static_cast<double>(d));
  LearnerParams p(d, C);
  for (DirParams* dir : {&p.fwd, &p.bwd}) {
    for (Mat* m : {&dir->Wf, &dir->Wi, &dir->Wo, &dir->Wc, &dir->Uf, &dir->Ui, &dir->Uo,
                   &dir->Uc}) {
      for (double& v : m->a) v = rng.uniform_real(-scale, scale);
    }
  }
  for (double& v : p.Wfc.a) v = rng.uniform_real(-scale, scale);
  return p;
}

/// One step per horizontal edge: the (x, o) column pair of each row, top to
/// bottom. Normalized mode divides by n, giving coordinates in (0, 1].
inline std::vector<std::array<double, 2>> encode_input(const GridDiagram& d, EncodeMode mode) {
  std::vector<std::array<double, 2>> seq(static_cast<size_t>(d.n()));
  const double scale = mode == EncodeMode::Normalized ? 1.0 / d.n() : 1.0;
  for (int i = 0; i < d.n(); ++i)
    seq[static_cast<size_t>(i)] = {d.xs()[i] * scale, d.os()[i] * scale};
  return seq;
}

struct DirCache {
  std::vector<Vec> f, i, o, g, c, tanh_c, h;
};

struct ForwardCache {
  std::vector<std::array<double, 2>> inputs;
  DirCache fwd, bwd;  // bwd consumed the input sequence in reverse
  Vec pooled;         // 2d: mean forward h, then mean backward h
  Vec z;
  Vec probs;
};

namespace detail {

inline void run_direction(const DirParams& p, int d,
                          const std::vector<std::array<double, 2>>& inputs, bool reversed,
                          DirCache& cache) {
  const int T = static_cast<int>(inputs.size());
  cache.f.assign(T, Vec(d)); cache.i.assign(T, Vec(d)); cache.o.assign(T, Vec(d));
  cache.g.assign(T, Vec(d)); cache.c.assign(T, Vec(d)); cache.tanh_c.assign(T, Vec(d));
  cache.h.assign(T, Vec(d));
  Vec h_prev(d, 0.0), c_prev(d, 0.0);
  Vec zf(d), zi(d), zo(d), zg(d);
  for (int t = 0; t < T; ++t) {
    const auto& u = inputs[static_cast<size_t>(reversed ? T - 1 - t : t)];
    const Vec uv = {u[0], u[1]};
    zf = p.bf; zi = p.bi; zo = p.bo; zg = p.bc;
    matvec_add(p.Wf, uv, zf); matvec_add(p.Uf, h_prev, zf);
    matvec_add(p.Wi, uv, zi); matvec_add(p.Ui, h_prev, zi);
    matvec_add(p.Wo, uv, zo); matvec_add(p.Uo, h_prev, zo);
    matvec_add(p.Wc, uv, zg); matvec_add(p.Uc, h_prev, zg);
    Vec& f = cache.f[t]; Vec& i = cache.i[t]; Vec& o = cache.o[t]; Vec& g = cache.g[t];
    Vec& c = cache.c[t]; Vec& tc = cache.tanh_c[t]; Vec& h = cache.h[t];
    for (int k = 0; k < d; ++k) {
      f[k] = sigmoid(zf[k]);
      i[k] = sigmoid(zi[k]);
      o[k] = sigmoid(zo[k]);
      g[k] = std::tanh(zg[k]);
      c[k] = f[k] * c_prev[k] + i[k] * g[k];
      tc[k] = std::tanh(c[k]);
      h[k] = o[k] * tc[k];
    }
    h_prev = h;
    c_prev = c;
  }
}

}  // namespace detail

/// Bidirectional pass, global average pooling, linear map, softmax.
inline ForwardCache forward(const LearnerParams& p,
                            std::vector<std::array<double, 2>> inputs) {
  if (inputs.empty()) throw LearnerError("empty input sequence");
  const int T = static_cast<int>(inputs.size());
  ForwardCache cache;
  cache.inputs = std::move(inputs);
  detail::run_direction(p.fwd, p.d, cache.inputs, false, cache.fwd);
  detail::run_direction(p.bwd, p.d, cache.inputs, true, cache.bwd);
  cache.pooled.assign(static_cast<size_t>(2 * p.d), 0.0);
  for (int t = 0; t < T; ++t) {
    for (int k = 0; k < p.d; ++k) {
      cache.pooled[static_cast<size_t>(k)] += cache.fwd.h[t][k];
      cache.pooled[static_cast<size_t>(p.d + k)] += cache.bwd.h[t][k];
    }
  }
  for (double& v : cache.pooled) v /= T;
  cache.z.assign(static_cast<size_t>(p.C), 0.0);
  matvec_add(p.Wfc, cache.pooled, cache.z);
  double zmax = cache.z[0];
  for (double v : cache.z) zmax = std::max(zmax, v);
  double denom = 0.0;
  cache.probs.assign(static_cast<size_t>(p.C), 0.0);
  for (int k = 0; k < p.C; ++k) {
    cache.probs[static_cast<size_t>(k)] = std::exp(cache.z[static_cast<size_t>(k)] - zmax);
    denom += cache.probs[static_cast<size_t>(k)];
  }
  for (double& v : cache.probs) v /= denom;
  for (double v : cache.probs)
    if (!std::isfinite(v)) throw LearnerError("non-finite activation");
  return cache;
}

inline Vec predict(const LearnerParams& p, const GridDiagram& d, EncodeMode mode) {
  return forward(p, encode_input(d, mode)).probs;
}

inline int argmax(const Vec& v) {
  int best = 0;
  for (int k = 1; k < static_cast<int>(v.size()); ++k)
    if (v[static_cast<size_t>(k)] > v[static_cast<size_t>(best)]) best = k;
  return best;
}

/// Categorical cross entropy, summed over the batch; log clamped at 1e-12.
inline double loss(const std::vector<Vec>& probs, const std::vector<int>& labels) {
  double total = 0.0;
  for (size_t j = 0; j < probs.size(); ++j)
    total -= std::log(std::max(probs[j][static_cast<size_t>(labels[j])], 1e-12));
  return total;
}

/// Analytic gradients of the summed loss for one sample, accumulated into
/// `grads`.
inline void backward_sample(const LearnerParams& p, const ForwardCache& cache, int label,
                            LearnerParams& grads) {
  const int T = static_cast<int>(cache.inputs.size());
  const int d = p.d;
  Vec dz = cache.probs;
  dz[static_cast<size_t>(label)] -= 1.0;
  outer_add(grads.Wfc, dz, cache.pooled);
  Vec dpooled(static_cast<size_t>(2 * d), 0.0);
  matvec_transpose_add(p.Wfc, dz, dpooled);

  for (int dir_idx = 0; dir_idx < 2; ++dir_idx) {
    const bool reversed = dir_idx == 1;
    const DirParams& dp = reversed ? p.bwd : p.fwd;
    DirParams& gp = reversed ? grads.bwd : grads.fwd;
    const DirCache& dc = reversed ? cache.bwd : cache.fwd;
    Vec dh_pool(d);
    for (int k = 0; k < d; ++k)
      dh_pool[static_cast<size_t>(k)] = dpooled[static_cast<size_t>(dir_idx * d + k)] / T;

    Vec dh_next(d, 0.0), dc_next(d, 0.0);
    Vec dh(d), dcv(d), dzf(d), dzi(d), dzo(d), dzg(d);
    for (int t = T - 1; t >= 0; --t) {
      const Vec& f = dc.f[t]; const Vec& i = dc.i[t]; const Vec& o = dc.o[t];
      const Vec& g = dc.g[t]; const Vec& tc = dc.tanh_c[t];
      const Vec* c_prev = t > 0 ? &dc.c[t - 1] : nullptr;
      const Vec* h_prev = t > 0 ? &dc.h[t - 1] : nullptr;
      for (int k = 0; k < d; ++k) {
        dh[k] = dh_pool[k] + dh_next[k];
        const double do_ = dh[k] * tc[k];
        dcv[k] = dc_next[k] + dh[k] * o[k] * (1.0 - tc[k] * tc[k]);
        const double df = c_prev ? dcv[k] * (*c_prev)[k] : 0.0;
        const double di = dcv[k] * g[k];
        const double dg = dcv[k] * i[k];
        dzf[k] = df * f[k] * (1.0 - f[k]);
        dzi[k] = di * i[k] * (1.0 - i[k]);
        dzo[k] = do_ * o[k] * (1.0 - o[k]);
        dzg[k] = dg * (1.0 - g[k] * g[k]);
      }
      const auto& u = cache.inputs[static_cast<size_t>(reversed ? T - 1 - t : t)];
      const Vec uv = {u[0], u[1]};
      outer_add(gp.Wf, dzf, uv); outer_add(gp.Wi, dzi, uv);
      outer_add(gp.Wo, dzo, uv); outer_add(gp.Wc, dzg, uv);
      if (h_prev) {
        outer_add(gp.Uf, dzf, *h_prev); outer_add(gp.Ui, dzi, *h_prev);
        outer_add(gp.Uo, dzo, *h_prev); outer_add(gp.Uc, dzg, *h_prev);
      }
      add_scaled(gp.bf, dzf, 1.0); add_scaled(gp.bi, dzi, 1.0);
      add_scaled(gp.bo, dzo, 1.0); add_scaled(gp.bc, dzg, 1.0);
      std::fill(dh_next.begin(), dh_next.end(), 0.0);
      matvec_transpose_add(dp.Uf, dzf, dh_next);
      matvec_transpose_add(dp.Ui, dzi, dh_next);
      matvec_transpose_add(dp.Uo, dzo, dh_next);
      matvec_transpose_add(dp.Uc, dzg, dh_next);
      for (int k = 0; k < d; ++k) dc_next[k] = dcv[k] * f[k];
    }
  }
}

/// Gradients of the summed loss for a whole batch of cached forwards.
inline LearnerParams backward(const LearnerParams& p, const std::vector<ForwardCache>& caches,
                              const std::vector<int>& labels) {
  LearnerParams grads(p.d, p.C);
  for (size_t j = 0; j < caches.size(); ++j) backward_sample(p, caches[j], labels[j], grads);
  return grads;
}

// ---------------------------------------------------------------------------
// optimizers

struct AdamState {
  LearnerParams m, v;
  int64_t t = 0;
  AdamState() = default;
  AdamState(int d, int C) : m(d, C), v(d, C) {}
};

inline void sgd_step(LearnerParams& p, const LearnerParams& grads, double lr) {
  LearnerParams& g = const_cast<LearnerParams&>(grads);
  std::vector<std::vector<double>*> pt, gt;
  for_each_tensor(p, [&](std::vector<double>& t) { pt.push_back(&t); });
  for_each_tensor(g, [&](std::vector<double>& t) { gt.push_back(&t); });
  for (size_t k = 0; k < pt.size(); ++k)
    for (size_t i = 0; i < pt[k]->size(); ++i) (*pt[k])[i] -= lr * (*gt[k])[i];
}

inline void adam_step(LearnerParams& p, const LearnerParams& grads, AdamState& state, double lr,
                      double beta1 = 0.9, double beta2 = 0.999, double eps = 1e-8) {
  LearnerParams& g = const_cast<LearnerParams&>(grads);
  state.t += 1;
  const double bc1 = 1.0 - std::pow(beta1, static_cast<double>(state.t));
  const double bc2 = 1.0 - std::pow(beta2, static_cast<double>(state.t));
  std::vector<std::vector<double>*> pt, gt, mt, vt;
  for_each_tensor(p, [&](std::vector<double>& t) { pt.push_back(&t); });
  for_each_tensor(g, [&](std::vector<double>& t) { gt.push_back(&t); });
  for_each_tensor(state.m, [&](std::vector<double>& t) { mt.push_back(&t); });
  for_each_tensor(state.v, [&](std::vector<double>& t) { vt.push_back(&t); });
  for (size_t k = 0; k < pt.size(); ++k) {
    for (size_t i = 0; i < pt[k]->size(); ++i) {
      const double gv = (*gt[k])[i];
      double& m = (*mt[k])[i];
      double& v = (*vt[k])[i];
      m = beta1 * m + (1.0 - beta1) * gv;
      v = beta2 * v + (1.0 - beta2) * gv * gv;
      (*pt[k])[i] -= lr * (m / bc1) / (std::sqrt(v / bc2) + eps);
    }
  }
}

// ---------------------------------------------------------------------------
// training loop

struct TrainConfig {
  int d = 64;
  double lr = 1e-3;
  OptimizerKind optimizer = OptimizerKind::Adam;
  double beta1 = 0.9, beta2 = 0.999, eps = 1e-8;
  int steps = 1000;
  int epoch_size = 100;  // gradient steps per epoch
  uint64_t seed = 0;
  EncodeMode encode = EncodeMode::Normalized;
  double init_scale = 0.0;  // <= 0: 1/sqrt(d)
  int threads = 1;
};

struct EpochStats {
  int epoch = 0;
  int step = 0;
  double train_loss = 0.0;  // mean per sample over the epoch
  double train_acc = 0.0;
  double val_loss = 0.0;  // NaN when no validation set is configured
  double val_acc = 0.0;
};

struct TrainResult {
  LearnerParams params;
  std::vector<EpochStats> history;
};

struct BatchEval {
  double loss_sum = 0.0;
  long long correct = 0;
  long long count = 0;
};

/// Forward + loss over samples; chunk order fixes the summation order.
inline BatchEval evaluate_batch(const LearnerParams& p,
                                const std::vector<LabeledSample>& samples, EncodeMode mode,
                                int threads) {
  const int n = static_cast<int>(samples.size());
  std::vector<double> chunk_loss(kParallelChunks, 0.0);
  std::vector<long long> chunk_correct(kParallelChunks, 0);
  std::atomic<int> chunk_id{0};
  std::vector<std::pair<int, int>> bounds;
  parallel_for_chunked(n, threads, [&](int lo, int hi) {
    const int id = chunk_id.fetch_add(1);
    double lsum = 0.0;
    long long corr = 0;
    for (int s = lo; s < hi; ++s) {
      ForwardCache cache = forward(p, encode_input(samples[static_cast<size_t>(s)].diagram, mode));
      const int label = samples[static_cast<size_t>(s)].label.index;
      lsum -= std::log(std::max(cache.probs[static_cast<size_t>(label)], 1e-12));
      if (argmax(cache.probs) == label) ++corr;
    }
    chunk_loss[static_cast<size_t>(id)] += lsum;
    chunk_correct[static_cast<size_t>(id)] += corr;
  });
  BatchEval ev;
  for (int c = 0; c < kParallelChunks; ++c) {
    ev.loss_sum += chunk_loss[static_cast<size_t>(c)];
    ev.correct += chunk_correct[static_cast<size_t>(c)];
  }
  ev.count = n;
  return ev;
}

// chunk results merged in chunk order so thread count cannot change sums
inline LearnerParams batch_gradients(const LearnerParams& p,
                                     const std::vector<LabeledSample>& samples, EncodeMode mode,
                                     int threads, double* loss_sum, long long* correct) {
  const int n = static_cast<int>(samples.size());
  const int chunks = std::min(kParallelChunks, n);
  std::vector<LearnerParams> partial;
  partial.reserve(static_cast<size_t>(chunks));
  for (int c = 0; c < chunks; ++c) partial.emplace_back(p.d, p.C);
  std::vector<double> chunk_loss(static_cast<size_t>(chunks), 0.0);
  std::vector<long long> chunk_correct(static_cast<size_t>(chunks), 0);
  std::atomic<int> next_chunk{0};
  parallel_for_chunked(n, threads, [&](int lo, int hi) {
    const int id = next_chunk.fetch_add(1);
    LearnerParams& g = partial[static_cast<size_t>(id)];
    for (int s = lo; s < hi; ++s) {
      const auto& sample = samples[static_cast<size_t>(s)];
      ForwardCache cache = forward(p, encode_input(sample.diagram, mode));
      chunk_loss[static_cast<size_t>(id)] -=
          std::log(std::max(cache.probs[static_cast<size_t>(sample.label.index)], 1e-12));
      if (argmax(cache.probs) == sample.label.index) ++chunk_correct[static_cast<size_t>(id)];
      backward_sample(p, cache, sample.label.index, g);
    }
  });
  LearnerParams grads(p.d, p.C);
  for (int c = 0; c < chunks; ++c) add_params(grads, partial[static_cast<size_t>(c)]);
  if (loss_sum) {
    *loss_sum = 0.0;
    for (int c = 0; c < chunks; ++c) *loss_sum += chunk_loss[static_cast<size_t>(c)];
  }
  if (correct) {
    *correct = 0;
    for (int c = 0; c < chunks; ++c) *correct += chunk_correct[static_cast<size_t>(c)];
  }
  return grads;
}

inline TrainResult train(const TrainConfig& tcfg, const GenConfig& gcfg,
                         const ClassRegistry& reg) {
  const auto classes = detail::class_indices(gcfg, reg);
  const int C = static_cast<int>(classes.size());
  Rng init_rng = Rng(tcfg.seed).derive(0xC0FFEE);
  LearnerParams params = init_params(tcfg.d, C, init_rng, tcfg.init_scale);
  AdamState adam(tcfg.d, C);

  std::vector<LabeledSample> val;
  if (gcfg.validation_count > 0) val = make_validation_set(gcfg, reg, tcfg.threads);

  // labels must be batch-local coordinates when training on a class subset
  std::vector<int> class_of_index(reg.size(), -1);
  for (int k = 0; k < C; ++k) class_of_index[static_cast<size_t>(classes[k])] = k;

  auto localize = [&](std::vector<LabeledSample>& samples) {
    for (auto& s : samples) {
      const int local = class_of_index[static_cast<size_t>(s.label.index)];
      if (local < 0) throw LearnerError("sample class outside the training subset");
      s.label.index = local;
    }
  };
  localize(val);

  TrainResult result;
  double epoch_loss = 0.0;
  long long epoch_correct = 0, epoch_count = 0;
  int epoch = 0;
  for (int step = 0; step < tcfg.steps; ++step) {
    std::vector<LabeledSample> batch =
        make_batch(gcfg, reg, static_cast<uint64_t>(step), tcfg.threads);
    localize(batch);
    double loss_sum = 0.0;
    long long correct = 0;
    LearnerParams grads =
        batch_gradients(params, batch, tcfg.encode, tcfg.threads, &loss_sum, &correct);
    if (tcfg.optimizer == OptimizerKind::SGD)
      sgd_step(params, grads, tcfg.lr);
    else
      adam_step(params, grads, adam, tcfg.lr, tcfg.beta1, tcfg.beta2, tcfg.eps);
    epoch_loss += loss_sum;
    epoch_correct += correct;
    epoch_count += static_cast<long long>(batch.size());

    const bool boundary = (step + 1) % tcfg.epoch_size == 0 || step + 1 == tcfg.steps;
    if (boundary) {
      ++epoch;
      EpochStats row;
      row.epoch = epoch;
      row.step = step + 1;
      row.train_loss = epoch_loss / static_cast<double>(epoch_count);
      row.train_acc = static_cast<double>(epoch_correct) / static_cast<double>(epoch_count);
      if (!val.empty()) {
        BatchEval ev = evaluate_batch(params, val, tcfg.encode, tcfg.threads);
        row.val_loss = ev.loss_sum / static_cast<double>(ev.count);
        row.val_acc = static_cast<double>(ev.correct) / static_cast<double>(ev.count);
      } else {
        row.val_loss = std::nan("");
        row.val_acc = std::nan("");
      }
      result.history.push_back(row);
      epoch_loss = 0.0;
      epoch_correct = 0;
      epoch_count = 0;
    }
  }
  result.params = std::move(params);
  return result;
}

// ---------------------------------------------------------------------------
// checkpointing

namespace detail {

inline nlohmann::json mat_to_json(const Mat& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (int r = 0; r < m.rows; ++r) {
    nlohmann::json row = nlohmann::json::array();
    for (int c = 0; c < m.cols; ++c) row.push_back(m.at(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline void mat_from_json(const nlohmann::json& j, Mat& m) {
  if (static_cast<int>(j.size()) != m.rows)
    throw LearnerError("checkpoint matrix row count mismatch");
  for (int r = 0; r < m.rows; ++r) {
    if (static_cast<int>(j[static_cast<size_t>(r)].size()) != m.cols)
      throw LearnerError("checkpoint matrix column count mismatch");
    for (int c = 0; c < m.cols; ++c) m.at(r, c) = j[static_cast<size_t>(r)][static_cast<size_t>(c)].get<double>();
  }
}

inline nlohmann::json dir_to_json(const DirParams& p) {
  return nlohmann::json{
      {"W_f", mat_to_json(p.Wf)}, {"W_i", mat_to_json(p.Wi)}, {"W_o", mat_to_json(p.Wo)},
      {"W_c", mat_to_json(p.Wc)}, {"U_f", mat_to_json(p.Uf)}, {"U_i", mat_to_json(p.Ui)},
      {"U_o", mat_to_json(p.Uo)}, {"U_c", mat_to_json(p.Uc)}, {"b_f", p.bf},
      {"b_i", p.bi}, {"b_o", p.bo}, {"b_c", p.bc}};
}

inline void dir_from_json(const nlohmann::json& j, DirParams& p) {
  mat_from_json(j.at("W_f"), p.Wf); mat_from_json(j.at("W_i"), p.Wi);
  mat_from_json(j.at("W_o"), p.Wo); mat_from_json(j.at("W_c"), p.Wc);
  mat_from_json(j.at("U_f"), p.Uf); mat_from_json(j.at("U_i"), p.Ui);
  mat_from_json(j.at("U_o"), p.Uo); mat_from_json(j.at("U_c"), p.Uc);
  p.bf = j.at("b_f").get<Vec>(); p.bi = j.at("b_i").get<Vec>();
  p.bo = j.at("b_o").get<Vec>(); p.bc = j.at("b_c").get<Vec>();
  for (const Vec* v : {&p.bf, &p.bi, &p.bo, &p.bc})
    if (static_cast<int>(v->size()) != p.Wf.rows)
      throw LearnerError("checkpoint bias size mismatch");
}

}  // namespace detail

struct Checkpoint {
  LearnerParams params;
  EncodeMode encode = EncodeMode::Normalized;
  std::vector<std::string> classes;  // output coordinate order
};

constexpr int kCheckpointVersion = 1;

inline void save_checkpoint(const Checkpoint& ck, const std::string& path) {
  nlohmann::json j{
      {"version", kCheckpointVersion},
      {"config",
       {{"d", ck.params.d},
        {"C", ck.params.C},
        {"encode", ck.encode == EncodeMode::Normalized ? "normalized" : "raw"},
        {"classes", ck.classes}}},
      {"params",
       {{"fwd", detail::dir_to_json(ck.params.fwd)},
        {"bwd", detail::dir_to_json(ck.params.bwd)},
        {"W_fc", detail::mat_to_json(ck.params.Wfc)}}}};
  std::ofstream out(path);
  if (!out) throw LearnerError("cannot write checkpoint: " + path);
  out << j.dump(1) << '\n';
  if (!out) throw LearnerError("failed writing checkpoint: " + path);
}

inline Checkpoint load_checkpoint(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw LearnerError("cannot read checkpoint: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw LearnerError("corrupt checkpoint: " + std::string(e.what()));
  }
  if (!j.contains("version") || j.at("version").get<int>() != kCheckpointVersion)
    throw LearnerError("unsupported checkpoint version");
  const auto& cfg = j.at("config");
  Checkpoint ck;
  ck.params = LearnerParams(cfg.at("d").get<int>(), cfg.at("C").get<int>());
  ck.encode = cfg.at("encode").get<std::string>() == "raw" ? EncodeMode::Raw
                                                           : EncodeMode::Normalized;
  ck.classes = cfg.value("classes", std::vector<std::string>{});
  const auto& params = j.at("params");
  detail::dir_from_json(params.at("fwd"), ck.params.fwd);
  detail::dir_from_json(params.at("bwd"), ck.params.bwd);
  detail::mat_from_json(params.at("W_fc"), ck.params.Wfc);
  return ck;
}

inline void write_history_csv(const std::vector<EpochStats>& history, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw LearnerError("cannot write " + path);
  out << "epoch,step,train_loss,train_acc,val_loss,val_acc\n";
  for (const auto& row : history) {
    out << row.epoch << ',' << row.step << ',' << row.train_loss << ',' << row.train_acc << ',';
    if (std::isnan(row.val_loss))
      out << ',';
    else
      out << row.val_loss << ',';
    if (!std::isnan(row.val_acc)) out << row.val_acc;
    out << '\n';
  }
}

}  // namespace gridknot
