#include <catch2/catch_amalgamated.hpp>
#include <cmath>

#include "gridknot/learner.hpp"
#include "helpers.hpp"

using namespace gridknot;
using testutil::fig1_diagram;
using testutil::trivial_diagram;

namespace {

// independent oracle: central finite differences through the full forward
double loss_at(LearnerParams& p, const std::vector<std::vector<std::array<double, 2>>>& seqs,
               const std::vector<int>& labels) {
  std::vector<Vec> probs;
  for (const auto& s : seqs) probs.push_back(forward(p, s).probs);
  return loss(probs, labels);
}

struct GradCheckResult {
  double max_rel_err = 0.0;
  int checked = 0;
};

GradCheckResult finite_difference_check(int d, int T, int C, uint64_t seed) {
  Rng rng(seed);
  LearnerParams p = init_params(d, C, rng);
  std::vector<std::vector<std::array<double, 2>>> seqs;
  std::vector<int> labels;
  for (int s = 0; s < 2; ++s) {
    std::vector<std::array<double, 2>> seq;
    for (int t = 0; t < T; ++t)
      seq.push_back({rng.uniform_real(0.0, 1.0), rng.uniform_real(0.0, 1.0)});
    seqs.push_back(seq);
    labels.push_back(static_cast<int>(rng.below(static_cast<uint64_t>(C))));
  }
  std::vector<ForwardCache> caches;
  for (const auto& s : seqs) caches.push_back(forward(p, s));
  LearnerParams analytic = backward(p, caches, labels);

  GradCheckResult result;
  const double h = 1e-5;
  std::vector<std::vector<double>*> pt, gt;
  for_each_tensor(p, [&](std::vector<double>& t) { pt.push_back(&t); });
  for_each_tensor(analytic, [&](std::vector<double>& t) { gt.push_back(&t); });
  for (size_t k = 0; k < pt.size(); ++k) {
    // full sweep per tensor; relative error taken in the vector norm so
    // coordinates with near-zero gradient do not inflate roundoff noise
    double diff2 = 0.0, num2 = 0.0, ana2 = 0.0;
    for (size_t i = 0; i < pt[k]->size(); ++i) {
      const double orig = (*pt[k])[i];
      (*pt[k])[i] = orig + h;
      const double up = loss_at(p, seqs, labels);
      (*pt[k])[i] = orig - h;
      const double down = loss_at(p, seqs, labels);
      (*pt[k])[i] = orig;
      const double numeric = (up - down) / (2 * h);
      const double analytic_v = (*gt[k])[i];
      diff2 += (numeric - analytic_v) * (numeric - analytic_v);
      num2 += numeric * numeric;
      ana2 += analytic_v * analytic_v;
      ++result.checked;
    }
    const double denom = std::max({std::sqrt(num2), std::sqrt(ana2), 1e-8});
    result.max_rel_err = std::max(result.max_rel_err, std::sqrt(diff2) / denom);
  }
  return result;
}

}  // namespace

TEST_CASE("encode_input normalizes coordinates by the grid size") {
  auto seq = encode_input(trivial_diagram(), EncodeMode::Normalized);
  REQUIRE(seq.size() == 2);
  CHECK(seq[0][0] == Catch::Approx(0.5));
  CHECK(seq[0][1] == Catch::Approx(1.0));
  CHECK(seq[1][0] == Catch::Approx(1.0));
  CHECK(seq[1][1] == Catch::Approx(0.5));

  auto fig1 = encode_input(fig1_diagram(), EncodeMode::Normalized);
  REQUIRE(fig1.size() == 9);
  CHECK(fig1[0][0] == Catch::Approx(3.0 / 9));
  CHECK(fig1[0][1] == Catch::Approx(1.0 / 9));

  auto raw = encode_input(trivial_diagram(), EncodeMode::Raw);
  CHECK(raw[0][0] == 1.0);
  CHECK(raw[1][1] == 1.0);
}

TEST_CASE("zero parameters give the uniform distribution") {
  LearnerParams p(8, 5);
  auto probs = forward(p, encode_input(fig1_diagram(), EncodeMode::Normalized)).probs;
  double sum = 0.0;
  for (double v : probs) {
    CHECK(v == Catch::Approx(0.2).epsilon(1e-12));
    sum += v;
  }
  CHECK(sum == Catch::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("softmax outputs are a probability vector") {
  Rng rng(77);
  LearnerParams p = init_params(16, 7, rng);
  for (int trial = 0; trial < 20; ++trial) {
    GridDiagram d = testutil::random_diagram(rng.uniform_int(2, 20), rng);
    auto cache = forward(p, encode_input(d, EncodeMode::Normalized));
    double sum = 0.0;
    for (double v : cache.probs) {
      CHECK(v >= 0.0);
      sum += v;
    }
    CHECK(std::abs(sum - 1.0) <= 1e-9);
    for (int t = 0; t < d.n(); ++t)
      for (int k = 0; k < p.d; ++k) {
        CHECK(cache.fwd.f[t][k] > 0.0);
        CHECK(cache.fwd.f[t][k] < 1.0);
        CHECK(std::abs(cache.fwd.h[t][k]) < 1.0);
      }
  }
}

TEST_CASE("loss matches hand arithmetic") {
  Vec uniform(36, 1.0 / 36);
  CHECK(loss({uniform}, {7}) == Catch::Approx(std::log(36.0)).epsilon(1e-12));
  Vec onehot(4, 0.0);
  onehot[2] = 1.0;
  CHECK(loss({onehot}, {2}) == Catch::Approx(0.0).margin(1e-12));
  CHECK(loss({uniform, uniform}, {3, 9}) ==
        Catch::Approx(2 * std::log(36.0)).epsilon(1e-12));
}

TEST_CASE("analytic gradients match central finite differences") {
  for (int T : {1, 3, 7}) {
    auto result = finite_difference_check(4, T, 3, 424200 + T);
    INFO("T = " << T << ", checked " << result.checked << " coordinates");
    CHECK(result.max_rel_err <= 1e-4);
  }
}

TEST_CASE("forget-gate bias gradient vanishes for single-step sequences") {
  Rng rng(9001);
  LearnerParams p = init_params(4, 3, rng);
  std::vector<std::array<double, 2>> seq = {{0.3, 0.7}};
  ForwardCache cache = forward(p, seq);
  LearnerParams grads = backward(p, {cache}, {1});
  for (double v : grads.fwd.bf) CHECK(v == 0.0);  // c_0 = 0 kills the f path
  for (double v : grads.bwd.bf) CHECK(v == 0.0);
}

TEST_CASE("one SGD step on a fixed batch reduces the loss") {
  Rng rng(512);
  LearnerParams p = init_params(8, 4, rng);
  std::vector<std::vector<std::array<double, 2>>> seqs;
  std::vector<int> labels;
  for (int s = 0; s < 6; ++s) {
    std::vector<std::array<double, 2>> seq;
    for (int t = 0; t < 5; ++t)
      seq.push_back({rng.uniform_real(0.0, 1.0), rng.uniform_real(0.0, 1.0)});
    seqs.push_back(seq);
    labels.push_back(static_cast<int>(rng.below(4)));
  }
  std::vector<ForwardCache> caches;
  for (const auto& s : seqs) caches.push_back(forward(p, s));
  const double before = loss_at(p, seqs, labels);
  LearnerParams grads = backward(p, caches, labels);
  sgd_step(p, grads, 1e-3);
  CHECK(loss_at(p, seqs, labels) < before);
}

TEST_CASE("optimizer steps follow the update rules") {
  LearnerParams p(2, 2);
  LearnerParams zero(2, 2);
  LearnerParams snapshot = p;
  sgd_step(p, zero, 0.5);
  CHECK(p.Wfc.a == snapshot.Wfc.a);

  // SGD with unit learning rate subtracts the gradient verbatim
  LearnerParams g(2, 2);
  g.Wfc.at(0, 0) = 2.5;
  sgd_step(p, g, 1.0);
  CHECK(p.Wfc.at(0, 0) == Catch::Approx(-2.5));

  // Adam's first bias-corrected step has magnitude ~lr against the gradient sign
  LearnerParams q(2, 2);
  AdamState state(2, 2);
  LearnerParams cg(2, 2);
  cg.Wfc.at(0, 0) = 3.0;
  cg.Wfc.at(1, 1) = -0.25;
  adam_step(q, cg, state, 0.01);
  CHECK(q.Wfc.at(0, 0) == Catch::Approx(-0.01).epsilon(1e-4));
  CHECK(q.Wfc.at(1, 1) == Catch::Approx(0.01).epsilon(1e-4));

  AdamState fresh(2, 2);
  LearnerParams r(2, 2);
  adam_step(r, zero, fresh, 0.01);
  CHECK(r.Wfc.at(0, 0) == Catch::Approx(0.0).margin(1e-12));
}

TEST_CASE("checkpoints round trip exactly") {
  Rng rng(31337);
  Checkpoint ck;
  ck.params = init_params(6, 4, rng);
  ck.encode = EncodeMode::Normalized;
  ck.classes = {"0_1", "3_1", "4_1", "5_1"};
  const std::string path = "checkpoint_test.json";
  save_checkpoint(ck, path);
  Checkpoint back = load_checkpoint(path);
  CHECK(back.params.d == 6);
  CHECK(back.params.C == 4);
  CHECK(back.classes == ck.classes);
  CHECK(back.params.Wfc.a == ck.params.Wfc.a);
  CHECK(back.params.fwd.Uf.a == ck.params.fwd.Uf.a);
  CHECK(back.params.bwd.bc == ck.params.bwd.bc);
  auto probs_a = predict(ck.params, fig1_diagram(), ck.encode);
  auto probs_b = predict(back.params, fig1_diagram(), back.encode);
  CHECK(probs_a == probs_b);
  std::remove(path.c_str());

  std::ofstream bad("checkpoint_bad.json");
  bad << "{\"version\": 99}";
  bad.close();
  CHECK_THROWS_AS(load_checkpoint("checkpoint_bad.json"), LearnerError);
  std::remove("checkpoint_bad.json");
  CHECK_THROWS_AS(load_checkpoint("missing_checkpoint.json"), LearnerError);
}

TEST_CASE("batch gradients are independent of thread count") {
  Rng rng(5150);
  LearnerParams p = init_params(6, 3, rng);
  // fabricate a tiny sample set
  std::vector<LabeledSample> samples;
  for (int s = 0; s < 9; ++s) {
    GridDiagram d = testutil::random_diagram(6, rng);
    samples.push_back(LabeledSample{d, ClassLabel{s % 3, "c"}, {}});
  }
  double loss1 = 0.0, loss2 = 0.0;
  long long c1 = 0, c2 = 0;
  LearnerParams g1 = batch_gradients(p, samples, EncodeMode::Normalized, 1, &loss1, &c1);
  LearnerParams g2 = batch_gradients(p, samples, EncodeMode::Normalized, 2, &loss2, &c2);
  CHECK(loss1 == loss2);
  CHECK(c1 == c2);
  CHECK(g1.Wfc.a == g2.Wfc.a);
  CHECK(g1.fwd.Uf.a == g2.fwd.Uf.a);
}
