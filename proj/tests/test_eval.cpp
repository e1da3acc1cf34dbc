#include <catch2/catch_amalgamated.hpp>
#include <cmath>

#include "gridknot/eval.hpp"
#include "helpers.hpp"

using namespace gridknot;

TEST_CASE("perfect predictions give unit scores") {
  std::vector<int> labels = {0, 1, 2, 1, 0, 2};
  ClassificationReport rep = report(labels, labels, 3);
  CHECK(rep.accuracy == 1.0);
  for (int c = 0; c < 3; ++c) {
    CHECK(rep.precision[c] == 1.0);
    CHECK(rep.recall[c] == 1.0);
    CHECK(rep.f1[c] == 1.0);
  }
}

TEST_CASE("report reproduces the published unknot precision and recall") {
  // class 0 with TP=1596, FP=304, FN=84: precision 0.84, recall 0.95 exactly
  std::vector<int> labels, preds;
  for (int i = 0; i < 1596; ++i) { labels.push_back(0); preds.push_back(0); }
  for (int i = 0; i < 304; ++i) { labels.push_back(1); preds.push_back(0); }
  for (int i = 0; i < 84; ++i) { labels.push_back(0); preds.push_back(1); }
  for (int i = 0; i < 500; ++i) { labels.push_back(1); preds.push_back(1); }
  ClassificationReport rep = report(preds, labels, 2);
  CHECK(rep.precision[0] == Catch::Approx(0.84).epsilon(1e-12));
  CHECK(rep.recall[0] == Catch::Approx(0.95).epsilon(1e-12));
  const double f1 = 2 * 0.84 * 0.95 / (0.84 + 0.95);
  CHECK(rep.f1[0] == Catch::Approx(f1).epsilon(1e-12));
  CHECK(rep.support[0] == 1680);
}

TEST_CASE("zero-denominator classes score zero") {
  std::vector<int> labels = {0, 0, 1};
  std::vector<int> preds = {0, 0, 0};  // class 1 never predicted, class 2 absent
  ClassificationReport rep = report(preds, labels, 3);
  CHECK(rep.precision[1] == 0.0);
  CHECK(rep.recall[1] == 0.0);
  CHECK(rep.f1[1] == 0.0);
  CHECK(rep.precision[2] == 0.0);
  CHECK(rep.support[2] == 0);
}

TEST_CASE("empty inputs are rejected") {
  CHECK_THROWS_AS(report({}, {}, 3), EvalError);
}

TEST_CASE("confusion matrix identities against a brute-force recount") {
  Rng rng(606);
  for (int trial = 0; trial < 50; ++trial) {
    const int C = rng.uniform_int(2, 8);
    const int N = rng.uniform_int(1, 200);
    std::vector<int> labels, preds;
    for (int i = 0; i < N; ++i) {
      labels.push_back(static_cast<int>(rng.below(C)));
      preds.push_back(static_cast<int>(rng.below(C)));
    }
    ConfusionMatrix cm = confusion(preds, labels, C);
    ClassificationReport rep = report(preds, labels, C);
    long long total = 0, diag = 0;
    for (int i = 0; i < C; ++i) {
      long long row = 0;
      for (int j = 0; j < C; ++j) {
        total += cm.at(i, j);
        row += cm.at(i, j);
      }
      diag += cm.at(i, i);
      CHECK(row == rep.support[i]);
      if (row > 0)
        CHECK(rep.recall[i] == Catch::Approx(static_cast<double>(cm.at(i, i)) / row));
    }
    CHECK(total == N);
    CHECK(rep.accuracy == Catch::Approx(static_cast<double>(diag) / total));
    // brute recount of one cell
    const int ci = static_cast<int>(rng.below(C));
    const int cj = static_cast<int>(rng.below(C));
    long long manual = 0;
    for (int i = 0; i < N; ++i)
      if (labels[i] == ci && preds[i] == cj) ++manual;
    CHECK(cm.at(ci, cj) == manual);
  }
}

TEST_CASE("binarize marks entries above the threshold") {
  ConfusionMatrix cm;
  cm.C = 2;
  cm.counts = {41, 40, 0, 100};
  auto bits = binarize(cm);  // default threshold 40
  CHECK(bits == std::vector<bool>{true, false, false, true});
  ConfusionMatrix zeros;
  zeros.C = 2;
  zeros.counts = {0, 0, 0, 0};
  auto none = binarize(zeros);
  CHECK(none == std::vector<bool>{false, false, false, false});
}

TEST_CASE("tta outputs stay on the probability simplex") {
  Rng rng(11);
  LearnerParams p = init_params(8, 4, rng);
  GridDiagram d = testutil::random_diagram(8, rng);
  for (int j : {1, 5, 20}) {
    Rng tta_rng(1000 + j);
    Vec probs = tta_predict(p, d, j, tta_rng, MoveSet::WithExternal, EncodeMode::Normalized);
    double sum = 0.0;
    for (double v : probs) {
      CHECK(v >= 0.0);
      sum += v;
    }
    CHECK(std::abs(sum - 1.0) <= 1e-9);
  }
}

TEST_CASE("tta with one step predicts the once-perturbed diagram") {
  Rng rng(21);
  LearnerParams p = init_params(6, 3, rng);
  GridDiagram d = testutil::random_diagram(7, rng);
  Rng a(5), b(5);
  Vec via_tta = tta_predict(p, d, 1, a, MoveSet::InternalOnly, EncodeMode::Normalized);
  GridDiagram moved = scramble(d, b, 1, MoveSet::InternalOnly);
  Vec direct = predict(p, moved, EncodeMode::Normalized);
  REQUIRE(via_tta.size() == direct.size());
  for (size_t k = 0; k < direct.size(); ++k)
    CHECK(via_tta[k] == Catch::Approx(direct[k]).margin(1e-15));
}

TEST_CASE("averaging identical predictions returns that prediction") {
  // zero parameters predict uniformly for every input, so the mean equals it
  LearnerParams p(4, 3);
  GridDiagram d = testutil::trivial_diagram();
  Rng rng(3);
  Vec probs = tta_predict(p, d, 10, rng, MoveSet::InternalOnly, EncodeMode::Normalized);
  for (double v : probs) CHECK(v == Catch::Approx(1.0 / 3).epsilon(1e-12));
}

TEST_CASE("sweep with zero probes is empty") {
  LearnerParams p(4, 2);
  GenConfig cfg;
  cfg.classes = {"0_1", "3_1"};
  cfg.seed = 5;
  auto rows = sweep_accuracy_vs_moves(p, ClassRegistry::load_default(), cfg, {8, 9}, 10, 5, 0,
                                      4, EncodeMode::Normalized);
  CHECK(rows.empty());
}

TEST_CASE("sweep emits one row per complexity and probe, deterministically") {
  Rng rng(8);
  LearnerParams p = init_params(4, 2, rng);
  GenConfig cfg;
  cfg.classes = {"0_1", "3_1"};
  cfg.switch_moves = 5;
  cfg.seed = 5;
  const auto& reg = ClassRegistry::load_default();
  auto rows = sweep_accuracy_vs_moves(p, reg, cfg, {8, 10}, 6, 3, 2, 5, EncodeMode::Normalized);
  REQUIRE(rows.size() == 4);
  CHECK(rows[0].complexity == 8);
  CHECK(rows[0].moves == 6);
  CHECK(rows[1].moves == 9);
  CHECK(rows[2].complexity == 10);
  auto again = sweep_accuracy_vs_moves(p, reg, cfg, {8, 10}, 6, 3, 2, 5, EncodeMode::Normalized);
  for (size_t i = 0; i < rows.size(); ++i) {
    CHECK(rows[i].accuracy == again[i].accuracy);
    CHECK(rows[i].moves == again[i].moves);
  }
}
