// Copyright 2026 The Hearings Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <numeric>
#include <set>

#include "doctest.h"
#include "hearings/party_models.hpp"
#include "test_support.hpp"

using namespace hearings;
using hearings::testing::holdout_accuracy;
using hearings::testing::noise_dataset;
using hearings::testing::separable_dataset;

namespace {

ForestHyper small_forest(std::uint64_t seed) {
  ForestHyper h;
  h.n_estimators = 25;
  h.seed = seed;
  return h;
}

}  // namespace

TEST_SUITE("party_models") {

TEST_CASE("task classes") {
  CHECK(task_classes(LabelTask::Affiliation) == std::vector<std::string>{"D", "R", "I"});
  CHECK(task_classes(LabelTask::Standing) == std::vector<std::string>{"M", "m"});
  Person p;
  p.role = Role::Member;
  p.party = Party::Independent;
  CHECK(class_of(LabelTask::Affiliation, p) == std::optional<int>(2));
  CHECK_FALSE(class_of(LabelTask::Standing, p).has_value());
  p.standing = Standing::Minority;
  CHECK(class_of(LabelTask::Standing, p) == std::optional<int>(1));
  p.role = Role::Witness;
  CHECK_FALSE(class_of(LabelTask::Affiliation, p).has_value());
}

TEST_CASE("majority baseline ties go to the smaller class index") {
  const std::vector<int> tie{1, 0, 1, 0};
  CHECK(majority_baseline(tie, 2).label == 0);
  CHECK(majority_baseline(tie, 2).accuracy == 0.5);
  const std::vector<int> skew{2, 2, 1};
  CHECK(majority_baseline(skew, 3).label == 2);
  CHECK(majority_baseline(skew, 3).accuracy == doctest::Approx(2.0 / 3.0));
}

TEST_CASE("imputer uses train medians") {
  Dataset d;
  d.task = LabelTask::Standing;
  d.feature_names = {"a", "b"};
  d.rows = {{"1", {1.0, std::nullopt}, 0, {}},
            {"2", {std::nullopt, std::nullopt}, 1, {}},
            {"3", {5.0, std::nullopt}, 0, {}},
            {"4", {3.0, std::nullopt}, 1, {}}};
  const auto imp = Imputer::fit(d);
  CHECK(imp.medians == std::vector<double>{3.0, 0.0});
  CHECK(imp.apply(d.rows[1].x) == std::vector<double>{3.0, 0.0});
  d.rows[0].label = 7;
  CHECK_THROWS_AS(d.validate(), ValidationError);
}

TEST_CASE("name stripping") {
  Person p;
  p.person_id = "m";
  p.display_name = "Elijah Cummings";
  p.surname = "Cummings";
  p.role = Role::Member;
  p.party = Party::Democrat;
  const std::vector<std::string> directory{"Jim Jordan"};
  const NameStripper s({p}, directory);
  const std::string ph(kNamePlaceholder);
  CHECK(s.strip("Mr. CUMMINGS asked Elijah Cummings and jordan.") ==
        "Mr. " + ph + " asked " + ph + " and " + ph + ".");
  CHECK(s.strip("Cummingsville stays") == "Cummingsville stays");
  for (std::string_view text : {"Jim Jordan, Jordan; and Mr. Cummings", "nothing to do"}) {
    const std::string once = s.strip(text);
    CHECK(s.strip(once) == once);
  }
  CHECK(strip_speaker_names("jim jordan", {p}, directory) == ph);
}

TEST_CASE("forest fits a separable problem perfectly") {
  const auto train = separable_dataset(300, 1);
  const auto test = separable_dataset(200, 2);
  const auto model = train_forest(train, small_forest(7));
  CHECK(holdout_accuracy(model, train) == 1.0);
  CHECK(holdout_accuracy(model, test) >= 0.95);
}

TEST_CASE("forest is deterministic in the seed and independent of threads") {
  const auto train = separable_dataset(200, 3);
  const auto test = separable_dataset(100, 4);
  const auto a = train_forest(train, small_forest(11), 1);
  const auto b = train_forest(train, small_forest(11), 3);
  CHECK(a.to_json_text() == b.to_json_text());
  CHECK(predict_forest(a, test) == predict_forest(b, test));
  const auto c = train_forest(train, small_forest(12), 1);
  CHECK(c.to_json_text() != a.to_json_text());
}

TEST_CASE("forest model JSON round trip and validation") {
  const auto model = train_forest(separable_dataset(80, 5), small_forest(3));
  hearings::testing::TempDir dir;
  model.save(dir / "m.json");
  const auto back = ForestModel::load(dir / "m.json");
  CHECK(back.to_json_text() == model.to_json_text());
  const std::vector<double> row{0.1, 0.2, 0.3, 0.4};
  CHECK(predict_forest(back, row).probabilities == predict_forest(model, row).probabilities);
  const std::vector<double> short_row{0.1};
  CHECK_THROWS_AS(predict_forest(model, short_row), ValidationError);
  CHECK_THROWS_AS(ForestModel::from_json_text("{\"format\":\"hearings-forest\"}", "m.json"),
                  ValidationError);
}

TEST_CASE("forest needs two classes") {
  auto d = separable_dataset(40, 6);
  for (auto& r : d.rows) r.label = 0;
  CHECK_THROWS_AS(train_forest(d, small_forest(1)), ValidationError);
}

TEST_CASE("leaf distributions and predictions are probabilities") {
  const auto model = train_forest(separable_dataset(120, 8), small_forest(2));
  for (const auto& tree : model.trees) {
    for (const auto& node : tree.nodes) {
      if (node.feature >= 0) continue;
      CHECK(std::accumulate(node.distribution.begin(), node.distribution.end(), 0.0) ==
            doctest::Approx(1.0));
    }
  }
  const auto p = predict_forest(model, std::vector<double>{0.9, 0.9, 0.5, 0.5});
  CHECK(p.label == 1);
  CHECK(std::accumulate(p.probabilities.begin(), p.probabilities.end(), 0.0) ==
        doctest::Approx(1.0));
}

TEST_CASE("impurity importances are normalized and favour the signal") {
  const auto model = train_forest(separable_dataset(300, 9), small_forest(4));
  const auto imp = feature_importance(model, nullptr, ImportanceMode::Impurity, 1);
  double total = 0.0;
  for (const auto& [name, v] : imp) total += v;
  CHECK(std::abs(total - 1.0) < 1e-9);
  std::map<std::string, double> by_name(imp.begin(), imp.end());
  CHECK(by_name["x0"] > by_name["noise0"]);
  CHECK(by_name["x1"] > by_name["noise1"]);
}

TEST_CASE("permutation importance needs validation data") {
  const auto train = separable_dataset(200, 10);
  const auto valid = separable_dataset(100, 11);
  const auto model = train_forest(train, small_forest(5));
  CHECK_THROWS_AS(feature_importance(model, nullptr, ImportanceMode::Permutation, 1),
                  ValidationError);
  const auto imp = feature_importance(model, &valid, ImportanceMode::Permutation, 1);
  std::map<std::string, double> by_name(imp.begin(), imp.end());
  CHECK(by_name["x0"] > 0.05);
  CHECK(std::abs(by_name["noise0"]) < by_name["x0"]);
  CHECK(imp == feature_importance(model, &valid, ImportanceMode::Permutation, 1));
}

TEST_CASE("random labels give chance accuracy") {
  double sum = 0.0;
  for (std::uint64_t s = 0; s < 5; ++s) {
    const auto model = train_forest(noise_dataset(300, 100 + s), small_forest(s));
    sum += holdout_accuracy(model, noise_dataset(300, 200 + s));
  }
  CHECK(std::abs(sum / 5 - 0.5) < 0.06);
}

TEST_CASE("stratified folds") {
  std::vector<int> labels;
  for (int i = 0; i < 53; ++i) labels.push_back(i % 3 == 0 ? 1 : 0);
  const auto fa = stratified_folds(labels, 2, 5, 42);
  CHECK(fa.stratified);
  std::vector<int> size(5, 0), ones(5, 0);
  for (std::size_t i = 0; i < labels.size(); ++i) {
    ++size[static_cast<std::size_t>(fa.fold_of[i])];
    ones[static_cast<std::size_t>(fa.fold_of[i])] += labels[i];
  }
  CHECK(*std::max_element(size.begin(), size.end()) - *std::min_element(size.begin(), size.end()) <= 1);
  CHECK(*std::max_element(ones.begin(), ones.end()) - *std::min_element(ones.begin(), ones.end()) <= 1);
  CHECK(stratified_folds(labels, 2, 5, 42).fold_of == fa.fold_of);

  const std::vector<int> rare{0, 0, 0, 0, 0, 0, 1};
  const auto fb = stratified_folds(rare, 2, 3, 1);
  CHECK_FALSE(fb.stratified);
  CHECK_FALSE(fb.warning.empty());
  CHECK_THROWS_AS(stratified_folds(rare, 2, 1, 1), ValidationError);
}

TEST_CASE("grid search prefers the smaller model on ties") {
  ForestHyper a, b;
  a.n_estimators = 50;
  b.n_estimators = 100;
  CHECK(smaller_model(a, b));
  b.n_estimators = 50;
  a.max_depth = 10;
  b.max_depth = 0;
  CHECK(smaller_model(a, b));
  b.max_depth = 10;
  a.min_samples_split = 10;
  b.min_samples_split = 2;
  CHECK(smaller_model(a, b));
  CHECK_FALSE(smaller_model(b, a));

  // A trivially separable problem scores 1.0 everywhere, so the smallest
  // cell must win.
  auto d = separable_dataset(60, 12);
  for (auto& r : d.rows) r.x[2] = r.label;
  ForestGrid grid;
  grid.n_estimators = {10, 20};
  const auto result = cross_validate_grid(d, grid, 3, 9);
  CHECK(result.cells.size() == 8);
  CHECK(result.best.n_estimators == 10);
  CHECK(result.best.max_depth == 10);
  CHECK(result.best.min_samples_split == 10);
  for (const auto& c : result.cells) CHECK(c.fold_accuracy.size() == 3);
}

TEST_CASE("linear model") {
  const auto train = separable_dataset(300, 13);
  const auto test = separable_dataset(200, 14);
  const auto model = train_logistic(train, LinearHyper{});
  const auto pred = model.predict(test);
  std::size_t ok = 0;
  for (std::size_t i = 0; i < pred.size(); ++i) ok += pred[i] == test.rows[i].label;
  CHECK(static_cast<double>(ok) / pred.size() >= 0.9);
  for (double s : model.scales) CHECK(s > 0);
}

TEST_CASE("scoring") {
  const std::vector<int> truth{0, 0, 0, 1}, pred{0, 1, 0, 1};
  const auto r = score_predictions(truth, pred, 2);
  CHECK(r.accuracy == 0.75);
  CHECK(r.baseline_accuracy == 0.75);
  CHECK(r.baseline_class == 0);
  CHECK_FALSE(r.beats_baseline());
  CHECK(r.confusion == std::vector<std::vector<std::size_t>>{{2, 1}, {0, 1}});
  CHECK_FALSE(r.degenerate);
  const std::vector<int> one_class{1, 1};
  CHECK(score_predictions(one_class, one_class, 2).degenerate);
  const std::vector<int> bad{5};
  CHECK_THROWS_AS(score_predictions(std::vector<int>{0}, bad, 2), ValidationError);
}

}  // TEST_SUITE
