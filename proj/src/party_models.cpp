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

#include "hearings/party_models.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <thread>

#include "json.hpp"

#include "hearings/errors.hpp"
#include "hearings/logistic_core.hpp"
#include "hearings/rng.hpp"
#include "hearings/text_util.hpp"

namespace hearings {

const std::vector<std::string>& task_classes(LabelTask task) {
  static const std::vector<std::string> affiliation{"D", "R", "I"};
  static const std::vector<std::string> standing{"M", "m"};
  return task == LabelTask::Affiliation ? affiliation : standing;
}

std::optional<int> class_of(LabelTask task, const Person& person) {
  if (person.role != Role::Member) return std::nullopt;
  if (task == LabelTask::Affiliation) {
    switch (person.party) {
      case Party::Democrat: return 0;
      case Party::Republican: return 1;
      case Party::Independent: return 2;
      case Party::None: return std::nullopt;
    }
    return std::nullopt;
  }
  switch (person.standing) {
    case Standing::Majority: return 0;
    case Standing::Minority: return 1;
    case Standing::NotApplicable: return std::nullopt;
  }
  return std::nullopt;
}

std::vector<int> Dataset::labels() const {
  std::vector<int> out;
  out.reserve(rows.size());
  for (const auto& r : rows) out.push_back(r.label);
  return out;
}

Dataset Dataset::subset(std::span<const std::size_t> indices) const {
  Dataset d;
  d.task = task;
  d.schema = schema;
  d.feature_names = feature_names;
  d.rows.reserve(indices.size());
  for (auto i : indices) d.rows.push_back(rows.at(i));
  return d;
}

void Dataset::validate() const {
  const int nc = static_cast<int>(n_classes());
  for (const auto& r : rows) {
    if (r.x.size() != feature_names.size()) {
      throw ValidationError("row " + r.row_id + " has " + std::to_string(r.x.size()) +
                            " features, schema has " + std::to_string(feature_names.size()));
    }
    if (r.label < 0 || r.label >= nc) {
      throw ValidationError("row " + r.row_id + " has a label outside the task classes");
    }
  }
}

Imputer Imputer::fit(const Dataset& data) {
  Imputer imp;
  const std::size_t d = data.feature_names.size();
  imp.medians.assign(d, 0.0);
  std::vector<double> col;
  for (std::size_t j = 0; j < d; ++j) {
    col.clear();
    for (const auto& r : data.rows) {
      if (r.x[j]) col.push_back(*r.x[j]);
    }
    if (col.empty()) continue;
    std::sort(col.begin(), col.end());
    const std::size_t m = col.size() / 2;
    imp.medians[j] = col.size() % 2 ? col[m] : 0.5 * (col[m - 1] + col[m]);
  }
  return imp;
}

std::vector<double> Imputer::apply(const std::vector<std::optional<double>>& x) const {
  if (x.size() != medians.size()) {
    throw ValidationError("row has " + std::to_string(x.size()) + " features, model expects " +
                          std::to_string(medians.size()));
  }
  std::vector<double> out(x.size());
  for (std::size_t j = 0; j < x.size(); ++j) out[j] = x[j] ? *x[j] : medians[j];
  return out;
}

Matrix Imputer::apply(const Dataset& data) const {
  Matrix m;
  m.reserve(data.rows.size());
  for (const auto& r : data.rows) m.push_back(apply(r.x));
  return m;
}

namespace {

struct TokenSpan {
  std::size_t begin;
  std::size_t end;
  std::string lower;
};

std::vector<TokenSpan> token_spans(std::string_view text) {
  std::vector<TokenSpan> out;
  std::size_t i = 0;
  while (i < text.size()) {
    if (!is_ascii_alnum(text[i])) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < text.size() && (is_ascii_alnum(text[j]) || text[j] == '\'')) ++j;
    while (j > i + 1 && text[j - 1] == '\'') --j;
    out.push_back({i, j, to_lower(text.substr(i, j - i))});
    i = j;
  }
  return out;
}

}  // namespace

NameStripper::NameStripper(const std::vector<Person>& roster,
                           const std::vector<std::string>& directory) {
  std::vector<std::string> raw = directory;
  for (const auto& p : roster) {
    raw.push_back(p.display_name);
    raw.push_back(p.surname);
  }
  for (const auto& name : raw) {
    std::vector<std::string> toks;
    for (auto& t : token_spans(name)) toks.push_back(std::move(t.lower));
    if (!toks.empty()) names_.push_back(std::move(toks));
    // Surnames of directory entries match on their own too.
    if (names_.size() && names_.back().size() > 1) names_.push_back({names_.back().back()});
  }
  std::sort(names_.begin(), names_.end(), [](const auto& a, const auto& b) {
    return a.size() != b.size() ? a.size() > b.size() : a < b;
  });
  names_.erase(std::unique(names_.begin(), names_.end()), names_.end());
}

std::string NameStripper::strip(std::string_view text) const {
  const auto toks = token_spans(text);
  std::string out;
  std::size_t copied = 0;
  std::size_t i = 0;
  while (i < toks.size()) {
    std::size_t matched = 0;
    for (const auto& name : names_) {
      if (i + name.size() > toks.size()) continue;
      bool ok = true;
      for (std::size_t k = 0; k < name.size() && ok; ++k) ok = toks[i + k].lower == name[k];
      if (ok) {
        matched = name.size();
        break;
      }
    }
    if (matched == 0) {
      ++i;
      continue;
    }
    out.append(text.substr(copied, toks[i].begin - copied));
    out.append(kNamePlaceholder);
    copied = toks[i + matched - 1].end;
    i += matched;
  }
  out.append(text.substr(copied));
  return out;
}

std::string strip_speaker_names(std::string_view text, const std::vector<Person>& roster,
                                const std::vector<std::string>& member_directory) {
  return NameStripper(roster, member_directory).strip(text);
}

Baseline majority_baseline(std::span<const int> labels, std::size_t n_classes) {
  if (labels.empty()) throw ValidationError("majority baseline needs at least one label");
  std::vector<std::size_t> counts(n_classes, 0);
  for (int l : labels) {
    if (l < 0 || static_cast<std::size_t>(l) >= n_classes) {
      throw ValidationError("label out of range in majority baseline");
    }
    ++counts[static_cast<std::size_t>(l)];
  }
  const auto it = std::max_element(counts.begin(), counts.end());
  return {static_cast<int>(it - counts.begin()),
          static_cast<double>(*it) / static_cast<double>(labels.size())};
}

// ---------------------------------------------------------------------------
// Forest

namespace {

double gini(const std::vector<double>& counts, double n) {
  if (n <= 0) return 0.0;
  double s = 0.0;
  for (double c : counts) s += (c / n) * (c / n);
  return 1.0 - s;
}

class TreeBuilder {
 public:
  TreeBuilder(const Matrix& x, std::span<const int> y, std::size_t n_classes,
              const ForestHyper& hyper, std::size_t mtry, std::uint64_t seed,
              std::vector<double>& importance, double total_weight)
      : x_(x), y_(y), nc_(n_classes), hyper_(hyper), mtry_(mtry), rng_(seed),
        importance_(importance), total_(total_weight) {}

  Tree build(std::vector<std::size_t> sample) {
    grow(sample, 0);
    return std::move(tree_);
  }

 private:
  int leaf(const std::vector<double>& counts, double n) {
    TreeNode node;
    node.distribution.resize(nc_);
    for (std::size_t c = 0; c < nc_; ++c) node.distribution[c] = counts[c] / n;
    tree_.nodes.push_back(std::move(node));
    return static_cast<int>(tree_.nodes.size() - 1);
  }

  int grow(std::vector<std::size_t>& idx, int depth) {
    const double n = static_cast<double>(idx.size());
    std::vector<double> counts(nc_, 0.0);
    for (auto i : idx) counts[static_cast<std::size_t>(y_[i])] += 1.0;
    const double parent = gini(counts, n);
    const bool depth_cap = hyper_.max_depth > 0 && depth >= hyper_.max_depth;
    if (depth_cap || idx.size() < static_cast<std::size_t>(std::max(2, hyper_.min_samples_split)) ||
        parent <= 0.0) {
      return leaf(counts, n);
    }
    const std::size_t d = x_.front().size();
    const auto features = rng_.sample(d, mtry_);
    double best_score = parent - 1e-12;
    int best_feature = -1;
    double best_threshold = 0.0;
    std::vector<std::size_t> order(idx);
    std::vector<double> left(nc_);
    for (auto f : features) {
      std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return x_[a][f] < x_[b][f] || (x_[a][f] == x_[b][f] && a < b);
      });
      std::fill(left.begin(), left.end(), 0.0);
      for (std::size_t k = 0; k + 1 < order.size(); ++k) {
        left[static_cast<std::size_t>(y_[order[k]])] += 1.0;
        const double v = x_[order[k]][f];
        const double next = x_[order[k + 1]][f];
        if (!(v < next)) continue;
        const double nl = static_cast<double>(k + 1);
        const double nr = n - nl;
        std::vector<double> right(nc_);
        for (std::size_t c = 0; c < nc_; ++c) right[c] = counts[c] - left[c];
        const double score = (nl * gini(left, nl) + nr * gini(right, nr)) / n;
        if (score < best_score) {
          best_score = score;
          best_feature = static_cast<int>(f);
          double mid = v + (next - v) / 2.0;
          if (!(mid < next) || !std::isfinite(mid)) mid = v;
          best_threshold = mid;
        }
      }
    }
    if (best_feature < 0) return leaf(counts, n);
    importance_[static_cast<std::size_t>(best_feature)] += (n / total_) * (parent - best_score);

    std::vector<std::size_t> li, ri;
    for (auto i : idx) {
      (x_[i][static_cast<std::size_t>(best_feature)] <= best_threshold ? li : ri).push_back(i);
    }
    idx.clear();
    idx.shrink_to_fit();
    const int self = static_cast<int>(tree_.nodes.size());
    tree_.nodes.emplace_back();
    tree_.nodes[self].feature = best_feature;
    tree_.nodes[self].threshold = best_threshold;
    const int l = grow(li, depth + 1);
    const int r = grow(ri, depth + 1);
    tree_.nodes[self].left = l;
    tree_.nodes[self].right = r;
    return self;
  }

  const Matrix& x_;
  std::span<const int> y_;
  std::size_t nc_;
  const ForestHyper& hyper_;
  std::size_t mtry_;
  Rng rng_;
  std::vector<double>& importance_;
  double total_;
  Tree tree_;
};

template <class F>
void parallel_for(std::size_t n, unsigned jobs, F&& f) {
  const std::size_t workers = std::max<std::size_t>(1, std::min<std::size_t>(jobs, n));
  if (workers == 1) {
    for (std::size_t i = 0; i < n; ++i) f(i);
    return;
  }
  std::vector<std::thread> threads;
  for (std::size_t w = 0; w < workers; ++w) {
    threads.emplace_back([&, w] {
      for (std::size_t i = w; i < n; i += workers) f(i);
    });
  }
  for (auto& t : threads) t.join();
}

}  // namespace

ForestModel train_forest(const Matrix& x, std::span<const int> y, std::size_t n_classes,
                         const ForestHyper& hyper, unsigned jobs) {
  if (x.empty() || x.size() != y.size()) throw ValidationError("forest: empty or ragged data");
  if (hyper.n_estimators < 1) throw ValidationError("forest: n_estimators must be >= 1");
  if (hyper.max_depth < 0 || hyper.min_samples_split < 0 || hyper.max_features < 0) {
    throw ValidationError("forest: negative hyper-parameter");
  }
  std::vector<bool> present(n_classes, false);
  for (int l : y) {
    if (l < 0 || static_cast<std::size_t>(l) >= n_classes) {
      throw ValidationError("forest: label out of range");
    }
    present[static_cast<std::size_t>(l)] = true;
  }
  if (std::count(present.begin(), present.end(), true) < 2) {
    throw ValidationError("forest: training data holds a single class");
  }
  const std::size_t d = x.front().size();
  if (d == 0) throw ValidationError("forest: no features");
  for (const auto& row : x) {
    if (row.size() != d) throw ValidationError("forest: ragged feature rows");
  }
  const std::size_t mtry =
      hyper.max_features > 0
          ? std::min<std::size_t>(d, static_cast<std::size_t>(hyper.max_features))
          : std::max<std::size_t>(1, static_cast<std::size_t>(std::floor(std::sqrt(double(d)))));

  ForestModel model;
  model.hyper = hyper;
  model.n_classes = n_classes;
  model.trees.resize(static_cast<std::size_t>(hyper.n_estimators));
  std::vector<std::vector<double>> per_tree(model.trees.size(), std::vector<double>(d, 0.0));
  parallel_for(model.trees.size(), jobs, [&](std::size_t t) {
    const std::uint64_t seed = derive_seed(hyper.seed, t);
    Rng boot(derive_seed(seed, 0));
    std::vector<std::size_t> sample(x.size());
    for (auto& s : sample) s = boot.index(x.size());
    TreeBuilder builder(x, y, n_classes, hyper, mtry, derive_seed(seed, 1), per_tree[t],
                        static_cast<double>(x.size()));
    model.trees[t] = builder.build(std::move(sample));
  });
  model.impurity_decrease.assign(d, 0.0);
  for (const auto& imp : per_tree) {
    for (std::size_t j = 0; j < d; ++j) model.impurity_decrease[j] += imp[j];
  }
  return model;
}

ForestModel train_forest(const Dataset& train, const ForestHyper& hyper, unsigned jobs) {
  train.validate();
  const Imputer imp = Imputer::fit(train);
  const auto labels = train.labels();
  ForestModel m = train_forest(imp.apply(train), labels, train.n_classes(), hyper, jobs);
  m.task = train.task;
  m.feature_names = train.feature_names;
  m.imputer = imp;
  return m;
}

Prediction predict_tree(const Tree& tree, std::span<const double> row, std::size_t n_classes) {
  std::size_t k = 0;
  while (tree.nodes[k].feature >= 0) {
    const auto& node = tree.nodes[k];
    k = static_cast<std::size_t>(row[static_cast<std::size_t>(node.feature)] <= node.threshold
                                     ? node.left
                                     : node.right);
  }
  Prediction p;
  p.probabilities = tree.nodes[k].distribution;
  p.probabilities.resize(n_classes, 0.0);
  p.label = static_cast<int>(std::max_element(p.probabilities.begin(), p.probabilities.end()) -
                             p.probabilities.begin());
  return p;
}

Prediction predict_forest(const ForestModel& model, std::span<const double> row) {
  if (model.trees.empty()) throw ValidationError("forest has no trees");
  if (row.size() != model.impurity_decrease.size()) {
    throw ValidationError("row has " + std::to_string(row.size()) + " features, model expects " +
                          std::to_string(model.impurity_decrease.size()));
  }
  Prediction p;
  p.probabilities.assign(model.n_classes, 0.0);
  for (const auto& tree : model.trees) {
    const auto tp = predict_tree(tree, row, model.n_classes);
    for (std::size_t c = 0; c < model.n_classes; ++c) p.probabilities[c] += tp.probabilities[c];
  }
  const double n = static_cast<double>(model.trees.size());
  for (auto& v : p.probabilities) v /= n;
  p.label = static_cast<int>(std::max_element(p.probabilities.begin(), p.probabilities.end()) -
                             p.probabilities.begin());
  return p;
}

std::vector<int> predict_forest(const ForestModel& model, const Dataset& data) {
  std::vector<int> out;
  out.reserve(data.rows.size());
  for (const auto& r : data.rows) out.push_back(predict_forest(model, model.imputer.apply(r.x)).label);
  return out;
}

std::string ForestModel::to_json_text() const {
  using nlohmann::json;
  json j;
  j["format"] = "hearings-forest";
  j["version"] = 1;
  j["task"] = name_of(task);
  j["hyper"] = {{"n_estimators", hyper.n_estimators},
                {"max_depth", hyper.max_depth},
                {"min_samples_split", hyper.min_samples_split},
                {"max_features", hyper.max_features},
                {"seed", hyper.seed}};
  j["feature_names"] = feature_names;
  j["n_classes"] = n_classes;
  j["medians"] = imputer.medians;
  j["impurity_decrease"] = impurity_decrease;
  json trees_j = json::array();
  for (const auto& t : trees) {
    json nodes = json::array();
    for (const auto& n : t.nodes) {
      if (n.feature < 0) {
        nodes.push_back({{"leaf", n.distribution}});
      } else {
        nodes.push_back({{"f", n.feature}, {"t", n.threshold}, {"l", n.left}, {"r", n.right}});
      }
    }
    trees_j.push_back(std::move(nodes));
  }
  j["trees"] = std::move(trees_j);
  return j.dump() + "\n";
}

ForestModel ForestModel::from_json_text(std::string_view text, const std::string& source) {
  using nlohmann::json;
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(source, 0, "json", e.what());
  }
  if (j.value("format", "") != "hearings-forest") {
    throw ParseError(source, 0, "format", "not a forest model file");
  }
  ForestModel m;
  try {
    const auto task = parse_enum<LabelTask>(j.at("task").get<std::string>());
    if (!task) throw ParseError(source, 0, "task", "unknown task");
    m.task = *task;
    const auto& h = j.at("hyper");
    m.hyper.n_estimators = h.at("n_estimators").get<int>();
    m.hyper.max_depth = h.at("max_depth").get<int>();
    m.hyper.min_samples_split = h.at("min_samples_split").get<int>();
    m.hyper.max_features = h.at("max_features").get<int>();
    m.hyper.seed = h.at("seed").get<std::uint64_t>();
    m.feature_names = j.at("feature_names").get<std::vector<std::string>>();
    m.n_classes = j.at("n_classes").get<std::size_t>();
    m.imputer.medians = j.at("medians").get<std::vector<double>>();
    m.impurity_decrease = j.at("impurity_decrease").get<std::vector<double>>();
    const std::size_t d = m.impurity_decrease.size();
    for (const auto& tj : j.at("trees")) {
      Tree t;
      for (const auto& nj : tj) {
        TreeNode n;
        if (nj.contains("leaf")) {
          n.distribution = nj.at("leaf").get<std::vector<double>>();
          if (n.distribution.size() != m.n_classes) {
            throw ParseError(source, 0, "trees", "leaf distribution has the wrong size");
          }
        } else {
          n.feature = nj.at("f").get<int>();
          n.threshold = nj.at("t").get<double>();
          n.left = nj.at("l").get<int>();
          n.right = nj.at("r").get<int>();
          if (n.feature < 0 || static_cast<std::size_t>(n.feature) >= d ||
              !std::isfinite(n.threshold)) {
            throw ParseError(source, 0, "trees", "invalid split node");
          }
        }
        t.nodes.push_back(std::move(n));
      }
      const int count = static_cast<int>(t.nodes.size());
      for (const auto& n : t.nodes) {
        if (n.feature >= 0 && (n.left <= 0 || n.right <= 0 || n.left >= count || n.right >= count)) {
          throw ParseError(source, 0, "trees", "child index out of range");
        }
      }
      if (t.nodes.empty()) throw ParseError(source, 0, "trees", "empty tree");
      m.trees.push_back(std::move(t));
    }
  } catch (const json::exception& e) {
    throw ParseError(source, 0, "model", e.what());
  }
  return m;
}

void ForestModel::save(const std::filesystem::path& path) const { write_file(path, to_json_text()); }

ForestModel ForestModel::load(const std::filesystem::path& path) {
  return from_json_text(read_file(path), path.string());
}

// ---------------------------------------------------------------------------
// Cross-validation

std::vector<ForestHyper> ForestGrid::cells(std::uint64_t seed) const {
  std::vector<ForestHyper> out;
  for (int n : n_estimators) {
    for (int d : max_depth) {
      for (int s : min_samples_split) {
        ForestHyper h;
        h.n_estimators = n;
        h.max_depth = d;
        h.min_samples_split = s;
        h.seed = seed;
        out.push_back(h);
      }
    }
  }
  return out;
}

FoldAssignment stratified_folds(std::span<const int> labels, std::size_t n_classes, int k,
                                std::uint64_t seed) {
  if (k < 2) throw ValidationError("cross-validation needs k >= 2");
  if (labels.size() < static_cast<std::size_t>(k)) {
    throw ValidationError("cross-validation needs at least k rows");
  }
  FoldAssignment fa;
  fa.fold_of.assign(labels.size(), 0);
  std::vector<std::vector<std::size_t>> by_class(n_classes);
  for (std::size_t i = 0; i < labels.size(); ++i) {
    by_class[static_cast<std::size_t>(labels[i])].push_back(i);
  }
  for (const auto& c : by_class) {
    if (!c.empty() && c.size() < static_cast<std::size_t>(k)) fa.stratified = false;
  }
  if (!fa.stratified) {
    fa.warning = "a class has fewer than k members; folds are not stratified";
    by_class.assign(1, {});
    for (std::size_t i = 0; i < labels.size(); ++i) by_class[0].push_back(i);
  }
  std::size_t deal = 0;
  for (std::size_t c = 0; c < by_class.size(); ++c) {
    Rng rng(derive_seed(seed, c));
    rng.shuffle(by_class[c]);
    for (auto i : by_class[c]) fa.fold_of[i] = static_cast<int>(deal++ % static_cast<std::size_t>(k));
  }
  return fa;
}

bool smaller_model(const ForestHyper& a, const ForestHyper& b) {
  if (a.n_estimators != b.n_estimators) return a.n_estimators < b.n_estimators;
  const auto depth = [](int d) { return d == 0 ? INT32_MAX : d; };
  if (depth(a.max_depth) != depth(b.max_depth)) return depth(a.max_depth) < depth(b.max_depth);
  return a.min_samples_split > b.min_samples_split;
}

GridResult cross_validate_grid(const Dataset& data, const ForestGrid& grid, int k,
                               std::uint64_t seed, unsigned jobs) {
  data.validate();
  const auto cells = grid.cells(seed);
  if (cells.empty()) throw ValidationError("hyper-parameter grid is empty");
  GridResult result;
  const auto labels = data.labels();
  result.folds = stratified_folds(labels, data.n_classes(), k, derive_seed(seed, 0x666f6c64));

  struct FoldData {
    Matrix x_train, x_val;
    std::vector<int> y_train, y_val;
    bool usable = false;
  };
  std::vector<FoldData> folds(static_cast<std::size_t>(k));
  for (int f = 0; f < k; ++f) {
    std::vector<std::size_t> tr, va;
    for (std::size_t i = 0; i < labels.size(); ++i) {
      (result.folds.fold_of[i] == f ? va : tr).push_back(i);
    }
    const Dataset train = data.subset(tr);
    const Dataset val = data.subset(va);
    const Imputer imp = Imputer::fit(train);
    auto& fd = folds[static_cast<std::size_t>(f)];
    fd.x_train = imp.apply(train);
    fd.x_val = imp.apply(val);
    fd.y_train = train.labels();
    fd.y_val = val.labels();
    std::vector<int> distinct(fd.y_train);
    std::sort(distinct.begin(), distinct.end());
    fd.usable = !va.empty() && std::unique(distinct.begin(), distinct.end()) - distinct.begin() >= 2;
  }

  for (const auto& cell : cells) {
    CellScore score;
    score.hyper = cell;
    for (const auto& fd : folds) {
      double acc = 0.0;
      if (fd.usable) {
        const ForestModel m = train_forest(fd.x_train, fd.y_train, data.n_classes(), cell, jobs);
        std::size_t hit = 0;
        for (std::size_t i = 0; i < fd.x_val.size(); ++i) {
          hit += predict_forest(m, fd.x_val[i]).label == fd.y_val[i];
        }
        acc = static_cast<double>(hit) / static_cast<double>(fd.x_val.size());
      } else {
        // A single-class training fold predicts its only class.
        const int only = fd.y_train.empty() ? 0 : fd.y_train.front();
        acc = fd.y_val.empty() ? 0.0
                               : static_cast<double>(std::count(fd.y_val.begin(), fd.y_val.end(), only)) /
                                     static_cast<double>(fd.y_val.size());
      }
      score.fold_accuracy.push_back(acc);
    }
    score.mean_accuracy = std::accumulate(score.fold_accuracy.begin(), score.fold_accuracy.end(), 0.0) /
                          static_cast<double>(k);
    result.cells.push_back(std::move(score));
  }
  const CellScore* best = &result.cells.front();
  for (const auto& c : result.cells) {
    if (c.mean_accuracy > best->mean_accuracy ||
        (c.mean_accuracy == best->mean_accuracy && smaller_model(c.hyper, best->hyper))) {
      best = &c;
    }
  }
  result.best = best->hyper;
  return result;
}

std::vector<std::pair<std::string, double>> feature_importance(const ForestModel& model,
                                                               const Dataset* validation,
                                                               ImportanceMode mode,
                                                               std::uint64_t seed) {
  const std::size_t d = model.impurity_decrease.size();
  auto name = [&](std::size_t j) {
    return j < model.feature_names.size() ? model.feature_names[j] : "f" + std::to_string(j);
  };
  std::vector<std::pair<std::string, double>> out;
  if (mode == ImportanceMode::Impurity) {
    const double total =
        std::accumulate(model.impurity_decrease.begin(), model.impurity_decrease.end(), 0.0);
    for (std::size_t j = 0; j < d; ++j) {
      out.emplace_back(name(j), total > 0 ? model.impurity_decrease[j] / total : 0.0);
    }
    return out;
  }
  if (!validation || validation->rows.empty()) {
    throw ValidationError("permutation importance needs a non-empty validation set");
  }
  Matrix x = model.imputer.apply(*validation);
  const auto y = validation->labels();
  auto accuracy = [&](const Matrix& m) {
    std::size_t hit = 0;
    for (std::size_t i = 0; i < m.size(); ++i) hit += predict_forest(model, m[i]).label == y[i];
    return static_cast<double>(hit) / static_cast<double>(m.size());
  };
  const double base = accuracy(x);
  for (std::size_t j = 0; j < d; ++j) {
    std::vector<double> column(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) column[i] = x[i][j];
    double drop = 0.0;
    for (int r = 0; r < kPermutationRepeats; ++r) {
      Rng rng(derive_seed(seed, j * kPermutationRepeats + static_cast<std::size_t>(r)));
      std::vector<double> shuffled(column);
      rng.shuffle(shuffled);
      for (std::size_t i = 0; i < x.size(); ++i) x[i][j] = shuffled[i];
      drop += base - accuracy(x);
    }
    for (std::size_t i = 0; i < x.size(); ++i) x[i][j] = column[i];
    out.emplace_back(name(j), drop / kPermutationRepeats);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Logistic regression

std::vector<double> LinearModel::standardize(std::span<const double> row) const {
  std::vector<double> z(row.size());
  for (std::size_t j = 0; j < row.size(); ++j) z[j] = (row[j] - means[j]) / scales[j];
  return z;
}

Prediction LinearModel::predict(std::span<const double> raw_row) const {
  if (raw_row.size() != means.size()) throw ValidationError("row does not match model schema");
  const auto z = standardize(raw_row);
  Prediction p;
  for (std::size_t c = 0; c < weights.size(); ++c) {
    double s = biases[c];
    for (std::size_t j = 0; j < z.size(); ++j) s += weights[c][j] * z[j];
    p.probabilities.push_back(sigmoid(s));
  }
  const double total = std::accumulate(p.probabilities.begin(), p.probabilities.end(), 0.0);
  if (total > 0) {
    for (auto& v : p.probabilities) v /= total;
  }
  p.label = static_cast<int>(std::max_element(p.probabilities.begin(), p.probabilities.end()) -
                             p.probabilities.begin());
  return p;
}

std::vector<int> LinearModel::predict(const Dataset& data) const {
  std::vector<int> out;
  for (const auto& r : data.rows) out.push_back(predict(imputer.apply(r.x)).label);
  return out;
}

LinearModel train_logistic(const Dataset& train, const LinearHyper& hyper) {
  train.validate();
  if (train.rows.empty()) throw ValidationError("logistic: empty training set");
  const auto labels = train.labels();
  std::vector<int> distinct(labels);
  std::sort(distinct.begin(), distinct.end());
  if (std::unique(distinct.begin(), distinct.end()) - distinct.begin() < 2) {
    throw ValidationError("logistic: training data holds a single class");
  }
  LinearModel m;
  m.task = train.task;
  m.feature_names = train.feature_names;
  m.hyper = hyper;
  m.imputer = Imputer::fit(train);
  const Matrix x = m.imputer.apply(train);
  const std::size_t d = train.feature_names.size();
  const double n = static_cast<double>(x.size());
  m.means.assign(d, 0.0);
  m.scales.assign(d, 1.0);
  for (std::size_t j = 0; j < d; ++j) {
    double s = 0.0;
    for (const auto& r : x) s += r[j];
    m.means[j] = s / n;
    double v = 0.0;
    for (const auto& r : x) v += (r[j] - m.means[j]) * (r[j] - m.means[j]);
    const double sd = std::sqrt(v / n);
    m.scales[j] = sd > 0 ? sd : 1.0;
  }
  std::vector<SparseRow> rows;
  rows.reserve(x.size());
  for (const auto& r : x) {
    SparseRow sr;
    const auto z = m.standardize(r);
    for (std::size_t j = 0; j < d; ++j) {
      sr.index.push_back(static_cast<std::uint32_t>(j));
      sr.value.push_back(z[j]);
    }
    rows.push_back(std::move(sr));
  }
  LogisticHyper lh;
  lh.learning_rate = hyper.learning_rate > 0 ? hyper.learning_rate : stable_learning_rate(rows, hyper.l2);
  lh.epochs = hyper.epochs;
  lh.l2 = hyper.l2;
  lh.seed = hyper.seed;
  for (std::size_t c = 0; c < train.n_classes(); ++c) {
    std::vector<double> y(labels.size());
    for (std::size_t i = 0; i < labels.size(); ++i) y[i] = labels[i] == static_cast<int>(c) ? 1.0 : 0.0;
    const LogisticFit fit = fit_logistic(rows, y, d, lh);
    m.weights.push_back(fit.weights);
    m.biases.push_back(fit.bias);
  }
  return m;
}

EvalReport score_predictions(std::span<const int> truth, std::span<const int> predicted,
                             std::size_t n_classes) {
  if (truth.size() != predicted.size()) throw ValidationError("prediction count mismatch");
  EvalReport r;
  r.n_test = truth.size();
  r.confusion.assign(n_classes, std::vector<std::size_t>(n_classes, 0));
  std::size_t hit = 0;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    if (predicted[i] < 0 || static_cast<std::size_t>(predicted[i]) >= n_classes) {
      throw ValidationError("predicted label out of range");
    }
    ++r.confusion[static_cast<std::size_t>(truth[i])][static_cast<std::size_t>(predicted[i])];
    hit += truth[i] == predicted[i];
  }
  if (!truth.empty()) {
    r.accuracy = static_cast<double>(hit) / static_cast<double>(truth.size());
    const Baseline b = majority_baseline(truth, n_classes);
    r.baseline_class = b.label;
    r.baseline_accuracy = b.accuracy;
    std::size_t present = 0;
    for (const auto& row : r.confusion) {
      present += std::accumulate(row.begin(), row.end(), std::size_t{0}) > 0;
    }
    r.degenerate = present < 2;
  }
  return r;
}

}  // namespace hearings
