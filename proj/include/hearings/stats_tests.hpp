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

#ifndef HEARINGS_STATS_TESTS_HPP_
#define HEARINGS_STATS_TESTS_HPP_

#include <array>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hearings/corpus_model.hpp"
#include "hearings/feature_extractor.hpp"

namespace hearings {

enum class Stars { None, One, Two, Three };

struct KSResult {
  double statistic_D = 0.0;
  double p_value = 1.0;
  std::size_t n_a = 0;
  std::size_t n_b = 0;
  double lambda = 0.0;
  double mean_a = 0.0;
  double mean_b = 0.0;
  bool significant = false;
  Stars stars = Stars::None;
};

// Half-open buckets: [0, .001) three, [.001, .01) two, [.01, .05) one.
Stars star_level(double p);
std::string_view stars_text(Stars s);  // "***", "**", "*", "ns"

// Kolmogorov distribution tail 2 * sum (-1)^(k-1) exp(-2 k^2 lambda^2),
// clamped to [0, 1]; 1 for lambda < 0.1 where the series is flat.
double ks_asymptotic_p(double lambda);

// Right-continuous ECDFs compared just after every distinct value; the
// p-value uses the small-sample corrected lambda.
KSResult ks_two_sample(std::span<const double> a, std::span<const double> b);

// Exact p-value by enumerating every split of the pooled sample; only for
// pooled sizes up to 20.
inline constexpr std::size_t kExactPermutationLimit = 20;
KSResult ks_exact_permutation(std::span<const double> a, std::span<const double> b);

struct GroupInfo {
  std::string utterance_id;
  Party party = Party::None;
  Standing standing = Standing::NotApplicable;
  QaLabel kind = QaLabel::Unlabeled;
};

enum class GroupPair { R_D, R_I, D_I, M_m, RM_DM };
inline constexpr std::array<GroupPair, 5> kAllGroupPairs = {
    GroupPair::R_D, GroupPair::R_I, GroupPair::D_I, GroupPair::M_m, GroupPair::RM_DM};
std::string_view left_group(GroupPair p);
std::string_view right_group(GroupPair p);
std::string pair_name(GroupPair p);  // e.g. "R-D", "R.M.-D.M."
bool in_group(std::string_view group, const GroupInfo& info);

struct GroupComparison {
  std::string feature_name;
  GroupPair pair = GroupPair::R_D;
  QaLabel kind = QaLabel::Question;
  KSResult result;
  double direction = 0.0;  // mean_a - mean_b
  std::optional<double> ratio;  // mean_a / mean_b when mean_b != 0
};

struct SkippedComparison {
  std::string feature_name;
  GroupPair pair = GroupPair::R_D;
  std::string reason;
};

struct ComparisonSet {
  std::vector<GroupComparison> comparisons;
  std::vector<SkippedComparison> skipped;
};

// One KS test per (feature, pair) on utterances of the given kind; absent
// feature values are dropped and pairs with fewer than two usable values on
// either side are skipped. Output is ordered by schema, then pair.
ComparisonSet compare_groups(const std::vector<FeatureRow>& features,
                             const std::vector<GroupInfo>& groups, QaLabel kind,
                             std::span<const GroupPair> pairs = kAllGroupPairs,
                             unsigned jobs = 1);

// Row per feature, five cells per pair: direction, stars, D, p, hatched.
std::string heatmap_matrix_tsv(const std::vector<GroupComparison>& comparisons);
void emit_heatmap_matrix(const std::filesystem::path& path,
                         const std::vector<GroupComparison>& comparisons);
// Long form with both means, the ratio and the sample sizes.
std::string comparisons_tsv(const std::vector<GroupComparison>& comparisons);

}  // namespace hearings

#endif  // HEARINGS_STATS_TESTS_HPP_
