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


#ifndef HEARINGS_TESTS_PIPELINE_HPP_
#define HEARINGS_TESTS_PIPELINE_HPP_

#include <filesystem>
#include <functional>
#include <string>
#include <vector>

namespace hearings::testing {

struct PipelineStep {
  std::string name;
  std::vector<std::string> args;       // without the program name
  std::vector<std::string> artifacts;  // relative to the work directory
};

// The fetch-free pipeline over the bundled fixture, writing below `work`.
inline std::vector<PipelineStep> fixture_pipeline(const std::filesystem::path& data,
                                                  const std::filesystem::path& work) {
  const std::string d = data.string(), w = work.string();
  const std::string qa = d + "/qa/";
  const std::vector<std::string> experiment{
      "--corpus", w + "/labeled/corpus", "--pairs", w + "/pairs/pairs.jsonl",
      "--lexicons", d + "/lexicons", "--government", d + "/government/contexts.json",
      "--min-rows", "20", "--folds", "3", "--n-estimators", "20"};
  auto with = [](std::vector<std::string> head, const std::vector<std::string>& tail) {
    head.insert(head.end(), tail.begin(), tail.end());
    return head;
  };
  return {
      {"segment",
       {"--out", w + "/seg", "segment", "--input", d + "/fixture/raw", "--government",
        d + "/government/contexts.json"},
       {"seg/corpus", "seg/segmentation_report.jsonl", "seg/run_manifest.json"}},
      {"classify-qa train",
       {"--out", w + "/qa", "classify-qa", "train", "--ama", qa + "ama_train.tsv", "--ukparl",
        qa + "ukparl_train.tsv", "--test", qa + "hand_labeled_test.tsv", "--epochs", "150"},
       {"qa/qa_model.json", "qa/qa_training.json", "qa/qa_confusion.tsv",
        "qa/qa_test_predictions.tsv"}},
      {"classify-qa apply",
       {"--out", w + "/labeled", "classify-qa", "apply", "--model", w + "/qa/qa_model.json",
        "--corpus", w + "/seg/corpus"},
       {"labeled/corpus", "labeled/qa_labels.tsv"}},
      {"pair",
       {"--out", w + "/pairs", "pair", "--corpus", w + "/labeled/corpus"},
       {"pairs/pairs.jsonl", "pairs/pairing_report.json"}},
      {"features",
       {"--out", w + "/features", "--jobs", "2", "features", "--corpus", w + "/labeled/corpus",
        "--lexicons", d + "/lexicons"},
       {"features/features.tsv"}},
      {"kstest question",
       {"--out", w + "/ks", "kstest", "--corpus", w + "/labeled/corpus", "--features",
        w + "/features/features.tsv", "--government", d + "/government/contexts.json", "--kind",
        "Question"},
       {"ks/heatmap_question.tsv", "ks/comparisons_question.tsv", "ks/skipped_question.tsv"}},
      {"kstest answer",
       {"--out", w + "/ks", "kstest", "--corpus", w + "/labeled/corpus", "--features",
        w + "/features/features.tsv", "--pairs", w + "/pairs/pairs.jsonl", "--government",
        d + "/government/contexts.json", "--kind", "Answer"},
       {"ks/heatmap_answer.tsv", "ks/comparisons_answer.tsv", "ks/skipped_answer.tsv"}},
      {"train",
       with({"--out", w + "/train", "train", "--kind", "Question", "--task", "Affiliation"},
            experiment),
       {"train/cv_results.tsv", "train/importances.tsv", "train/skipped_splits.tsv",
        "train/models/all.forest.json"}},
      {"evaluate",
       with({"--out", w + "/eval", "evaluate", "--kind", "Question", "--task", "Standing",
             "--dimension", "government"},
            experiment),
       {"eval/task_summary.tsv", "eval/by_committee.tsv", "eval/hearing_type_government.tsv",
        "eval/by_input_kind.tsv", "eval/skipped_splits.tsv"}},
      {"prompts",
       {"--out", w + "/prompts", "prompts", "--corpus", w + "/labeled/corpus", "--pairs",
        w + "/pairs/pairs.jsonl", "--kind", "Both"},
       {"prompts/prompts.jsonl"}},
      {"verify-sample",
       {"--out", w + "/verify", "verify-sample", "--corpus", w + "/seg/corpus",
        "--hearings-per-session", "1", "--utterances-per-hearing", "10"},
       {"verify/verification_manifest.tsv"}},
  };
}

}  // namespace hearings::testing

#endif  // HEARINGS_TESTS_PIPELINE_HPP_
