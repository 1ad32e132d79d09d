/* Copyright 2026 The ewbench Authors

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#include "ew/eval.hpp"

#include <gtest/gtest.h>

#include <fstream>
#include <random>

#include "ew/error.hpp"

namespace ew {
namespace {

namespace fs = std::filesystem;
const fs::path kFixtures = EW_FIXTURES_DIR;

EvalReport evaluate_manifest(const fs::path& p) {
  const auto items = resolve_predictions(load_manifest(p), nullptr, p.parent_path());
  return evaluate(items);
}

TEST(Eval, RealWorldFortyItems) {
  const auto r = evaluate_manifest(kFixtures / "eval/realworld40_predictions.jsonl");
  EXPECT_EQ(r.total, 40);
  EXPECT_EQ(r.correct, 33);
  EXPECT_EQ(r.flagged, 3);
  EXPECT_EQ(r.accuracy_including_errors, 0.825);
  EXPECT_EQ(r.accuracy_excluding_errors, 0.9);
  EXPECT_EQ(r.category_total[category_index(ClassLabel::kCardboard)], 9);
  EXPECT_EQ(r.category_total[category_index(ClassLabel::kPlastic)], 10);
}

TEST(Eval, MixedHundredItems) {
  const auto r = evaluate_manifest(kFixtures / "eval/mixed100_predictions.jsonl");
  EXPECT_EQ(r.total, 100);
  EXPECT_EQ(r.accuracy_including_errors, 0.94);
  EXPECT_EQ(r.accuracy_excluding_errors, 0.95);
  EXPECT_EQ(r.flag_counts[0], 1);
  EXPECT_EQ(r.confusion[category_index(ClassLabel::kGlass)][category_index(ClassLabel::kMetal)],
            1);
}

TEST(Eval, RejectsInconsistentItems) {
  EXPECT_THROW(evaluate({}), Error);
  const std::vector<EvalItem> flagged_correct{
      {"a", ClassLabel::kGlass, ClassLabel::kGlass, ErrorFlag::kGlare}};
  EXPECT_THROW(evaluate(flagged_correct), Error);
}

TEST(Manifest, ErrorsNameTheLine) {
  const fs::path p = fs::temp_directory_path() / "ew_manifest.jsonl";
  std::ofstream(p) << R"({"file": "a.png", "truth": "glass"})" << "\n\n"
                   << R"({"file": "b.png", "truth": "trash"})" << "\n";
  try {
    load_manifest(p);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kUnknownLabel);
    EXPECT_NE(std::string(e.what()).find("ew_manifest.jsonl:3"), std::string::npos) << e.what();
  }
  std::ofstream(p) << R"({"file": "a.png", "truth": "glass", "flag": "blur"})" << "\n";
  EXPECT_THROW(load_manifest(p), Error);
}

TEST(Manifest, MissingPredictionNeedsBackend) {
  const auto entries = load_manifest(kFixtures / "realworld40.jsonl");
  EXPECT_EQ(entries.size(), 40u);
  EXPECT_THROW(resolve_predictions(entries, nullptr, kFixtures), Error);
}

TEST(EmitEvalReport, CsvAndJson) {
  const auto r = evaluate_manifest(kFixtures / "eval/realworld40_predictions.jsonl");
  const std::string csv = emit_report(r, ReportFormat::kCsv);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "category,total,correct");
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 6);
  const auto j = nlohmann::json::parse(emit_report(r, ReportFormat::kJson));
  EXPECT_EQ(j["accuracy_excluding_errors"], 0.9);
  EXPECT_THROW(emit_report(EvalReport{}, ReportFormat::kCsv), Error);
}

TEST(EvalProperty, RandomManifests) {
  std::mt19937 rng(17);
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 200);
    std::vector<EvalItem> items;
    std::int64_t correct = 0, flagged = 0;
    for (int i = 0; i < n; ++i) {
      EvalItem it{std::to_string(i), kCategories[rng() % 5], kCategories[rng() % 5], {}};
      if (it.truth == it.predicted) {
        ++correct;
      } else if (rng() % 3 == 0) {
        it.flag = static_cast<ErrorFlag>(rng() % 3);
        ++flagged;
      }
      items.push_back(it);
    }
    const auto r = evaluate(items);
    ASSERT_GE(r.accuracy_excluding_errors, r.accuracy_including_errors);
    ASSERT_EQ(r.accuracy_including_errors, static_cast<double>(correct) / n);
    ASSERT_EQ(r.accuracy_excluding_errors, static_cast<double>(correct + flagged) / n);
    std::int64_t diag = 0, cells = 0;
    for (std::size_t t = 0; t < kNumCategories; ++t) {
      diag += r.confusion[t][t];
      for (std::size_t p = 0; p < kNumCategories; ++p) cells += r.confusion[t][p];
      ASSERT_LE(r.category_correct[t] + r.category_flagged[t], r.category_total[t]);
    }
    ASSERT_EQ(diag, r.correct);
    ASSERT_EQ(cells, r.total);
  }
}

}  // namespace
}  // namespace ew
