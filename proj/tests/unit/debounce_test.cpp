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

#include "ew/debounce.hpp"

#include <gtest/gtest.h>

#include <random>

#include "../support/oracles.hpp"
#include "ew/error.hpp"

namespace ew {
namespace {

using std::chrono::milliseconds;

using testing::recount_oracle;

std::vector<std::pair<int, ClassLabel>> run_queue(int n, const std::vector<ClassLabel>& seq) {
  DebounceQueue q(n);
  std::vector<std::pair<int, ClassLabel>> events;
  for (int i = 0; i < static_cast<int>(seq.size()); ++i) {
    if (auto ev = q.push(seq[i], Timestamp{i})) events.emplace_back(i, ev->new_state);
  }
  return events;
}

TEST(DebounceQueue, SwitchesOnSixthConsecutiveNewLabel) {
  DebounceQueue q(10);
  for (int i = 0; i < 10; ++i) q.push(ClassLabel::kGlass);
  ASSERT_EQ(q.committed(), ClassLabel::kGlass);
  int events = 0;
  for (int i = 1; i <= 10; ++i) {
    auto ev = q.push(ClassLabel::kMetal, Timestamp{milliseconds(i)});
    if (ev) {
      ++events;
      EXPECT_EQ(i, 6);
      EXPECT_EQ(ev->previous_state, ClassLabel::kGlass);
      EXPECT_EQ(ev->new_state, ClassLabel::kMetal);
      EXPECT_EQ(ev->votes, 6);
      EXPECT_EQ(ev->at, Timestamp{milliseconds(6)});
    }
    EXPECT_EQ(q.committed(), i >= 6 ? ClassLabel::kMetal : ClassLabel::kGlass);
  }
  EXPECT_EQ(events, 1);
}

TEST(DebounceQueue, EmptySlotsAbstainWhileFilling) {
  DebounceQueue q(10);
  for (int i = 1; i <= 5; ++i) EXPECT_FALSE(q.push(ClassLabel::kPaper)) << i;
  EXPECT_EQ(q.committed(), ClassLabel::kNone);
  EXPECT_FALSE(q.majority());
  auto ev = q.push(ClassLabel::kPaper);
  ASSERT_TRUE(ev);
  EXPECT_EQ(ev->previous_state, ClassLabel::kNone);
  EXPECT_EQ(q.size(), 6u);
}

TEST(DebounceQueue, TieHoldsPreviousState) {
  DebounceQueue q(4);
  for (int i = 0; i < 4; ++i) q.push(ClassLabel::kGlass);
  q.push(ClassLabel::kMetal);
  EXPECT_FALSE(q.push(ClassLabel::kMetal));  // 2-2
  EXPECT_FALSE(q.majority());
  EXPECT_EQ(q.committed(), ClassLabel::kGlass);
  EXPECT_TRUE(q.push(ClassLabel::kMetal));
}

TEST(DebounceQueue, CapacityOneFollowsEveryChange) {
  DebounceQueue q(1);
  EXPECT_TRUE(q.push(ClassLabel::kGlass));
  EXPECT_FALSE(q.push(ClassLabel::kGlass));
  EXPECT_TRUE(q.push(ClassLabel::kPaper));
}

TEST(DebounceQueue, ContentsOldestFirstAndBounded) {
  DebounceQueue q(3);
  q.push(ClassLabel::kGlass);
  q.push(ClassLabel::kMetal);
  q.push(ClassLabel::kPaper);
  q.push(ClassLabel::kPlastic);
  EXPECT_EQ(q.contents(), (std::vector<ClassLabel>{ClassLabel::kMetal, ClassLabel::kPaper,
                                                   ClassLabel::kPlastic}));
  EXPECT_EQ(q.size(), 3u);
}

TEST(DebounceQueue, ConfidenceFloorDropsWithoutTouchingRing) {
  DebounceQueue q(3, 0.6);
  EXPECT_FALSE(q.push(Classification{ClassLabel::kGlass, 0.59, 0.01, {}}));
  EXPECT_EQ(q.size(), 0u);
  EXPECT_EQ(q.dropped(), 1u);
  q.push(Classification{ClassLabel::kGlass, 0.6, 0.01, {}});
  auto ev = q.push(Classification{ClassLabel::kGlass, 0.9, 0.01, Timestamp{42}});
  ASSERT_TRUE(ev);
  EXPECT_EQ(ev->at, Timestamp{42});
}

TEST(DebounceQueue, RejectsBadConstruction) {
  EXPECT_THROW(DebounceQueue(0), Error);
  EXPECT_THROW(DebounceQueue(10, 1.5), Error);
  DebounceQueue q(2);
  EXPECT_THROW(q.push(ClassLabel::kNone), Error);
}

TEST(DebounceQueueProperty, ExhaustiveOracleEquivalence) {
  const ClassLabel alphabet[] = {ClassLabel::kGlass, ClassLabel::kMetal, ClassLabel::kPaper};
  std::size_t checked = 0;
  for (int n = 1; n <= 4; ++n) {
    for (int len = 0; len <= 12; ++len) {
      std::vector<int> digits(len, 0);
      for (;;) {
        std::vector<ClassLabel> seq(len);
        for (int i = 0; i < len; ++i) seq[i] = alphabet[digits[i]];
        ASSERT_EQ(run_queue(n, seq), recount_oracle(n, seq)) << "n=" << n << " len=" << len;
        ++checked;
        int k = 0;
        while (k < len && ++digits[k] == 3) digits[k++] = 0;
        if (k == len) break;
      }
    }
  }
  EXPECT_EQ(checked, 4u * 797161u);  // sum_{len=0..12} 3^len
}

TEST(DebounceQueueProperty, NeverCommitsWithoutStrictMajority) {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 15);
    DebounceQueue q(n);
    std::vector<ClassLabel> history;
    for (int i = 0; i < 60; ++i) {
      const ClassLabel l = kCategories[rng() % 5];
      history.push_back(l);
      const auto before = q.committed();
      auto ev = q.push(l);
      const std::size_t start = history.size() > static_cast<std::size_t>(n)
                                    ? history.size() - n : 0;
      const int votes = static_cast<int>(
          std::count(history.begin() + start, history.end(), q.committed()));
      if (ev) {
        EXPECT_NE(ev->new_state, before);
        EXPECT_GT(2 * votes, n);
        EXPECT_EQ(ev->votes, votes);
      } else {
        EXPECT_EQ(q.committed(), before);
      }
    }
  }
}

}  // namespace
}  // namespace ew
