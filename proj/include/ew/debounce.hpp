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

#pragma once

#include <atomic>
#include <cstddef>
#include <optional>
#include <vector>

#include "ew/domain.hpp"

namespace ew {

struct ActuationEvent {
  ClassLabel new_state = ClassLabel::kNone;
  ClassLabel previous_state = ClassLabel::kNone;
  Timestamp at{0};
  int votes = 0;
};

inline constexpr int kDefaultQueueCapacity = 10;

/// Majority-vote actuation gate.
///
/// Keeps the last `capacity` labels. A label commits when it holds a strict
/// majority of the *capacity* (empty slots count as abstentions), so with
/// N = 10 a new object needs 6 votes before the servo is told anything.
/// Without a strict majority the previous committed state is held.
///
/// One thread pushes; `committed()` may be read from any thread.
class DebounceQueue {
 public:
  /// Throws Error(kInvalidArgument) if capacity < 1.
  explicit DebounceQueue(int capacity = kDefaultQueueCapacity,
                         std::optional<double> confidence_floor = std::nullopt);

  DebounceQueue(const DebounceQueue&) = delete;
  DebounceQueue& operator=(const DebounceQueue&) = delete;

  /// Appends the label (evicting the oldest when full) and returns an event
  /// if the committed state changed. Classifications below the confidence
  /// floor are dropped without touching the ring.
  std::optional<ActuationEvent> push(const Classification& c);

  /// Label-only push, timestamped `at`.
  std::optional<ActuationEvent> push(ClassLabel label, Timestamp at = {});

  /// The label whose count exceeds capacity/2, if any.
  std::optional<ClassLabel> majority() const;

  ClassLabel committed() const {
    return committed_.load(std::memory_order_acquire);
  }

  int capacity() const { return capacity_; }
  std::size_t size() const { return size_; }
  std::size_t dropped() const { return dropped_; }

  /// Ring contents, oldest first.
  std::vector<ClassLabel> contents() const;

 private:
  int capacity_;
  std::optional<double> confidence_floor_;
  std::vector<ClassLabel> ring_;
  std::size_t head_ = 0;  // next write slot
  std::size_t size_ = 0;
  std::size_t dropped_ = 0;
  std::vector<int> counts_;
  std::atomic<ClassLabel> committed_{ClassLabel::kNone};
};

}  // namespace ew
