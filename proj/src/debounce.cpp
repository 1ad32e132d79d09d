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

#include "ew/error.hpp"

namespace ew {

DebounceQueue::DebounceQueue(int capacity,
                             std::optional<double> confidence_floor)
    : capacity_(capacity),
      confidence_floor_(confidence_floor),
      counts_(kNumCategories, 0) {
  if (capacity_ < 1) {
    throw Error(ErrorKind::kInvalidArgument,
                "queue capacity must be >= 1, got " + std::to_string(capacity));
  }
  if (confidence_floor_ &&
      !(*confidence_floor_ >= 0.0 && *confidence_floor_ <= 1.0)) {
    throw Error(ErrorKind::kInvalidArgument,
                "confidence floor must lie in [0,1]");
  }
  ring_.assign(static_cast<std::size_t>(capacity_), ClassLabel::kNone);
}

std::optional<ActuationEvent> DebounceQueue::push(const Classification& c) {
  if (confidence_floor_ && c.confidence < *confidence_floor_) {
    ++dropped_;
    return std::nullopt;
  }
  return push(c.label, c.frame_ts);
}

std::optional<ActuationEvent> DebounceQueue::push(ClassLabel label,
                                                  Timestamp at) {
  const std::size_t slot_index = category_index(label);
  const auto cap = static_cast<std::size_t>(capacity_);
  if (size_ == cap) {
    --counts_[category_index(ring_[head_])];
  } else {
    ++size_;
  }
  ring_[head_] = label;
  ++counts_[slot_index];
  head_ = (head_ + 1) % cap;

  const auto winner = majority();
  const ClassLabel previous = committed();
  if (!winner || *winner == previous) return std::nullopt;

  committed_.store(*winner, std::memory_order_release);
  return ActuationEvent{*winner, previous, at,
                        counts_[category_index(*winner)]};
}

std::optional<ClassLabel> DebounceQueue::majority() const {
  for (ClassLabel c : kCategories) {
    if (2 * counts_[category_index(c)] > capacity_) return c;
  }
  return std::nullopt;
}

std::vector<ClassLabel> DebounceQueue::contents() const {
  std::vector<ClassLabel> out;
  out.reserve(size_);
  const auto cap = static_cast<std::size_t>(capacity_);
  const std::size_t start = (head_ + cap - size_) % cap;
  for (std::size_t i = 0; i < size_; ++i) out.push_back(ring_[(start + i) % cap]);
  return out;
}

}  // namespace ew
