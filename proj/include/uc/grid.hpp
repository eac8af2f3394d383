// Copyright 2026 The uc-hybrid Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "uc/error.hpp"

namespace uc {

/// Dense unit-by-time matrix, row-major over units.
template <typename T>
class Grid {
 public:
  Grid() = default;
  Grid(std::size_t units, std::size_t steps, T fill = T{})
      : units_(units), steps_(steps), cells_(units * steps, fill) {}

  std::size_t units() const noexcept { return units_; }
  std::size_t steps() const noexcept { return steps_; }

  T& operator()(std::size_t i, std::size_t t) noexcept { return cells_[i * steps_ + t]; }
  const T& operator()(std::size_t i, std::size_t t) const noexcept {
    return cells_[i * steps_ + t];
  }

  T& at(std::size_t i, std::size_t t) {
    check(i, t);
    return (*this)(i, t);
  }
  const T& at(std::size_t i, std::size_t t) const {
    check(i, t);
    return (*this)(i, t);
  }

  std::span<T> row(std::size_t i) noexcept { return {cells_.data() + i * steps_, steps_}; }
  std::span<const T> row(std::size_t i) const noexcept {
    return {cells_.data() + i * steps_, steps_};
  }

  std::vector<T> column(std::size_t t) const {
    std::vector<T> out(units_);
    for (std::size_t i = 0; i < units_; ++i) out[i] = (*this)(i, t);
    return out;
  }

  std::span<T> flat() noexcept { return cells_; }
  std::span<const T> flat() const noexcept { return cells_; }

  bool same_shape(std::size_t units, std::size_t steps) const noexcept {
    return units_ == units && steps_ == steps;
  }

  friend bool operator==(const Grid&, const Grid&) = default;

 private:
  void check(std::size_t i, std::size_t t) const {
    if (i >= units_ || t >= steps_) {
      throw DimensionError("grid index (" + std::to_string(i) + ", " + std::to_string(t) +
                           ") outside " + std::to_string(units_) + "x" +
                           std::to_string(steps_));
    }
  }

  std::size_t units_ = 0;
  std::size_t steps_ = 0;
  std::vector<T> cells_;
};

}  // namespace uc
