// Copyright 2026 The starbody Authors.
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

#pragma once

#include <algorithm>
#include <cstddef>
#include <limits>
#include <numeric>
#include <queue>
#include <utility>
#include <vector>

#include "starbody/core.hpp"

namespace starbody::detail {

// Static k-d tree over the columns of a point matrix.
class KdTree {
 public:
  explicit KdTree(Mat points) : points_(std::move(points)) {
    order_.resize(static_cast<std::size_t>(points_.cols()));
    std::iota(order_.begin(), order_.end(), 0);
    nodes_.reserve(order_.size());
    root_ = build(0, order_.size(), 0);
  }

  std::size_t size() const { return order_.size(); }
  const Mat& points() const { return points_; }

  // Indices of the m nearest points, nearest first, with squared distances.
  std::vector<std::pair<double, std::size_t>> nearest(const Vec& q, std::size_t m) const {
    m = std::min(m, order_.size());
    Heap heap;
    search(root_, q, m, heap);
    std::vector<std::pair<double, std::size_t>> out;
    out.reserve(heap.size());
    while (!heap.empty()) {
      out.push_back(heap.top());
      heap.pop();
    }
    std::reverse(out.begin(), out.end());
    return out;
  }

 private:
  static constexpr std::size_t kLeaf = 8;
  static constexpr int kNone = -1;
  using Heap = std::priority_queue<std::pair<double, std::size_t>>;

  struct Node {
    std::size_t begin, end;
    int axis = -1;
    double split = 0.0;
    int left = kNone, right = kNone;
  };

  int build(std::size_t begin, std::size_t end, int depth) {
    Node node{begin, end};
    const int id = static_cast<int>(nodes_.size());
    nodes_.push_back(node);
    if (end - begin <= kLeaf) return id;
    const Eigen::Index dim = points_.rows();
    Vec lo = Vec::Constant(dim, std::numeric_limits<double>::infinity());
    Vec hi = -lo;
    for (std::size_t i = begin; i < end; ++i) {
      lo = lo.cwiseMin(points_.col(static_cast<Eigen::Index>(order_[i])));
      hi = hi.cwiseMax(points_.col(static_cast<Eigen::Index>(order_[i])));
    }
    Eigen::Index axis = 0;
    (hi - lo).maxCoeff(&axis);
    (void)depth;
    const std::size_t mid = begin + (end - begin) / 2;
    std::nth_element(order_.begin() + static_cast<std::ptrdiff_t>(begin),
                     order_.begin() + static_cast<std::ptrdiff_t>(mid),
                     order_.begin() + static_cast<std::ptrdiff_t>(end),
                     [&](std::size_t a, std::size_t b) {
                       return points_(axis, static_cast<Eigen::Index>(a)) <
                              points_(axis, static_cast<Eigen::Index>(b));
                     });
    const double split = points_(axis, static_cast<Eigen::Index>(order_[mid]));
    const int left = build(begin, mid, depth + 1);
    const int right = build(mid, end, depth + 1);
    nodes_[static_cast<std::size_t>(id)].axis = static_cast<int>(axis);
    nodes_[static_cast<std::size_t>(id)].split = split;
    nodes_[static_cast<std::size_t>(id)].left = left;
    nodes_[static_cast<std::size_t>(id)].right = right;
    return id;
  }

  void search(int id, const Vec& q, std::size_t m, Heap& heap) const {
    const Node& node = nodes_[static_cast<std::size_t>(id)];
    if (node.axis < 0) {
      for (std::size_t i = node.begin; i < node.end; ++i) {
        const std::size_t idx = order_[i];
        const double d = (points_.col(static_cast<Eigen::Index>(idx)) - q).squaredNorm();
        if (heap.size() < m) {
          heap.emplace(d, idx);
        } else if (d < heap.top().first) {
          heap.pop();
          heap.emplace(d, idx);
        }
      }
      return;
    }
    const double diff = q[node.axis] - node.split;
    const int near = diff < 0.0 ? node.left : node.right;
    const int far = diff < 0.0 ? node.right : node.left;
    search(near, q, m, heap);
    if (heap.size() < m || diff * diff < heap.top().first) search(far, q, m, heap);
  }

  Mat points_;
  std::vector<std::size_t> order_;
  std::vector<Node> nodes_;
  int root_ = 0;
};

}  // namespace starbody::detail
