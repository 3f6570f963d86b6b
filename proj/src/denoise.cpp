// Copyright 2026 The ldpnet Authors
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

#include "ldpnet/denoise.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <utility>
#include <vector>

namespace ldpnet {

namespace {

long l1_distance(const Eigen::VectorXi& a, const Eigen::VectorXi& b) {
  return (a - b).cwiseAbs().cast<long>().sum();
}

BiDegreeSequence split(const Eigen::VectorXi& v, Eigen::Index n) {
  return BiDegreeSequence{v.head(n), v.tail(n)};
}

// One unit move on the 2n-vector d.  delta is +1 or -1.
struct Move {
  Eigen::Index index;
  int delta;
};

// Marginal L1 cost of the move against the target z: -1 when it moves the
// coordinate toward z, +1 otherwise.
int move_cost(const Eigen::VectorXi& d, const Eigen::VectorXi& z, const Move& m) {
  const int before = std::abs(d[m.index] - z[m.index]);
  const int after = std::abs(d[m.index] + m.delta - z[m.index]);
  return after - before;
}

// Ordering for the repair stage's rebalancing decrements: cheapest first,
// then lowest index.
bool better_move(const Eigen::VectorXi& d, const Eigen::VectorXi& z, const Move& a,
                 const Move& b) {
  const int ca = move_cost(d, z, a), cb = move_cost(d, z, b);
  if (ca != cb) return ca < cb;
  return a.index < b.index;
}

// After clamping, every feasible unit move strictly toward equal block sums
// has marginal cost +1, so the total cost is |gap| for any allocation and the
// tie-break only shapes where the repair lands.  The repair alternates a
// decrement on the larger block with an increment on the smaller one: the
// decrement drains the block's largest entry (ties: lowest index) and sticks
// to it until it empties, while the increment stacks at the lowest feasible
// index (raising an in-degree never tightens a prefix inequality).
void equalize_sums(Eigen::VectorXi& d, Eigen::Index n) {
  bool decrement_turn = true;
  Eigen::Index drain = -1;
  for (;;) {
    const long gap = d.head(n).cast<long>().sum() - d.tail(n).cast<long>().sum();
    if (gap == 0) return;
    const Eigen::Index larger = gap > 0 ? 0 : n;   // block start offsets
    const Eigen::Index smaller = gap > 0 ? n : 0;
    Eigen::Index chosen = -1;
    int delta = 0;
    for (int attempt = 0; attempt < 2 && chosen < 0; ++attempt) {
      if (decrement_turn) {
        if (drain >= larger && drain < larger + n && d[drain] > 0) {
          chosen = drain;
        } else {
          for (Eigen::Index i = larger; i < larger + n; ++i) {
            if (d[i] > 0 && (chosen < 0 || d[i] > d[chosen])) chosen = i;
          }
          drain = chosen;
        }
        delta = -1;
      } else {
        for (Eigen::Index i = smaller; i < smaller + n; ++i) {
          if (d[i] < static_cast<int>(n - 1)) {
            chosen = i;
            break;
          }
        }
        delta = +1;
      }
      if (chosen < 0) decrement_turn = !decrement_turn;
    }
    d[chosen] += delta;
    decrement_turn = !decrement_turn;
  }
}

// Largest violated FCA prefix inequality; returns k in 1..n and the sorted
// order, or k = 0 when none is violated.
struct Violation {
  Eigen::Index k = 0;
  long amount = 0;
  std::vector<Eigen::Index> order;  // node ids sorted by (out desc, in desc)
};

Violation worst_violation(const Eigen::VectorXi& d, Eigen::Index n) {
  Violation v;
  v.order.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) v.order[i] = i;
  std::sort(v.order.begin(), v.order.end(), [&](Eigen::Index a, Eigen::Index b) {
    if (d[a] != d[b]) return d[a] > d[b];
    if (d[n + a] != d[n + b]) return d[n + a] > d[n + b];
    return a < b;
  });
  long lhs = 0;
  for (Eigen::Index k = 1; k <= n; ++k) {
    lhs += d[v.order[k - 1]];
    long rhs = 0;
    for (Eigen::Index i = 0; i < n; ++i) {
      const int cap = (i < k) ? static_cast<int>(k - 1) : static_cast<int>(k);
      rhs += std::min(d[n + v.order[i]], cap);
    }
    if (lhs - rhs > v.amount) {
      v.amount = lhs - rhs;
      v.k = k;
    }
  }
  return v;
}

}  // namespace

DenoiseResult denoise_l1_heuristic(const IntegerBiSequence& z, Eigen::Index n) {
  if (z.values.size() != 2 * n || n < 2) {
    throw std::invalid_argument("denoise_l1: sequence length must be 2n, n >= 2");
  }
  Eigen::VectorXi d = z.values.cwiseMax(0).cwiseMin(static_cast<int>(n - 1));
  equalize_sums(d, n);

  // Each round lowers the out side inside the violated prefix and rebalances
  // with the cheapest in-side decrement, keeping the block sums equal; the
  // total sum strictly decreases, and the all-zero sequence is graphical, so
  // the loop terminates.
  while (!is_bigraphical(d, n)) {
    const Violation v = worst_violation(d, n);
    Eigen::Index dec_out = -1;
    for (Eigen::Index pos = 0; pos < v.k; ++pos) {
      const Eigen::Index node = v.order[pos];
      if (d[node] > 0 && (dec_out == -1 || node < dec_out)) dec_out = node;
    }
    d[dec_out] -= 1;
    Move best{0, 0};
    bool found = false;
    for (Eigen::Index j = n; j < 2 * n; ++j) {
      if (d[j] == 0) continue;
      Move m{j, -1};
      if (!found || better_move(d, z.values, m, best)) {
        best = m;
        found = true;
      }
    }
    d[best.index] += best.delta;
  }

  DenoiseResult result;
  result.sequence = split(d, n);
  result.l1_cost = l1_distance(d, z.values);
  result.exact = false;
  return result;
}

DenoiseResult brute_force_denoise_oracle(const IntegerBiSequence& z, Eigen::Index n) {
  if (n > kDenoiseOracleMaxNodes) {
    throw std::domain_error("brute_force_denoise_oracle: n too large to enumerate");
  }
  if (z.values.size() != 2 * n || n < 2) {
    throw std::invalid_argument("brute_force_denoise_oracle: sequence length must be 2n");
  }
  const int cells = static_cast<int>(n * (n - 1));
  long best_cost = std::numeric_limits<long>::max();
  Eigen::VectorXi best(2 * n);
  Eigen::VectorXi d(2 * n);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << cells); ++mask) {
    d.setZero();
    int bit = 0;
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index j = 0; j < n; ++j) {
        if (i == j) continue;
        if (mask >> bit & 1) {
          ++d[i];
          ++d[n + j];
        }
        ++bit;
      }
    }
    const long cost = l1_distance(d, z.values);
    if (cost < best_cost ||
        (cost == best_cost &&
         std::lexicographical_compare(d.data(), d.data() + 2 * n, best.data(), best.data() + 2 * n))) {
      best_cost = cost;
      best = d;
    }
  }
  DenoiseResult result;
  result.sequence = split(best, n);
  result.l1_cost = best_cost;
  result.exact = true;
  return result;
}

DenoiseResult denoise_l1(const IntegerBiSequence& z, Eigen::Index n) {
  if (n <= kDenoiseOracleMaxNodes) return brute_force_denoise_oracle(z, n);
  return denoise_l1_heuristic(z, n);
}

}  // namespace ldpnet
