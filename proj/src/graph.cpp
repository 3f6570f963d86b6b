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

#include "ldpnet/graph.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <map>
#include <numeric>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace ldpnet {

DirectedGraph::DirectedGraph(Eigen::Index n) : adj_(AdjacencyMatrix::Zero(n, n)) {
  if (n < 2) throw std::invalid_argument("DirectedGraph: need at least 2 nodes");
}

DirectedGraph::DirectedGraph(AdjacencyMatrix adjacency) : adj_(std::move(adjacency)) {
  if (adj_.rows() != adj_.cols() || adj_.rows() < 2) {
    throw std::invalid_argument("DirectedGraph: adjacency must be square, n >= 2");
  }
  for (Eigen::Index i = 0; i < adj_.rows(); ++i) {
    if (adj_(i, i) != 0) throw std::invalid_argument("DirectedGraph: nonzero diagonal");
    for (Eigen::Index j = 0; j < adj_.cols(); ++j) {
      if (adj_(i, j) > 1) throw std::invalid_argument("DirectedGraph: entries must be 0/1");
    }
  }
}

Eigen::Index DirectedGraph::edge_count() const {
  return adj_.cast<Eigen::Index>().sum();
}

Eigen::VectorXi BiDegreeSequence::stacked() const {
  Eigen::VectorXi v(out.size() + in.size());
  v << out, in;
  return v;
}

EdgeListResult load_edge_list(std::istream& input) {
  std::vector<std::pair<std::int64_t, std::int64_t>> raw_edges;
  std::set<std::int64_t> label_set;
  std::size_t self_loops = 0;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(input, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream tokens(line);
    std::string a, b, extra;
    if (!(tokens >> a)) continue;  // blank
    if (!(tokens >> b) || (tokens >> extra)) {
      throw std::runtime_error("edge list parse error at line " + std::to_string(line_no) +
                               ": expected two node labels");
    }
    std::int64_t u, v;
    std::size_t pos_u = 0, pos_v = 0;
    try {
      u = std::stoll(a, &pos_u);
      v = std::stoll(b, &pos_v);
    } catch (const std::exception&) {
      pos_u = pos_v = 0;
    }
    if (pos_u != a.size() || pos_v != b.size()) {
      throw std::runtime_error("edge list parse error at line " + std::to_string(line_no) +
                               ": non-integer node label");
    }
    if (u == v) {
      ++self_loops;
      continue;
    }
    raw_edges.emplace_back(u, v);
    label_set.insert(u);
    label_set.insert(v);
  }
  if (label_set.size() < 2) {
    throw std::domain_error("edge list must mention at least 2 distinct nodes");
  }

  std::vector<std::int64_t> labels(label_set.begin(), label_set.end());
  std::map<std::int64_t, Eigen::Index> index_of;
  for (std::size_t i = 0; i < labels.size(); ++i) index_of[labels[i]] = static_cast<Eigen::Index>(i);

  const auto n = static_cast<Eigen::Index>(labels.size());
  AdjacencyMatrix adj = AdjacencyMatrix::Zero(n, n);
  std::size_t duplicates = 0;
  for (const auto& [u, v] : raw_edges) {
    auto& cell = adj(index_of[u], index_of[v]);
    if (cell) {
      ++duplicates;
    } else {
      cell = 1;
    }
  }
  return EdgeListResult{DirectedGraph(std::move(adj)), std::move(labels), self_loops, duplicates};
}

EdgeListResult load_edge_list_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open edge list: " + path);
  return load_edge_list(in);
}

void write_edge_list(std::ostream& out, const DirectedGraph& g) {
  const auto n = g.node_count();
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      if (g.edge(i, j)) out << i << ' ' << j << '\n';
    }
  }
}

BiDegreeSequence bi_degree_sequence(const DirectedGraph& g) {
  const auto counts = g.adjacency().cast<int>();
  BiDegreeSequence s;
  s.out = counts.rowwise().sum();
  s.in = counts.colwise().sum().transpose();
  return s;
}

bool is_bigraphical(const Eigen::VectorXi& values, Eigen::Index n) {
  if (values.size() != 2 * n || n < 1) return false;
  const auto out = values.head(n);
  const auto in = values.tail(n);
  if ((out.array() < 0).any() || (in.array() < 0).any()) return false;
  if ((out.array() > int(n - 1)).any() || (in.array() > int(n - 1)).any()) return false;
  if (out.sum() != in.sum()) return false;

  // Fulkerson-Chen-Anstee: sort pairs by out descending (in descending on
  // ties) and check every prefix inequality
  //   sum_{i<=k} a_i <= sum_{i<=k} min(b_i, k-1) + sum_{i>k} min(b_i, k).
  std::vector<std::pair<int, int>> pairs(n);
  for (Eigen::Index i = 0; i < n; ++i) pairs[i] = {out[i], in[i]};
  std::sort(pairs.begin(), pairs.end(), [](const auto& x, const auto& y) {
    if (x.first != y.first) return x.first > y.first;
    return x.second > y.second;
  });
  long lhs = 0;
  for (Eigen::Index k = 1; k <= n; ++k) {
    lhs += pairs[k - 1].first;
    long rhs = 0;
    for (Eigen::Index i = 0; i < n; ++i) {
      const int cap = (i < k) ? static_cast<int>(k - 1) : static_cast<int>(k);
      rhs += std::min(pairs[i].second, cap);
    }
    if (lhs > rhs) return false;
  }
  return true;
}

bool is_bigraphical(const IntegerBiSequence& s) {
  return is_bigraphical(s.values, s.node_count());
}

bool is_bigraphical(const BiDegreeSequence& s) {
  return is_bigraphical(s.stacked(), s.node_count());
}

Eigen::Index graph_distance(const DirectedGraph& a, const DirectedGraph& b) {
  if (a.node_count() != b.node_count()) {
    throw std::domain_error("graph_distance: node counts differ");
  }
  return (a.adjacency().cast<int>() - b.adjacency().cast<int>()).cwiseAbs().sum();
}

namespace {

SubgraphResult induce(const DirectedGraph& g, const std::vector<Eigen::Index>& kept, int rounds) {
  const auto m = static_cast<Eigen::Index>(kept.size());
  if (m < 2) throw std::domain_error("degree filtering removed all (or all but one) nodes");
  AdjacencyMatrix sub(m, m);
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = 0; j < m; ++j) {
      sub(i, j) = g.adjacency()(kept[i], kept[j]);
    }
  }
  return SubgraphResult{DirectedGraph(std::move(sub)), kept, rounds};
}

}  // namespace

SubgraphResult preprocess_subgraph(const DirectedGraph& g, int min_out, int min_in) {
  const auto n = g.node_count();
  std::vector<Eigen::Index> kept(n);
  std::iota(kept.begin(), kept.end(), Eigen::Index{0});
  int rounds = 0;
  for (;;) {
    const auto m = static_cast<Eigen::Index>(kept.size());
    Eigen::VectorXi out = Eigen::VectorXi::Zero(m), in = Eigen::VectorXi::Zero(m);
    for (Eigen::Index i = 0; i < m; ++i) {
      for (Eigen::Index j = 0; j < m; ++j) {
        if (g.adjacency()(kept[i], kept[j])) {
          ++out[i];
          ++in[j];
        }
      }
    }
    std::vector<Eigen::Index> next;
    next.reserve(kept.size());
    for (Eigen::Index i = 0; i < m; ++i) {
      if (out[i] > min_out && in[i] > min_in) next.push_back(kept[i]);
    }
    ++rounds;
    if (next.size() == kept.size()) break;
    if (next.empty()) throw std::domain_error("degree filtering removed all nodes");
    kept = std::move(next);
  }
  return induce(g, kept, rounds);
}

SubgraphResult filter_by_degree_once(const DirectedGraph& g, int min_out, int min_in) {
  const BiDegreeSequence d = bi_degree_sequence(g);
  std::vector<Eigen::Index> kept;
  for (Eigen::Index i = 0; i < g.node_count(); ++i) {
    if (d.out[i] > min_out && d.in[i] > min_in) kept.push_back(i);
  }
  return induce(g, kept, 1);
}

}  // namespace ldpnet
