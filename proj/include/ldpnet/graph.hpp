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

#ifndef LDPNET_GRAPH_HPP_
#define LDPNET_GRAPH_HPP_

#include <Eigen/Core>

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace ldpnet {

using AdjacencyMatrix = Eigen::Matrix<std::uint8_t, Eigen::Dynamic, Eigen::Dynamic>;

// Simple loopless digraph on n >= 2 nodes, stored as a dense 0/1 adjacency
// matrix with entry (i, j) = 1 iff there is a directed edge i -> j.  The
// diagonal is identically zero.  Instances are immutable after construction
// and safe to share across threads.
class DirectedGraph {
 public:
  // Empty graph on n nodes.
  explicit DirectedGraph(Eigen::Index n);

  // Takes ownership of an adjacency matrix; entries must be 0/1 with a zero
  // diagonal, otherwise throws std::invalid_argument.
  explicit DirectedGraph(AdjacencyMatrix adjacency);

  Eigen::Index node_count() const { return adj_.rows(); }
  bool edge(Eigen::Index i, Eigen::Index j) const { return adj_(i, j) != 0; }
  const AdjacencyMatrix& adjacency() const { return adj_; }
  Eigen::Index edge_count() const;

 private:
  AdjacencyMatrix adj_;
};

// Out/in degree pair of a digraph.  When extracted from a graph the two
// blocks have equal sums and entries in [0, n-1].
struct BiDegreeSequence {
  Eigen::VectorXi out;
  Eigen::VectorXi in;

  Eigen::Index node_count() const { return out.size(); }
  // (out; in) as one vector of length 2n.
  Eigen::VectorXi stacked() const;
};

// Unconstrained integer bi-sequence (out block then in block); entries may be
// negative or exceed n-1.  Used for noisy releases.
struct IntegerBiSequence {
  Eigen::VectorXi values;

  Eigen::Index node_count() const { return values.size() / 2; }
};

struct EdgeListResult {
  DirectedGraph graph;
  // Compacted index -> original label, sorted ascending.
  std::vector<std::int64_t> labels;
  std::size_t self_loops_dropped = 0;
  std::size_t duplicates_collapsed = 0;
};

struct SubgraphResult {
  DirectedGraph graph;
  // New index -> index in the input graph.
  std::vector<Eigen::Index> kept;
  // Number of pruning passes performed.
  int rounds = 0;
};

// Parses a line-oriented edge list: "u v" per line, '#' starts a comment,
// blank lines are ignored.  Labels are arbitrary 64-bit integers and are
// compacted to 0..n-1 in ascending label order.  Duplicate edges collapse and
// self-loops are dropped (both counted).  Throws std::runtime_error with the
// line number on a malformed line and std::domain_error if fewer than two
// distinct nodes appear.
EdgeListResult load_edge_list(std::istream& input);
EdgeListResult load_edge_list_file(const std::string& path);

void write_edge_list(std::ostream& out, const DirectedGraph& g);

BiDegreeSequence bi_degree_sequence(const DirectedGraph& g);

// True iff the length-2n integer sequence (out block then in block) is the
// bi-degree sequence of some simple loopless digraph on n nodes, by the
// Fulkerson-Chen-Anstee criterion.  Negative entries, entries above n-1, or
// mismatched block sums are rejected immediately.
bool is_bigraphical(const Eigen::VectorXi& values, Eigen::Index n);
bool is_bigraphical(const IntegerBiSequence& s);
bool is_bigraphical(const BiDegreeSequence& s);

// Hamming distance between the off-diagonal adjacency entries.  Throws
// std::domain_error on mismatched node counts.
Eigen::Index graph_distance(const DirectedGraph& a, const DirectedGraph& b);

// Keeps nodes whose out-degree exceeds min_out and in-degree exceeds min_in,
// recomputing induced degrees until a fixed point, then relabels to 0..m-1.
// Throws std::domain_error when nothing survives.
SubgraphResult preprocess_subgraph(const DirectedGraph& g, int min_out, int min_in);

// Same filter applied to the input degrees only (no iteration); induced
// degrees of the result may fall below the thresholds.
SubgraphResult filter_by_degree_once(const DirectedGraph& g, int min_out, int min_in);

}  // namespace ldpnet

#endif  // LDPNET_GRAPH_HPP_
