// Copyright 2026 The smult Authors
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

#ifndef SMULT_GRAPH_H_
#define SMULT_GRAPH_H_

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

namespace smult {

using Vertex = std::size_t;

// Unordered vertex pair stored with u < v.
struct Edge {
  Vertex u = 0;
  Vertex v = 0;

  auto operator<=>(const Edge&) const = default;
};

// Canonical form of {a, b}. Does not reject a == b; FiniteGraph does.
inline Edge MakeEdge(Vertex a, Vertex b) {
  return a < b ? Edge{a, b} : Edge{b, a};
}

// Undirected simple graph on the dense vertex set 0..n-1. Immutable once
// built; labels are opaque strings carrying the domain identity of a vertex.
class FiniteGraph {
 public:
  FiniteGraph() = default;

  // Edges may be given in any order and orientation. Self-loops, endpoints
  // outside 0..n-1 and repeated pairs raise kInvalidArgument.
  FiniteGraph(std::size_t vertex_count, std::vector<Edge> edges,
              std::map<Vertex, std::string> labels = {});

  std::size_t vertex_count() const { return vertex_count_; }
  std::size_t edge_count() const { return edges_.size(); }

  // Sorted lexicographically by (u, v).
  const std::vector<Edge>& edges() const { return edges_; }

  // Sorted ascending.
  std::span<const Vertex> neighbors(Vertex v) const { return adjacency_.at(v); }
  std::size_t degree(Vertex v) const { return adjacency_.at(v).size(); }
  std::size_t max_degree() const;
  bool has_edge(Vertex a, Vertex b) const;

  const std::map<Vertex, std::string>& labels() const { return labels_; }
  std::optional<std::string> label(Vertex v) const;

  bool operator==(const FiniteGraph& other) const {
    return vertex_count_ == other.vertex_count_ && edges_ == other.edges_;
  }

 private:
  std::size_t vertex_count_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<Vertex>> adjacency_;
  std::map<Vertex, std::string> labels_;
};

// Path 0 - 1 - ... - (k-1). k == 0 is rejected.
FiniteGraph PathGraph(std::size_t k);

Eigen::MatrixXd AdjacencyMatrix(const FiniteGraph& g);
Eigen::SparseMatrix<double> SparseAdjacency(const FiniteGraph& g);

// Graph metric; std::nullopt when v is not reachable from u.
std::optional<std::size_t> BfsDistance(const FiniteGraph& g, Vertex u,
                                       Vertex v);
std::vector<std::optional<std::size_t>> BfsDistances(const FiniteGraph& g,
                                                     Vertex source);

// Pieces H_i joined through m new junction vertices x_1..x_m: junction x_j
// is connected to attach_points[i][j] of every piece i.
struct GluedGraphSpec {
  std::vector<FiniteGraph> pieces;
  std::vector<std::vector<Vertex>> attach_points;
  std::size_t junction_count = 1;
};

// Junctions occupy indices 0..m-1, then the pieces follow in order.
struct GluedGraph {
  FiniteGraph graph;
  std::vector<Vertex> junctions;
  std::vector<Vertex> piece_offsets;
  GluedGraphSpec spec;

  Vertex PieceVertex(std::size_t piece, Vertex local) const {
    return piece_offsets.at(piece) + local;
  }
  Vertex AttachVertex(std::size_t piece, std::size_t junction) const {
    return PieceVertex(piece, spec.attach_points.at(piece).at(junction));
  }
};

GluedGraph GlueSubgraphs(const GluedGraphSpec& spec);

std::vector<std::uint64_t> FirstPrimes(std::size_t count);

// Paths of scale * p_i - 1 vertices for the first piece_count primes, both
// endpoints of every path wired to the two junctions x_1 (first endpoint)
// and x_2 (last endpoint). scale must be 2 or 3.
GluedGraph PrimePathsGraph(std::size_t piece_count, int scale = 2);

}  // namespace smult

#endif  // SMULT_GRAPH_H_
