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

#include "smult/graph.h"

#include <algorithm>
#include <deque>
#include <string>
#include <utility>

#include "smult/error.h"

namespace smult {

FiniteGraph::FiniteGraph(std::size_t vertex_count, std::vector<Edge> edges,
                         std::map<Vertex, std::string> labels)
    : vertex_count_(vertex_count),
      adjacency_(vertex_count),
      labels_(std::move(labels)) {
  for (Edge& e : edges) {
    if (e.u == e.v) {
      throw Error(ErrorCode::kInvalidArgument,
                  "self-loop at vertex " + std::to_string(e.u));
    }
    if (e.u >= vertex_count || e.v >= vertex_count) {
      throw Error(ErrorCode::kInvalidArgument,
                  "edge endpoint out of range in {" + std::to_string(e.u) +
                      "," + std::to_string(e.v) + "}");
    }
    e = MakeEdge(e.u, e.v);
  }
  std::sort(edges.begin(), edges.end());
  auto dup = std::adjacent_find(edges.begin(), edges.end());
  if (dup != edges.end()) {
    throw Error(ErrorCode::kInvalidArgument,
                "duplicate edge {" + std::to_string(dup->u) + "," +
                    std::to_string(dup->v) + "}");
  }
  for (const auto& [v, unused] : labels_) {
    if (v >= vertex_count) {
      throw Error(ErrorCode::kInvalidArgument,
                  "label for vertex " + std::to_string(v) + " out of range");
    }
  }
  edges_ = std::move(edges);
  for (const Edge& e : edges_) {
    adjacency_[e.u].push_back(e.v);
    adjacency_[e.v].push_back(e.u);
  }
  for (auto& nbrs : adjacency_) std::sort(nbrs.begin(), nbrs.end());
}

std::size_t FiniteGraph::max_degree() const {
  std::size_t d = 0;
  for (const auto& nbrs : adjacency_) d = std::max(d, nbrs.size());
  return d;
}

bool FiniteGraph::has_edge(Vertex a, Vertex b) const {
  if (a >= vertex_count_ || b >= vertex_count_) return false;
  const auto& nbrs = adjacency_[a];
  return std::binary_search(nbrs.begin(), nbrs.end(), b);
}

std::optional<std::string> FiniteGraph::label(Vertex v) const {
  auto it = labels_.find(v);
  if (it == labels_.end()) return std::nullopt;
  return it->second;
}

FiniteGraph PathGraph(std::size_t k) {
  if (k == 0) {
    throw Error(ErrorCode::kInvalidArgument, "path graph needs k >= 1");
  }
  std::vector<Edge> edges;
  edges.reserve(k - 1);
  for (Vertex i = 0; i + 1 < k; ++i) edges.push_back({i, i + 1});
  return FiniteGraph(k, std::move(edges));
}

Eigen::MatrixXd AdjacencyMatrix(const FiniteGraph& g) {
  const auto n = static_cast<Eigen::Index>(g.vertex_count());
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  for (const Edge& e : g.edges()) {
    m(static_cast<Eigen::Index>(e.u), static_cast<Eigen::Index>(e.v)) = 1.0;
    m(static_cast<Eigen::Index>(e.v), static_cast<Eigen::Index>(e.u)) = 1.0;
  }
  return m;
}

Eigen::SparseMatrix<double> SparseAdjacency(const FiniteGraph& g) {
  const auto n = static_cast<Eigen::Index>(g.vertex_count());
  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(2 * g.edge_count());
  for (const Edge& e : g.edges()) {
    const auto u = static_cast<Eigen::Index>(e.u);
    const auto v = static_cast<Eigen::Index>(e.v);
    triplets.emplace_back(u, v, 1.0);
    triplets.emplace_back(v, u, 1.0);
  }
  Eigen::SparseMatrix<double> m(n, n);
  m.setFromTriplets(triplets.begin(), triplets.end());
  return m;
}

std::vector<std::optional<std::size_t>> BfsDistances(const FiniteGraph& g,
                                                     Vertex source) {
  if (source >= g.vertex_count()) {
    throw Error(ErrorCode::kInvalidArgument, "BFS source out of range");
  }
  std::vector<std::optional<std::size_t>> dist(g.vertex_count());
  std::deque<Vertex> queue{source};
  dist[source] = 0;
  while (!queue.empty()) {
    const Vertex v = queue.front();
    queue.pop_front();
    for (Vertex w : g.neighbors(v)) {
      if (!dist[w]) {
        dist[w] = *dist[v] + 1;
        queue.push_back(w);
      }
    }
  }
  return dist;
}

std::optional<std::size_t> BfsDistance(const FiniteGraph& g, Vertex u,
                                       Vertex v) {
  if (v >= g.vertex_count()) {
    throw Error(ErrorCode::kInvalidArgument, "BFS target out of range");
  }
  return BfsDistances(g, u)[v];
}

GluedGraph GlueSubgraphs(const GluedGraphSpec& spec) {
  const std::size_t m = spec.junction_count;
  if (m == 0) {
    throw Error(ErrorCode::kInvalidArgument, "junction_count must be >= 1");
  }
  if (spec.attach_points.size() != spec.pieces.size()) {
    throw Error(ErrorCode::kInvalidArgument,
                "one attach-point list is required per piece");
  }

  GluedGraph out;
  out.spec = spec;
  std::size_t n = m;
  for (std::size_t i = 0; i < spec.pieces.size(); ++i) {
    const auto& attach = spec.attach_points[i];
    if (attach.size() != m) {
      throw Error(ErrorCode::kInvalidArgument,
                  "piece " + std::to_string(i) + " has " +
                      std::to_string(attach.size()) +
                      " attach points, expected " + std::to_string(m));
    }
    for (Vertex a : attach) {
      if (a >= spec.pieces[i].vertex_count()) {
        throw Error(ErrorCode::kInvalidArgument,
                    "attach point " + std::to_string(a) +
                        " is not a vertex of piece " + std::to_string(i));
      }
    }
    out.piece_offsets.push_back(n);
    n += spec.pieces[i].vertex_count();
  }

  std::vector<Edge> edges;
  std::map<Vertex, std::string> labels;
  for (std::size_t j = 0; j < m; ++j) {
    out.junctions.push_back(j);
    labels[j] = "x_" + std::to_string(j + 1);
  }
  for (std::size_t i = 0; i < spec.pieces.size(); ++i) {
    const Vertex offset = out.piece_offsets[i];
    const FiniteGraph& piece = spec.pieces[i];
    for (const Edge& e : piece.edges()) {
      edges.push_back({offset + e.u, offset + e.v});
    }
    for (Vertex local = 0; local < piece.vertex_count(); ++local) {
      labels[offset + local] =
          "H" + std::to_string(i + 1) + ":" + std::to_string(local);
    }
    for (std::size_t j = 0; j < m; ++j) {
      edges.push_back({out.junctions[j], offset + spec.attach_points[i][j]});
    }
  }
  out.graph = FiniteGraph(n, std::move(edges), std::move(labels));
  return out;
}

std::vector<std::uint64_t> FirstPrimes(std::size_t count) {
  std::vector<std::uint64_t> primes;
  for (std::uint64_t c = 2; primes.size() < count; ++c) {
    bool prime = true;
    for (std::uint64_t p : primes) {
      if (p * p > c) break;
      if (c % p == 0) {
        prime = false;
        break;
      }
    }
    if (prime) primes.push_back(c);
  }
  return primes;
}

GluedGraph PrimePathsGraph(std::size_t piece_count, int scale) {
  if (piece_count == 0) {
    throw Error(ErrorCode::kInvalidArgument, "piece_count must be >= 1");
  }
  if (scale != 2 && scale != 3) {
    throw Error(ErrorCode::kInvalidArgument, "scale must be 2 or 3");
  }
  GluedGraphSpec spec;
  spec.junction_count = 2;
  for (std::uint64_t p : FirstPrimes(piece_count)) {
    const std::size_t size = static_cast<std::size_t>(scale) * p - 1;
    spec.pieces.push_back(PathGraph(size));
    spec.attach_points.push_back({0, size - 1});
  }
  return GlueSubgraphs(spec);
}

}  // namespace smult
