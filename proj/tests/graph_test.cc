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

#include <random>

#include <gtest/gtest.h>

#include "oracles.h"
#include "smult/error.h"

namespace smult {
namespace {

std::vector<std::pair<std::size_t, std::size_t>> Pairs(const FiniteGraph& g) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (const Edge& e : g.edges()) out.emplace_back(e.u, e.v);
  return out;
}

FiniteGraph RandomGraph(std::mt19937_64& rng, std::size_t n, double p) {
  std::bernoulli_distribution coin(p);
  std::vector<Edge> edges;
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) {
      if (coin(rng)) edges.push_back({u, v});
    }
  }
  return FiniteGraph(n, edges);
}

TEST(FiniteGraph, RejectsSelfLoops) {
  EXPECT_THROW(FiniteGraph(3, {{1, 1}}), Error);
}

TEST(FiniteGraph, RejectsOutOfRangeAndDuplicateEdges) {
  EXPECT_THROW(FiniteGraph(2, {{0, 2}}), Error);
  EXPECT_THROW(FiniteGraph(3, {{0, 1}, {1, 0}}), Error);
}

TEST(FiniteGraph, EdgesAreSortedAndSymmetric) {
  const FiniteGraph g(4, {{2, 3}, {1, 0}, {0, 2}});
  ASSERT_EQ(g.edge_count(), 3u);
  EXPECT_EQ(g.edges()[0], (Edge{0, 1}));
  EXPECT_EQ(g.edges()[1], (Edge{0, 2}));
  EXPECT_EQ(g.edges()[2], (Edge{2, 3}));
  EXPECT_TRUE(g.has_edge(1, 0));
  EXPECT_TRUE(g.has_edge(0, 1));
  EXPECT_FALSE(g.has_edge(1, 3));
  EXPECT_EQ(g.degree(0), 2u);
  EXPECT_EQ(g.max_degree(), 2u);
}

TEST(PathGraph, Small) {
  EXPECT_THROW(PathGraph(0), Error);
  const FiniteGraph one = PathGraph(1);
  EXPECT_EQ(one.vertex_count(), 1u);
  EXPECT_EQ(one.edge_count(), 0u);
  const FiniteGraph three = PathGraph(3);
  ASSERT_EQ(three.edge_count(), 2u);
  EXPECT_EQ(three.edges()[0], (Edge{0, 1}));
  EXPECT_EQ(three.edges()[1], (Edge{1, 2}));
  EXPECT_EQ(PathGraph(5).vertex_count(), 5u);
  EXPECT_EQ(PathGraph(5).edge_count(), 4u);
}

TEST(AdjacencyMatrix, SmallCases) {
  const auto empty = AdjacencyMatrix(FiniteGraph(3, {}));
  EXPECT_EQ(empty.cwiseAbs().sum(), 0.0);
  const auto p2 = AdjacencyMatrix(PathGraph(2));
  EXPECT_EQ(p2(0, 0), 0.0);
  EXPECT_EQ(p2(0, 1), 1.0);
  EXPECT_EQ(p2(1, 0), 1.0);
  EXPECT_EQ(p2(1, 1), 0.0);
  const auto tri = AdjacencyMatrix(FiniteGraph(3, {{0, 1}, {1, 2}, {0, 2}}));
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) EXPECT_EQ(tri(i, j), i == j ? 0.0 : 1.0);
  }
}

TEST(AdjacencyMatrix, SymmetricZeroDiagonalAndMatchesSparse) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const FiniteGraph g = RandomGraph(rng, 3 + trial, 0.3);
    const auto a = AdjacencyMatrix(g);
    EXPECT_TRUE(a.isApprox(a.transpose(), 0.0));
    EXPECT_EQ(a.diagonal().cwiseAbs().sum(), 0.0);
    EXPECT_EQ((Eigen::MatrixXd(SparseAdjacency(g)) - a).cwiseAbs().maxCoeff(), 0.0);
  }
}

TEST(GlueSubgraphs, SingleVertexPiece) {
  GluedGraphSpec spec{{PathGraph(1)}, {{0}}, 1};
  const GluedGraph glued = GlueSubgraphs(spec);
  EXPECT_EQ(glued.graph.vertex_count(), 2u);
  EXPECT_EQ(glued.graph.edge_count(), 1u);
  EXPECT_EQ(glued.junctions, std::vector<Vertex>{0});
  EXPECT_EQ(glued.graph.label(0), "x_1");
}

TEST(GlueSubgraphs, RejectsInvalidAttachPoints) {
  EXPECT_THROW(GlueSubgraphs({{PathGraph(2)}, {{2}}, 1}), Error);
  EXPECT_THROW(GlueSubgraphs({{PathGraph(2)}, {{0}}, 2}), Error);
  EXPECT_THROW(GlueSubgraphs({{PathGraph(2), PathGraph(2)}, {{0}}, 1}), Error);
}

TEST(GlueSubgraphs, RepeatedAttachPointReachesBothJunctions) {
  const GluedGraph glued = GlueSubgraphs({{PathGraph(2)}, {{0, 0}}, 2});
  EXPECT_EQ(glued.graph.edge_count(), 3u);
}

TEST(GlueSubgraphs, CountFormulasOnRandomSpecs) {
  std::mt19937_64 rng(2026);
  for (int trial = 0; trial < 100; ++trial) {
    std::uniform_int_distribution<std::size_t> pieces_d(1, 5), size_d(1, 7),
        m_d(1, 4);
    const std::size_t r = pieces_d(rng);
    const std::size_t m = m_d(rng);
    GluedGraphSpec spec;
    spec.junction_count = m;
    std::size_t vertices = m;
    std::size_t edges = 0;
    for (std::size_t i = 0; i < r; ++i) {
      const FiniteGraph piece = RandomGraph(rng, size_d(rng), 0.4);
      vertices += piece.vertex_count();
      edges += piece.edge_count() + m;
      std::uniform_int_distribution<Vertex> at(0, piece.vertex_count() - 1);
      std::vector<Vertex> attach(m);
      for (auto& a : attach) a = at(rng);
      spec.pieces.push_back(piece);
      spec.attach_points.push_back(attach);
    }
    const GluedGraph glued = GlueSubgraphs(spec);
    EXPECT_EQ(glued.graph.vertex_count(), vertices);
    EXPECT_EQ(glued.graph.edge_count(), edges);
    for (std::size_t i = 0; i < r; ++i) {
      for (const Edge& e : spec.pieces[i].edges()) {
        EXPECT_TRUE(glued.graph.has_edge(glued.PieceVertex(i, e.u),
                                         glued.PieceVertex(i, e.v)));
      }
      for (std::size_t j = 0; j < m; ++j) {
        EXPECT_TRUE(glued.graph.has_edge(glued.junctions[j],
                                         glued.AttachVertex(i, j)));
      }
    }
  }
}

TEST(PrimePathsGraph, FourPiecesScaleTwo) {
  const GluedGraph g = PrimePathsGraph(4, 2);
  EXPECT_EQ(g.graph.vertex_count(), 32u);
  EXPECT_EQ(g.graph.edge_count(), 34u);
  ASSERT_EQ(g.spec.pieces.size(), 4u);
  const std::size_t sizes[] = {3, 5, 9, 13};
  for (std::size_t i = 0; i < 4; ++i) {
    EXPECT_EQ(g.spec.pieces[i].vertex_count(), sizes[i]);
    EXPECT_EQ(g.spec.attach_points[i],
              (std::vector<Vertex>{0, sizes[i] - 1}));
  }
}

TEST(PrimePathsGraph, SinglePieceIsAFiveVertexPath) {
  const GluedGraph g = PrimePathsGraph(1, 2);
  EXPECT_EQ(g.graph.vertex_count(), 5u);
  EXPECT_EQ(g.graph.edge_count(), 4u);
  const auto d = BfsDistance(g.graph, g.junctions[0], g.junctions[1]);
  ASSERT_TRUE(d.has_value());
  EXPECT_EQ(*d, 4u);
  for (Vertex v = 0; v < 5; ++v) EXPECT_LE(g.graph.degree(v), 2u);
}

TEST(PrimePathsGraph, ScaleThree) {
  const GluedGraph g = PrimePathsGraph(2, 3);
  EXPECT_EQ(g.spec.pieces[0].vertex_count(), 5u);
  EXPECT_EQ(g.spec.pieces[1].vertex_count(), 8u);
  EXPECT_THROW(PrimePathsGraph(2, 4), Error);
}

TEST(PrimePathsGraph, PieceSizesAgainstPrimeTable) {
  for (std::size_t r = 1; r <= 10; ++r) {
    const GluedGraph g = PrimePathsGraph(r, 2);
    for (std::size_t i = 0; i < r; ++i) {
      EXPECT_EQ(g.spec.pieces[i].vertex_count(),
                2 * oracle::kFirstTenPrimes[i] - 1);
    }
  }
  const auto primes = FirstPrimes(25);
  EXPECT_EQ(primes, oracle::TrialDivisionPrimes(25));
}

TEST(BfsDistance, Basics) {
  const FiniteGraph p3 = PathGraph(3);
  EXPECT_EQ(BfsDistance(p3, 1, 1), 0u);
  EXPECT_EQ(BfsDistance(p3, 0, 2), 2u);
  const FiniteGraph split(4, {{0, 1}, {2, 3}});
  EXPECT_FALSE(BfsDistance(split, 0, 3).has_value());
}

TEST(BfsDistance, MatchesFloydWarshallAndTriangleInequality) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    const FiniteGraph g = RandomGraph(rng, 10 + 4 * trial, 0.08);
    const std::size_t n = g.vertex_count();
    const auto fw = oracle::FloydWarshall(n, Pairs(g));
    std::vector<std::vector<std::optional<std::size_t>>> d(n);
    for (Vertex u = 0; u < n; ++u) d[u] = BfsDistances(g, u);
    for (Vertex u = 0; u < n; ++u) {
      for (Vertex v = 0; v < n; ++v) {
        const bool reach = fw[u][v] != std::numeric_limits<std::size_t>::max();
        ASSERT_EQ(d[u][v].has_value(), reach);
        if (reach) {
          EXPECT_EQ(*d[u][v], fw[u][v]);
        }
        for (Vertex w = 0; w < n; ++w) {
          if (d[u][v] && d[v][w]) {
            ASSERT_TRUE(d[u][w].has_value());
            EXPECT_LE(*d[u][w], *d[u][v] + *d[v][w]);
          }
        }
      }
    }
  }
}

}  // namespace
}  // namespace smult
