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

#ifndef SMULT_CAYLEY_H_
#define SMULT_CAYLEY_H_

#include <cstddef>
#include <optional>
#include <vector>

#include "smult/graph.h"
#include "smult/group.h"

namespace smult {

inline constexpr std::size_t kDefaultCayleyVertexCap = 200'000;

// Junction indices (1-based) chosen for v_{-i} and v_i, i = 1..n.
struct AnchorAssignment {
  std::vector<std::size_t> minus;
  std::vector<std::size_t> plus;
};

// Base graph H with anchors v_{-i} = minus_anchors[i-1], v_i =
// plus_anchors[i-1]. Anchors may repeat.
struct CayleyTemplate {
  FiniteGraph base;
  std::vector<Vertex> minus_anchors;
  std::vector<Vertex> plus_anchors;
  std::optional<AnchorAssignment> anchor_assignment;

  std::size_t generator_count() const { return plus_anchors.size(); }
  // i in {-n..-1, 1..n}.
  Vertex anchor(int i) const;
  // Distinct anchor vertices, ascending.
  std::vector<Vertex> AnchorSet() const;
};

// Anchors v_i = x_{pi(i)} on a glued graph.
CayleyTemplate TemplateFromJunctions(const GluedGraph& h,
                                     AnchorAssignment assignment);

// Finite realization of H_G. Vertex (v, g) has index g * |V(H)| + v.
struct CayleyGraph {
  FiniteGraph graph;
  Group group;
  CayleyTemplate tmpl;
  std::vector<std::size_t> fiber;       // vertex -> group element
  std::vector<Vertex> base_vertex;      // vertex -> vertex of H
  std::vector<std::size_t> boundary_fibers;

  std::size_t base_size() const { return tmpl.base.vertex_count(); }
  Vertex VertexOf(Vertex v, std::size_t g) const {
    return g * base_size() + v;
  }
  std::vector<Vertex> FiberVertices(std::size_t g) const;
  std::size_t InterFiberEdgeCount() const;
};

// Intra-fiber copies of H plus {(v_{-i}, g), (v_i, g g_i)} whenever g g_i is
// enumerated. Edges that would be self-loops or coincide with another edge
// (e.g. Z_2 with v_{-1} == v_1) are rejected with kInvalidArgument.
CayleyGraph BuildCayleyGraph(const CayleyTemplate& tmpl, const Group& group,
                             std::size_t vertex_cap = kDefaultCayleyVertexCap);

// (v, h) -> (v, g h). Finite groups only.
std::vector<Vertex> LeftTranslation(const CayleyGraph& cg, std::size_t g);

}  // namespace smult

#endif  // SMULT_CAYLEY_H_
