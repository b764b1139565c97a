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

#include "smult/cayley.h"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <string>
#include <utility>

#include "smult/error.h"

namespace smult {

Vertex CayleyTemplate::anchor(int i) const {
  if (i == 0 || static_cast<std::size_t>(std::abs(i)) > generator_count()) {
    throw Error(ErrorCode::kInvalidArgument,
                "anchor index " + std::to_string(i) + " out of range");
  }
  const auto k = static_cast<std::size_t>(std::abs(i)) - 1;
  return i < 0 ? minus_anchors[k] : plus_anchors[k];
}

std::vector<Vertex> CayleyTemplate::AnchorSet() const {
  std::vector<Vertex> out = minus_anchors;
  out.insert(out.end(), plus_anchors.begin(), plus_anchors.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

CayleyTemplate TemplateFromJunctions(const GluedGraph& h,
                                     AnchorAssignment assignment) {
  if (assignment.minus.size() != assignment.plus.size()) {
    throw Error(ErrorCode::kInvalidArgument,
                "anchor assignment needs equally many v_{-i} and v_i");
  }
  CayleyTemplate t;
  t.base = h.graph;
  auto junction = [&](std::size_t j) {
    if (j == 0 || j > h.junctions.size()) {
      throw Error(ErrorCode::kInvalidArgument,
                  "anchor assignment names junction x_" + std::to_string(j) +
                      " but only " + std::to_string(h.junctions.size()) +
                      " exist");
    }
    return h.junctions[j - 1];
  };
  for (std::size_t k = 0; k < assignment.plus.size(); ++k) {
    t.minus_anchors.push_back(junction(assignment.minus[k]));
    t.plus_anchors.push_back(junction(assignment.plus[k]));
  }
  t.anchor_assignment = std::move(assignment);
  return t;
}

std::vector<Vertex> CayleyGraph::FiberVertices(std::size_t g) const {
  std::vector<Vertex> out(base_size());
  for (Vertex v = 0; v < base_size(); ++v) out[v] = VertexOf(v, g);
  return out;
}

std::size_t CayleyGraph::InterFiberEdgeCount() const {
  return graph.edge_count() - group.size() * tmpl.base.edge_count();
}

CayleyGraph BuildCayleyGraph(const CayleyTemplate& tmpl, const Group& group,
                             std::size_t vertex_cap) {
  const FiniteGraph& h = tmpl.base;
  const std::size_t n = tmpl.generator_count();
  if (tmpl.minus_anchors.size() != n) {
    throw Error(ErrorCode::kInvalidArgument,
                "template has mismatched v_{-i} / v_i counts");
  }
  if (n != group.generator_count()) {
    throw Error(ErrorCode::kInvalidArgument,
                "template has " + std::to_string(n) + " anchor pairs but " +
                    group.description() + " has " +
                    std::to_string(group.generator_count()) + " generators");
  }
  for (Vertex a : tmpl.AnchorSet()) {
    if (a >= h.vertex_count()) {
      throw Error(ErrorCode::kInvalidArgument,
                  "anchor " + std::to_string(a) + " is not a vertex of H");
    }
  }
  const std::size_t nh = h.vertex_count();
  if (nh != 0 && group.size() > vertex_cap / nh) {
    throw Error(ErrorCode::kTooLarge,
                "Cayley graph would exceed " + std::to_string(vertex_cap) +
                    " vertices");
  }

  CayleyGraph cg{FiniteGraph(), group, tmpl, {}, {}, {}};
  const std::size_t total = nh * group.size();
  cg.fiber.resize(total);
  cg.base_vertex.resize(total);

  std::vector<Edge> edges;
  edges.reserve(group.size() * (h.edge_count() + n));
  std::map<Vertex, std::string> labels;
  for (std::size_t g = 0; g < group.size(); ++g) {
    for (Vertex v = 0; v < nh; ++v) {
      const Vertex x = cg.VertexOf(v, g);
      cg.fiber[x] = g;
      cg.base_vertex[x] = v;
      labels[x] = "(" + h.label(v).value_or(std::to_string(v)) + "," +
                  group.label(g) + ")";
    }
    for (const Edge& e : h.edges()) {
      edges.push_back({cg.VertexOf(e.u, g), cg.VertexOf(e.v, g)});
    }
    if (!group.interior(g)) cg.boundary_fibers.push_back(g);
  }
  for (std::size_t g = 0; g < group.size(); ++g) {
    for (std::size_t i = 0; i < n; ++i) {
      const auto next = group.TimesGenerator(g, i);
      if (!next) continue;
      const Vertex a = cg.VertexOf(tmpl.minus_anchors[i], g);
      const Vertex b = cg.VertexOf(tmpl.plus_anchors[i], *next);
      if (a == b) {
        throw Error(ErrorCode::kInvalidArgument,
                    "generator " + std::to_string(i + 1) +
                        " produces a self-loop at fiber " + group.label(g));
      }
      edges.push_back({a, b});
    }
  }
  // FiniteGraph rejects coinciding edges, which here means two distinct
  // generator edges (or a generator edge and an edge of H) share endpoints.
  cg.graph = FiniteGraph(total, std::move(edges), std::move(labels));
  return cg;
}

std::vector<Vertex> LeftTranslation(const CayleyGraph& cg, std::size_t g) {
  if (!cg.group.is_finite()) {
    throw Error(ErrorCode::kUnsupported,
                "left translation needs a finite group, got " +
                    cg.group.description());
  }
  std::vector<Vertex> image(cg.graph.vertex_count());
  for (Vertex x = 0; x < image.size(); ++x) {
    image[x] = cg.VertexOf(cg.base_vertex[x], *cg.group.Multiply(g, cg.fiber[x]));
  }
  return image;
}

}  // namespace smult
