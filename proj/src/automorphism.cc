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

#include "smult/automorphism.h"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <string>
#include <utility>

#include "smult/error.h"

namespace smult {
namespace {

using Coloring = std::vector<std::uint64_t>;

// Replaces each value by its rank among the distinct values. Depends only on
// the values, so it commutes with any vertex relabelling.
Coloring Compress(const Coloring& raw) {
  Coloring distinct = raw;
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  Coloring out(raw.size());
  for (std::size_t v = 0; v < raw.size(); ++v) {
    out[v] = static_cast<std::uint64_t>(
        std::lower_bound(distinct.begin(), distinct.end(), raw[v]) -
        distinct.begin());
  }
  return out;
}

std::size_t ColorCount(const Coloring& c) {
  return c.empty() ? 0 : *std::max_element(c.begin(), c.end()) + 1;
}

// Iterated 1-dimensional Weisfeiler-Leman refinement to an equitable
// partition, with canonical colour names.
Coloring Refine(const FiniteGraph& g, Coloring colors) {
  std::size_t classes = ColorCount(colors);
  std::vector<std::vector<std::uint64_t>> sig(colors.size());
  while (true) {
    for (Vertex v = 0; v < colors.size(); ++v) {
      auto& s = sig[v];
      s.clear();
      for (Vertex w : g.neighbors(v)) s.push_back(colors[w]);
      std::sort(s.begin(), s.end());
      s.insert(s.begin(), colors[v]);
    }
    auto distinct = sig;
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    Coloring next(colors.size());
    for (Vertex v = 0; v < colors.size(); ++v) {
      next[v] = static_cast<std::uint64_t>(
          std::lower_bound(distinct.begin(), distinct.end(), sig[v]) -
          distinct.begin());
    }
    colors = std::move(next);
    if (distinct.size() == classes) return colors;
    classes = distinct.size();
  }
}

Coloring Individualize(const FiniteGraph& g, const Coloring& colors, Vertex v) {
  Coloring raw(colors.size());
  for (Vertex u = 0; u < colors.size(); ++u) raw[u] = 2 * colors[u];
  raw[v] += 1;
  return Refine(g, Compress(raw));
}

std::vector<std::size_t> Histogram(const Coloring& c) {
  std::vector<std::size_t> h(ColorCount(c), 0);
  for (auto x : c) ++h[x];
  return h;
}

class Search {
 public:
  Search(const FiniteGraph& g, std::size_t limit) : g_(g), limit_(limit) {}

  void Run(const Coloring& left, const Coloring& right) {
    const std::size_t n = left.size();
    if (ColorCount(left) == n) {
      Permutation p;
      p.image.resize(n);
      std::vector<Vertex> by_color(n);
      for (Vertex w = 0; w < n; ++w) by_color[right[w]] = w;
      for (Vertex v = 0; v < n; ++v) p.image[v] = by_color[left[v]];
      if (IsAutomorphism(g_, p)) {
        found_.push_back(std::move(p));
        if (found_.size() > limit_) {
          throw Error(ErrorCode::kTooLarge,
                      "automorphism group has more than " +
                          std::to_string(limit_) + " elements");
        }
      }
      return;
    }
    // First vertex of the first non-singleton cell.
    const auto hist = Histogram(left);
    std::uint64_t cell = 0;
    while (hist[cell] == 1) ++cell;
    Vertex v = 0;
    while (left[v] != cell) ++v;

    const Coloring next_left = Individualize(g_, left, v);
    const auto target = Histogram(next_left);
    for (Vertex w = 0; w < n; ++w) {
      if (right[w] != cell) continue;
      const Coloring next_right = Individualize(g_, right, w);
      if (Histogram(next_right) == target) Run(next_left, next_right);
    }
  }

  std::vector<Permutation> TakeFound() { return std::move(found_); }

 private:
  const FiniteGraph& g_;
  std::size_t limit_;
  std::vector<Permutation> found_;
};

}  // namespace

Permutation Permutation::Identity(std::size_t n) {
  Permutation p;
  p.image.resize(n);
  std::iota(p.image.begin(), p.image.end(), Vertex{0});
  return p;
}

Permutation Permutation::Compose(const Permutation& other) const {
  if (other.size() != size()) {
    throw Error(ErrorCode::kInvalidArgument, "composing permutations of different sizes");
  }
  Permutation out;
  out.image.resize(size());
  for (Vertex v = 0; v < size(); ++v) out.image[v] = image[other.image[v]];
  return out;
}

Permutation Permutation::Inverse() const {
  Permutation out;
  out.image.resize(size());
  for (Vertex v = 0; v < size(); ++v) out.image[image[v]] = v;
  return out;
}

bool Permutation::IsIdentity() const {
  for (Vertex v = 0; v < size(); ++v) {
    if (image[v] != v) return false;
  }
  return true;
}

bool IsBijection(const Permutation& p) {
  std::vector<bool> hit(p.size(), false);
  for (Vertex w : p.image) {
    if (w >= p.size() || hit[w]) return false;
    hit[w] = true;
  }
  return true;
}

bool IsAutomorphism(const FiniteGraph& g, const Permutation& p) {
  if (p.size() != g.vertex_count() || !IsBijection(p)) return false;
  for (const Edge& e : g.edges()) {
    if (!g.has_edge(p(e.u), p(e.v))) return false;
  }
  return true;
}

AutGroup Automorphisms(const FiniteGraph& g, std::span<const Vertex> fixed,
                       std::size_t vertex_cap, std::size_t element_limit) {
  const std::size_t n = g.vertex_count();
  if (n > vertex_cap) {
    throw Error(ErrorCode::kTooLarge,
                "automorphism search on " + std::to_string(n) +
                    " vertices exceeds the cap of " + std::to_string(vertex_cap));
  }
  std::vector<Vertex> fixed_sorted(fixed.begin(), fixed.end());
  std::sort(fixed_sorted.begin(), fixed_sorted.end());
  fixed_sorted.erase(std::unique(fixed_sorted.begin(), fixed_sorted.end()),
                     fixed_sorted.end());
  for (Vertex f : fixed_sorted) {
    if (f >= n) {
      throw Error(ErrorCode::kInvalidArgument, "fixed vertex out of range");
    }
  }

  // Initial colours: fixed vertices by their position in the fixed list,
  // everything else by (degree, distance to each fixed vertex).
  constexpr std::uint64_t kUnreachable = std::numeric_limits<std::uint32_t>::max();
  std::vector<std::vector<std::uint64_t>> sig(n);
  std::vector<std::vector<std::optional<std::size_t>>> dist;
  for (Vertex f : fixed_sorted) dist.push_back(BfsDistances(g, f));
  for (Vertex v = 0; v < n; ++v) {
    auto it = std::find(fixed_sorted.begin(), fixed_sorted.end(), v);
    if (it != fixed_sorted.end()) {
      sig[v] = {0, static_cast<std::uint64_t>(it - fixed_sorted.begin())};
      continue;
    }
    sig[v] = {1, g.degree(v)};
    for (const auto& d : dist) {
      sig[v].push_back(d[v] ? static_cast<std::uint64_t>(*d[v]) : kUnreachable);
    }
  }
  auto distinct = sig;
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  Coloring initial(n);
  for (Vertex v = 0; v < n; ++v) {
    initial[v] = static_cast<std::uint64_t>(
        std::lower_bound(distinct.begin(), distinct.end(), sig[v]) -
        distinct.begin());
  }
  const Coloring start = Refine(g, initial);

  Search search(g, element_limit);
  search.Run(start, start);
  AutGroup out;
  out.elements = search.TakeFound();
  std::sort(out.elements.begin(), out.elements.end());
  out.order = out.elements.size();
  out.fixed_set = std::move(fixed_sorted);
  return out;
}

Permutation Theta(const std::vector<Permutation>& per_fiber,
                  const CayleyGraph& cg) {
  if (per_fiber.size() != cg.group.size()) {
    throw Error(ErrorCode::kInvalidArgument,
                "need one base permutation per group element");
  }
  const auto anchors = cg.tmpl.AnchorSet();
  for (std::size_t h = 0; h < per_fiber.size(); ++h) {
    const Permutation& phi = per_fiber[h];
    if (!IsAutomorphism(cg.tmpl.base, phi)) {
      throw Error(ErrorCode::kInvalidArgument,
                  "fiber " + cg.group.label(h) +
                      " permutation is not an automorphism of H");
    }
    for (Vertex a : anchors) {
      if (phi(a) != a) {
        throw Error(ErrorCode::kInvalidArgument,
                    "fiber " + cg.group.label(h) + " permutation moves anchor " +
                        std::to_string(a));
      }
    }
  }
  Permutation out;
  out.image.resize(cg.graph.vertex_count());
  for (Vertex x = 0; x < out.size(); ++x) {
    const std::size_t h = cg.fiber[x];
    out.image[x] = cg.VertexOf(per_fiber[h](cg.base_vertex[x]), h);
  }
  if (!IsAutomorphism(cg.graph, out)) {
    throw Error(ErrorCode::kPreconditionFailed,
                "fiberwise permutation is not an automorphism of H_G");
  }
  return out;
}

double ConjugationDeviation(const SiteOperator& op, const FiniteGraph& g,
                            const Permutation& phi) {
  if (phi.size() != op.dimension() || g.vertex_count() != op.dimension() ||
      !IsBijection(phi)) {
    throw Error(ErrorCode::kInvalidArgument,
                "permutation does not act on the operator's vertex set");
  }
  double worst = 0.0;
  for (Vertex a = 0; a < phi.size(); ++a) {
    const auto ia = static_cast<Eigen::Index>(a);
    const auto ja = static_cast<Eigen::Index>(phi(a));
    worst = std::max(worst, std::abs(op.potential(ja) - op.potential(ia)));
  }
  // phi is a bijection, so every edge landing on an edge means the
  // off-diagonal 0/1 patterns agree everywhere.
  for (const Edge& e : g.edges()) {
    if (!g.has_edge(phi(e.u), phi(e.v))) worst = std::max(worst, 1.0);
  }
  return worst;
}

AutGroup AndersonAutomorphisms(const CayleyGraph& cg,
                               const DisorderRealization& r) {
  if (!cg.group.is_finite()) {
    throw Error(ErrorCode::kUnsupported,
                "Aut_And is only characterized for finite groups, got " +
                    cg.group.description());
  }
  if (r.values.size() != cg.group.size()) {
    throw Error(ErrorCode::kInvalidArgument, "realization does not cover the fibers");
  }
  RequireDistinct(r);

  const auto anchors = cg.tmpl.AnchorSet();
  const AutGroup base = Automorphisms(cg.tmpl.base, anchors);
  const std::size_t fibers = cg.group.size();
  const std::size_t b = base.elements.size();

  AutGroup out;
  out.fixed_set = {};
  out.order = boost::multiprecision::pow(GroupOrder(b), static_cast<unsigned>(fibers));

  const SiteOperator op = AssembleCayleyOperator(cg, r);
  auto checked = [&](Permutation phi) {
    if (ConjugationDeviation(op, cg.graph, phi) != 0.0) {
      throw Error(ErrorCode::kPreconditionFailed,
                  "Theta image does not fix the operator");
    }
    for (Vertex x = 0; x < phi.size(); ++x) {
      if (cg.fiber[phi(x)] != cg.fiber[x]) {
        throw Error(ErrorCode::kPreconditionFailed,
                    "Theta image does not preserve fibers");
      }
    }
    return phi;
  };

  const Permutation id = Permutation::Identity(cg.base_size());
  if (out.order <= kExplicitElementLimit) {
    // Mixed-radix walk over all tuples (phi_g)_g.
    std::vector<std::size_t> digit(fibers, 0);
    const auto total = static_cast<std::size_t>(out.order);
    for (std::size_t n = 0; n < total; ++n) {
      std::vector<Permutation> tuple;
      tuple.reserve(fibers);
      for (std::size_t g = 0; g < fibers; ++g) tuple.push_back(base.elements[digit[g]]);
      out.elements.push_back(checked(Theta(tuple, cg)));
      for (std::size_t g = fibers; g-- > 0;) {
        if (++digit[g] < b) break;
        digit[g] = 0;
      }
    }
    std::sort(out.elements.begin(), out.elements.end());
  } else {
    for (std::size_t g = 0; g < fibers; ++g) {
      for (const Permutation& phi : base.elements) {
        if (phi.IsIdentity()) continue;
        std::vector<Permutation> tuple(fibers, id);
        tuple[g] = phi;
        out.generators.push_back(checked(Theta(tuple, cg)));
      }
    }
  }
  return out;
}

AutGroup BruteAndersonAutomorphisms(const CayleyGraph& cg,
                                    const DisorderRealization& r,
                                    std::size_t vertex_cap) {
  if (cg.graph.vertex_count() > vertex_cap) {
    throw Error(ErrorCode::kTooLarge,
                "brute-force Aut_And limited to " + std::to_string(vertex_cap) +
                    " vertices, graph has " +
                    std::to_string(cg.graph.vertex_count()));
  }
  const SiteOperator op = AssembleCayleyOperator(cg, r);
  const AutGroup all = Automorphisms(cg.graph, {}, vertex_cap);
  AutGroup out;
  for (const Permutation& phi : all.elements) {
    if (ConjugationDeviation(op, cg.graph, phi) == 0.0) out.elements.push_back(phi);
  }
  out.order = out.elements.size();
  return out;
}

}  // namespace smult
