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

#ifndef SMULT_AUTOMORPHISM_H_
#define SMULT_AUTOMORPHISM_H_

#include <compare>
#include <cstddef>
#include <span>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "smult/anderson.h"
#include "smult/cayley.h"
#include "smult/graph.h"

namespace smult {

inline constexpr std::size_t kDefaultAutVertexCap = 2'000;
inline constexpr std::size_t kDefaultBruteVertexCap = 200;
inline constexpr std::size_t kExplicitElementLimit = 10'000;

using GroupOrder = boost::multiprecision::cpp_int;

// Vertex map v -> image[v].
struct Permutation {
  std::vector<Vertex> image;

  static Permutation Identity(std::size_t n);

  std::size_t size() const { return image.size(); }
  Vertex operator()(Vertex v) const { return image.at(v); }
  // (this * other)(v) = this(other(v)).
  Permutation Compose(const Permutation& other) const;
  Permutation Inverse() const;
  bool IsIdentity() const;

  auto operator<=>(const Permutation&) const = default;
};

bool IsBijection(const Permutation& p);
// p is a bijection mapping the edge set onto itself.
bool IsAutomorphism(const FiniteGraph& g, const Permutation& p);

// Finite permutation group. Small groups list every element; groups above
// kExplicitElementLimit carry generators and the order instead.
struct AutGroup {
  std::vector<Permutation> elements;
  std::vector<Permutation> generators;
  GroupOrder order = 0;
  std::vector<Vertex> fixed_set;

  bool has_explicit_elements() const { return !elements.empty(); }
};

// All automorphisms of g fixing every vertex of `fixed`, by backtracking
// over individualized, colour-refined partitions. Initial colours are the
// degree and the distances to each fixed vertex; fixed vertices are
// singleton cells. kTooLarge past vertex_cap vertices or element_limit
// automorphisms.
AutGroup Automorphisms(const FiniteGraph& g, std::span<const Vertex> fixed,
                       std::size_t vertex_cap = kDefaultAutVertexCap,
                       std::size_t element_limit = kExplicitElementLimit);

// (v, h) -> (phi_h(v), h). Every phi_h must be an automorphism of H fixing
// all anchors (kInvalidArgument otherwise).
Permutation Theta(const std::vector<Permutation>& per_fiber,
                  const CayleyGraph& cg);

// max_{a,b} |H[phi(a), phi(b)] - H[a, b]|, i.e. the entrywise distance
// between U_phi H U_phi^* and H.
double ConjugationDeviation(const SiteOperator& op, const FiniteGraph& g,
                            const Permutation& phi);

// Aut_And(H_G) as the Theta-image of prod_g Aut(H | anchors). Needs a finite
// group (kUnsupported) and pairwise-distinct couplings
// (kDegenerateDisorder). Each returned element is checked against the
// assembled operator and for fiber preservation.
AutGroup AndersonAutomorphisms(const CayleyGraph& cg,
                               const DisorderRealization& r);

// Aut(H_G) by search, filtered by exact invariance of the operator.
AutGroup BruteAndersonAutomorphisms(
    const CayleyGraph& cg, const DisorderRealization& r,
    std::size_t vertex_cap = kDefaultBruteVertexCap);

}  // namespace smult

#endif  // SMULT_AUTOMORPHISM_H_
