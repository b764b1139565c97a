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

#ifndef SMULT_ANDERSON_H_
#define SMULT_ANDERSON_H_

#include <cstddef>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include "smult/canopy.h"
#include "smult/cayley.h"

namespace smult {

struct UniformDistribution {
  double lo = 0.0;
  double hi = 1.0;
};
struct PointMass {
  double value = 0.0;
};
// Value a with probability p_a, else b.
struct TwoPoint {
  double a = 0.0;
  double b = 1.0;
  double p_a = 0.5;
};
using Distribution = std::variant<UniformDistribution, PointMass, TwoPoint>;

struct DisorderSpec {
  Distribution distribution = UniformDistribution{};
  std::uint64_t seed = 0;

  // Uniform needs lo < hi; two-point needs p_a in [0, 1]; all parameters
  // finite.
  void Validate() const;
  std::string Describe() const;
};

// "uniform:0:1", "point:0.5", "twopoint:0:1:0.5".
Distribution ParseDistribution(const std::string& text);

// Couplings omega indexed by site: position in PatchSet::roots for canopy
// operators, group element index for Cayley operators.
struct DisorderRealization {
  std::vector<double> values;
  DisorderSpec spec;

  double max_abs() const;
};

// Draws come from std::mt19937_64 seeded with spec.seed, consumed one
// 64-bit word per site in site order. A uniform draw is lo + (hi - lo) * u
// with u the top 53 bits scaled to [0, 1), so realizations are identical
// on every platform.
DisorderRealization SampleDisorder(const DisorderSpec& spec,
                                   std::size_t site_count);

bool AllDistinct(const DisorderRealization& r);
// kDegenerateDisorder when two sites share a value.
void RequireDistinct(const DisorderRealization& r);

// Adjacency plus a real diagonal potential.
struct SiteOperator {
  Eigen::SparseMatrix<double> adjacency;
  Eigen::VectorXd potential;
  std::string provenance;

  std::size_t dimension() const {
    return static_cast<std::size_t>(potential.size());
  }
  Eigen::VectorXd Apply(const Eigen::VectorXd& x) const;
  Eigen::MatrixXd ToDense() const;
  // Max absolute row sum.
  double InfinityNorm() const;
};

// Delta_T + sum_x omega_x P_{Lambda_l(x)}.
SiteOperator AssembleCanopyOperator(const TruncatedCanopy& t,
                                    const PatchSet& p,
                                    const DisorderRealization& r);

// Delta_{H_G} + sum_g omega_g P_g.
SiteOperator AssembleCayleyOperator(const CayleyGraph& cg,
                                    const DisorderRealization& r);

// (theta_g omega)_h = omega_{g h}. Finite groups only.
DisorderRealization ShiftDisorder(const DisorderRealization& r, std::size_t g,
                                  const Group& group);

struct CovarianceResult {
  bool exact = false;
  double max_deviation = 0.0;
};

// Compares U_g H^omega U_g^* against H^{theta_g omega} entry by entry, with
// U_g the permutation matrix of (v, h) -> (v, g h).
CovarianceResult CovarianceCheck(const CayleyGraph& cg,
                                 const DisorderRealization& r, std::size_t g);

}  // namespace smult

#endif  // SMULT_ANDERSON_H_
