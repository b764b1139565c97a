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

#ifndef SMULT_DOS_H_
#define SMULT_DOS_H_

#include <cstddef>
#include <limits>
#include <vector>

#include <Eigen/Dense>

#include "smult/anderson.h"
#include "smult/canopy.h"
#include "smult/spectral.h"

namespace smult {

struct CanopyConfig {
  std::size_t K = 3;
  std::size_t L = 5;
  std::size_t l = 2;
};

// Bins are [e_k, e_{k+1}) except the last, which is closed. normalized is
// counts / (dimension * realizations), so the total is 1 per realization
// when the bins cover the spectrum.
struct Histogram {
  std::vector<double> bin_edges;
  std::vector<double> counts;
  std::vector<double> normalized;
  std::size_t dimension = 0;
  std::size_t realizations = 0;
  std::size_t outside = 0;  // eigenvalues that fell outside every bin

  double total_mass() const;
};

std::vector<double> UniformBinEdges(double lo, double hi, std::size_t bins);

// Adds every value in `eigenvalues` to the histogram (raw counts only).
void AccumulateHistogram(Histogram& h, const Eigen::VectorXd& eigenvalues);

// Realization k uses seed spec.seed + k. Realizations are diagonalized
// concurrently; merging is in realization order, so the result does not
// depend on scheduling.
Histogram EigenvalueHistogram(const CanopyConfig& config,
                              const DisorderSpec& spec,
                              const std::vector<double>& bin_edges,
                              std::size_t realizations,
                              std::size_t eig_cap = kDefaultEigDimensionCap);

struct BandCount {
  double lo = 0.0;
  double hi = 0.0;
  std::size_t certified = 0;
  std::size_t observed = 0;
};

// certified = (K-1) * #{(x, E) : x a boundary patch root, E an eigenvalue
// of Delta_{l-1} counted with multiplicity, E + omega_x in [lo, hi]}.
// observed = #{eigenvalues of H in [lo - slack, hi + slack]}; the slack
// absorbs solver rounding for eigenvalues sitting on a band edge.
inline constexpr double kBandEdgeSlack = 1e-9;

BandCount CertifiedBandCount(const TruncatedCanopy& t, const PatchSet& p,
                             const DisorderRealization& r, double lo,
                             double hi);

// Same, with the operator spectrum and the Delta_{l-1} spectrum supplied.
BandCount CertifiedBandCount(const TruncatedCanopy& t, const PatchSet& p,
                             const DisorderRealization& r,
                             const Eigen::VectorXd& operator_spectrum,
                             const Eigen::VectorXd& local_spectrum, double lo,
                             double hi);

inline constexpr double kWholeLine = std::numeric_limits<double>::infinity();

}  // namespace smult

#endif  // SMULT_DOS_H_
