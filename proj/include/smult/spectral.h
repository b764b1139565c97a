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

#ifndef SMULT_SPECTRAL_H_
#define SMULT_SPECTRAL_H_

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

namespace smult {

inline constexpr std::size_t kDefaultEigDimensionCap = 5'000;
inline constexpr double kDefaultClusterTolerance = 1e-7;

// Full decomposition of a real symmetric matrix. Eigenvalues ascend; column
// k of eigenvectors belongs to eigenvalues(k).
struct EigenSystem {
  Eigen::VectorXd eigenvalues;
  Eigen::MatrixXd eigenvectors;
  double residual_bound = 0.0;  // max_k ||M v_k - lambda_k v_k||_2

  std::size_t dimension() const {
    return static_cast<std::size_t>(eigenvalues.size());
  }
};

// Rejects matrices that are not exactly symmetric (kInvalidArgument) or
// larger than dimension_cap (kTooLarge).
EigenSystem EigSym(const Eigen::MatrixXd& m,
                   std::size_t dimension_cap = kDefaultEigDimensionCap);

struct Cluster {
  double value = 0.0;  // mean of the members
  std::size_t count = 0;
};

// Greedy left-to-right grouping of ascending values: a value joins the
// current cluster when it is within tau of the previous value.
std::vector<Cluster> ClusterMultiplicities(const Eigen::VectorXd& eigenvalues,
                                           double tau = kDefaultClusterTolerance);

// Number of eigenvalues with |lambda - target| <= tau.
std::size_t CountNear(const Eigen::VectorXd& eigenvalues, double target,
                      double tau = kDefaultClusterTolerance);

// Number of eigenvalues in [lo, hi].
std::size_t CountInBand(const Eigen::VectorXd& eigenvalues, double lo,
                        double hi);

// K-1 orthonormal rows of length K, each summing to zero (Helmert rows).
struct AlphaBasis {
  std::size_t K = 0;
  Eigen::MatrixXd rows;
};

AlphaBasis MakeAlphaBasis(std::size_t K);

// Spectrum of the adjacency matrix of the complete K-ary tree of the given
// depth, vertices in the canonical breadth-first order.
EigenSystem SubtreeEigenpairs(std::size_t K, std::size_t depth,
                              std::size_t dimension_cap = kDefaultEigDimensionCap);

}  // namespace smult

#endif  // SMULT_SPECTRAL_H_
