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

#include "smult/spectral.h"

#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

#include "smult/canopy.h"
#include "smult/error.h"
#include "smult/graph.h"

namespace smult {

EigenSystem EigSym(const Eigen::MatrixXd& m, std::size_t dimension_cap) {
  if (m.rows() != m.cols()) {
    throw Error(ErrorCode::kInvalidArgument, "matrix is not square");
  }
  if (static_cast<std::size_t>(m.rows()) > dimension_cap) {
    throw Error(ErrorCode::kTooLarge,
                "dimension " + std::to_string(m.rows()) + " exceeds the cap of " +
                    std::to_string(dimension_cap));
  }
  if (m != m.transpose()) {
    throw Error(ErrorCode::kInvalidArgument, "matrix is not symmetric");
  }
  EigenSystem es;
  if (m.rows() == 0) return es;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::kPreconditionFailed, "eigensolver did not converge");
  }
  es.eigenvalues = solver.eigenvalues();
  es.eigenvectors = solver.eigenvectors();
  const Eigen::MatrixXd r =
      m * es.eigenvectors - es.eigenvectors * es.eigenvalues.asDiagonal();
  es.residual_bound = r.colwise().norm().maxCoeff();
  return es;
}

std::vector<Cluster> ClusterMultiplicities(const Eigen::VectorXd& eigenvalues,
                                           double tau) {
  if (!(tau > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "cluster tolerance must be > 0");
  }
  std::vector<Cluster> out;
  double sum = 0.0;
  for (Eigen::Index k = 0; k < eigenvalues.size(); ++k) {
    const double v = eigenvalues(k);
    if (k > 0 && v < eigenvalues(k - 1)) {
      throw Error(ErrorCode::kInvalidArgument, "eigenvalues are not ascending");
    }
    if (k == 0 || v - eigenvalues(k - 1) > tau) {
      if (!out.empty()) out.back().value = sum / static_cast<double>(out.back().count);
      out.push_back({v, 0});
      sum = 0.0;
    }
    ++out.back().count;
    sum += v;
  }
  if (!out.empty()) out.back().value = sum / static_cast<double>(out.back().count);
  return out;
}

std::size_t CountNear(const Eigen::VectorXd& eigenvalues, double target,
                      double tau) {
  std::size_t n = 0;
  for (double v : eigenvalues) {
    if (std::abs(v - target) <= tau) ++n;
  }
  return n;
}

std::size_t CountInBand(const Eigen::VectorXd& eigenvalues, double lo,
                        double hi) {
  std::size_t n = 0;
  for (double v : eigenvalues) {
    if (v >= lo && v <= hi) ++n;
  }
  return n;
}

AlphaBasis MakeAlphaBasis(std::size_t K) {
  if (K < 2) {
    throw Error(ErrorCode::kInvalidArgument, "alpha basis needs K >= 2");
  }
  AlphaBasis a;
  a.K = K;
  const auto k = static_cast<Eigen::Index>(K);
  a.rows = Eigen::MatrixXd::Zero(k - 1, k);
  for (Eigen::Index j = 1; j < k; ++j) {
    const double jd = static_cast<double>(j);
    const double scale = 1.0 / std::sqrt(jd * (jd + 1.0));
    a.rows.row(j - 1).head(j).setConstant(scale);
    a.rows(j - 1, j) = -jd * scale;
  }
  return a;
}

EigenSystem SubtreeEigenpairs(std::size_t K, std::size_t depth,
                              std::size_t dimension_cap) {
  const auto count = CanopyVertexCount(K, depth, dimension_cap);
  if (K >= 2 && !count) {
    throw Error(ErrorCode::kTooLarge,
                "subtree of depth " + std::to_string(depth) +
                    " exceeds the eigensolver cap");
  }
  const TruncatedCanopy tree = BuildTruncatedCanopy(K, depth, dimension_cap);
  return EigSym(AdjacencyMatrix(tree.graph), dimension_cap);
}

}  // namespace smult
