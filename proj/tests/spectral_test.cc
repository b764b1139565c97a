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
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "oracles.h"
#include "smult/error.h"
#include "smult/graph.h"

namespace smult {
namespace {

oracle::Dense ToDense(const Eigen::MatrixXd& m) {
  oracle::Dense d(static_cast<std::size_t>(m.rows()),
                  std::vector<double>(static_cast<std::size_t>(m.cols())));
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      d[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = m(i, j);
    }
  }
  return d;
}

TEST(EigSym, ZeroMatrix) {
  const auto es = EigSym(Eigen::MatrixXd::Zero(4, 4));
  for (double v : es.eigenvalues) EXPECT_EQ(v, 0.0);
}

TEST(EigSym, PathOfThree) {
  const auto es = EigSym(AdjacencyMatrix(PathGraph(3)));
  EXPECT_NEAR(es.eigenvalues[0], -std::sqrt(2.0), 1e-12);
  EXPECT_NEAR(es.eigenvalues[1], 0.0, 1e-12);
  EXPECT_NEAR(es.eigenvalues[2], std::sqrt(2.0), 1e-12);
}

TEST(EigSym, PathSpectraClosedForm) {
  for (int p : {2, 3, 5, 7, 11}) {
    const auto es = EigSym(AdjacencyMatrix(PathGraph(2 * p - 1)));
    std::vector<double> expected;
    for (int j = 1; j <= 2 * p - 1; ++j) {
      expected.push_back(2.0 * std::cos(std::numbers::pi * j / (2.0 * p)));
    }
    std::sort(expected.begin(), expected.end());
    for (int k = 0; k < 2 * p - 1; ++k) {
      EXPECT_NEAR(es.eigenvalues[k], expected[static_cast<std::size_t>(k)], 1e-10);
    }
  }
}

TEST(EigSym, AgreesWithJacobiOracleOnRandomMatrices) {
  std::mt19937_64 rng(17);
  std::normal_distribution<double> normal;
  for (int n : {1, 2, 5, 12, 30}) {
    Eigen::MatrixXd m(n, n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j <= i; ++j) m(i, j) = m(j, i) = normal(rng);
    }
    const auto es = EigSym(m);
    const auto ref = oracle::JacobiEigenvalues(ToDense(m));
    for (int k = 0; k < n; ++k) {
      EXPECT_NEAR(es.eigenvalues[k], ref[static_cast<std::size_t>(k)], 1e-10);
    }
    const Eigen::MatrixXd gram = es.eigenvectors.transpose() * es.eigenvectors;
    EXPECT_LE((gram - Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff(), 1e-10);
    EXPECT_LE(es.residual_bound, 1e-9 * (1.0 + m.cwiseAbs().maxCoeff() * n));
    EXPECT_TRUE(std::is_sorted(es.eigenvalues.begin(), es.eigenvalues.end()));
  }
}

TEST(EigSym, Errors) {
  Eigen::MatrixXd asym = Eigen::MatrixXd::Zero(3, 3);
  asym(0, 1) = 1.0;
  try {
    EigSym(asym);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInvalidArgument);
  }
  EXPECT_THROW(EigSym(Eigen::MatrixXd::Zero(2, 3)), Error);
  try {
    EigSym(Eigen::MatrixXd::Zero(10, 10), 9);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kTooLarge);
  }
}

TEST(ClusterMultiplicities, Basics) {
  Eigen::VectorXd distinct(3);
  distinct << -1.0, 0.0, 1.0;
  for (const auto& c : ClusterMultiplicities(distinct, 1e-7)) EXPECT_EQ(c.count, 1u);
  Eigen::VectorXd dup(4);
  dup << 0.5, 0.5, 0.5, 2.0;
  const auto d = ClusterMultiplicities(dup, 1e-300);
  ASSERT_EQ(d.size(), 2u);
  EXPECT_EQ(d[0].count, 3u);
  EXPECT_THROW(ClusterMultiplicities(dup, 0.0), Error);
  EXPECT_THROW(ClusterMultiplicities(dup, -1.0), Error);
}

TEST(ClusterMultiplicities, StarSpectrum) {
  const FiniteGraph star(4, {{0, 1}, {0, 2}, {0, 3}});
  const auto es = EigSym(AdjacencyMatrix(star));
  const auto ref = oracle::JacobiEigenvalues(ToDense(AdjacencyMatrix(star)));
  const double s3 = std::sqrt(3.0);
  const double expected[] = {-s3, 0.0, 0.0, s3};
  for (int k = 0; k < 4; ++k) {
    EXPECT_NEAR(es.eigenvalues[k], expected[k], 1e-12);
    EXPECT_NEAR(ref[static_cast<std::size_t>(k)], expected[k], 1e-12);
  }
  const auto clusters = ClusterMultiplicities(es.eigenvalues);
  ASSERT_EQ(clusters.size(), 3u);
  EXPECT_EQ(clusters[1].count, 2u);
  EXPECT_NEAR(clusters[1].value, 0.0, 1e-12);
  std::size_t total = 0;
  for (const auto& c : clusters) total += c.count;
  EXPECT_EQ(total, 4u);
}

TEST(CountNearAndBand, Basics) {
  Eigen::VectorXd v(5);
  v << -1.0, 0.0, 1e-9, 0.5, 2.0;
  EXPECT_EQ(CountNear(v, 0.0, 1e-7), 2u);
  EXPECT_EQ(CountInBand(v, 0.0, 0.5), 3u);
  EXPECT_EQ(CountInBand(v, 3.0, 4.0), 0u);
}

TEST(AlphaBasis, HelmertRows) {
  EXPECT_THROW(MakeAlphaBasis(1), Error);
  const auto two = MakeAlphaBasis(2);
  ASSERT_EQ(two.rows.rows(), 1);
  EXPECT_NEAR(std::abs(two.rows(0, 0)), 1.0 / std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(two.rows(0, 0) + two.rows(0, 1), 0.0, 1e-15);
  for (std::size_t K = 2; K <= 20; ++K) {
    const auto a = MakeAlphaBasis(K);
    ASSERT_EQ(static_cast<std::size_t>(a.rows.rows()), K - 1);
    ASSERT_EQ(static_cast<std::size_t>(a.rows.cols()), K);
    const Eigen::MatrixXd gram = a.rows * a.rows.transpose();
    EXPECT_LE((gram - Eigen::MatrixXd::Identity(K - 1, K - 1)).cwiseAbs().maxCoeff(),
              1e-14);
    EXPECT_LE(a.rows.rowwise().sum().cwiseAbs().maxCoeff(), 1e-14);
    Eigen::FullPivLU<Eigen::MatrixXd> lu(a.rows);
    EXPECT_EQ(static_cast<std::size_t>(lu.rank()), K - 1);
  }
}

TEST(SubtreeEigenpairs, SmallTrees) {
  EXPECT_EQ(SubtreeEigenpairs(3, 0).eigenvalues.size(), 1);
  EXPECT_EQ(SubtreeEigenpairs(3, 0).eigenvalues[0], 0.0);
  const auto star = SubtreeEigenpairs(3, 1);
  const double s3 = std::sqrt(3.0);
  EXPECT_NEAR(star.eigenvalues[0], -s3, 1e-12);
  EXPECT_NEAR(star.eigenvalues[1], 0.0, 1e-12);
  EXPECT_NEAR(star.eigenvalues[2], 0.0, 1e-12);
  EXPECT_NEAR(star.eigenvalues[3], s3, 1e-12);
  const auto d2 = SubtreeEigenpairs(3, 2);
  ASSERT_EQ(d2.eigenvalues.size(), 13);
  for (int k = 0; k < 13; ++k) {
    EXPECT_NEAR(d2.eigenvalues[k], -d2.eigenvalues[12 - k], 1e-12);
  }
}

}  // namespace
}  // namespace smult
