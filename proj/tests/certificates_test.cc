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

#include "smult/certificates.h"

#include <algorithm>
#include <cmath>
#include <set>

#include <gtest/gtest.h>

#include "smult/error.h"
#include "smult/spectral.h"

namespace smult {
namespace {

ErrorCode CodeOf(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorCode::kInvalidArgument;
}

struct CanopyCase {
  TruncatedCanopy t;
  PatchSet p;
  DisorderRealization r;
  SiteOperator op;
  EigenSystem local;
};

CanopyCase MakeCanopy(std::size_t K, std::size_t L, std::size_t l,
                      Distribution d = UniformDistribution{0, 1},
                      std::uint64_t seed = 7) {
  auto t = BuildTruncatedCanopy(K, L);
  auto p = PotentialRoots(t, l);
  auto r = SampleDisorder({d, seed}, p.roots.size());
  auto op = AssembleCanopyOperator(t, p, r);
  auto local = SubtreeEigenpairs(K, l - 1);
  return {std::move(t), std::move(p), std::move(r), std::move(op), std::move(local)};
}

Eigen::VectorXd Psi(const CanopyCase& c, Eigen::Index k) {
  return c.local.eigenvectors.col(k);
}

TEST(CanopyCertificates, ZeroEnergyAtADepthTwoRoot) {
  const auto c = MakeCanopy(3, 5, 2);
  const Vertex x = CertifiableRoots(c.t, c.p).front();
  // The double eigenvalue 0 of the star sits at positions 1 and 2.
  for (Eigen::Index k : {1, 2}) {
    ASSERT_NEAR(c.local.eigenvalues[k], 0.0, 1e-12);
    const auto certs = CanopyCertificates(c.t, c.p, c.r, x, c.local.eigenvalues[k],
                                          Psi(c, k));
    ASSERT_EQ(certs.size(), 2u);
    EXPECT_LE(GramDeviation(certs), 1e-10);
    for (const auto& cert : certs) {
      EXPECT_LE(CertificateResidual(c.op, cert), 1e-10);
      EXPECT_LE(cert.residual, 1e-10);
      EXPECT_TRUE(cert.passed());
      EXPECT_NEAR(cert.eigenvalue,
                  c.local.eigenvalues[k] + c.r.values[*c.p.root_position(x)], 0.0);
      EXPECT_NEAR(cert.Norm(), 1.0, 1e-12);
    }
  }
}

TEST(CanopyCertificates, SupportStaysBelowTheRoot) {
  const auto c = MakeCanopy(3, 5, 2);
  for (Vertex x : CertifiableRoots(c.t, c.p)) {
    std::set<Vertex> allowed;
    for (Vertex y : ForwardNeighbors(c.t, x)) {
      for (Vertex v : Subtree(c.t, y, 1)) allowed.insert(v);
    }
    for (Eigen::Index k = 0; k < c.local.eigenvalues.size(); ++k) {
      for (const auto& cert :
           CanopyCertificates(c.t, c.p, c.r, x, c.local.eigenvalues[k], Psi(c, k))) {
        const auto dense = cert.Dense(c.t.size());
        EXPECT_EQ(dense[static_cast<Eigen::Index>(x)], 0.0);
        for (Vertex v : cert.support()) {
          EXPECT_TRUE(allowed.count(v)) << v;
          EXPECT_EQ(c.p.patch_of(v), x);
        }
      }
    }
  }
}

TEST(CanopyCertificates, ZeroDisorderCertifiesTheAdjacency) {
  const auto c = MakeCanopy(3, 5, 2, PointMass{0.0});
  const Vertex x = CertifiableRoots(c.t, c.p).back();
  const SiteOperator adjacency{SparseAdjacency(c.t.graph),
                               Eigen::VectorXd::Zero(c.t.size()), "adjacency"};
  for (Eigen::Index k = 0; k < 4; ++k) {
    for (const auto& cert :
         CanopyCertificates(c.t, c.p, c.r, x, c.local.eigenvalues[k], Psi(c, k))) {
      EXPECT_EQ(cert.eigenvalue, c.local.eigenvalues[k]);
      EXPECT_LE(CertificateResidual(adjacency, cert), 1e-12);
    }
  }
}

TEST(CanopyCertificates, OrthogonalityAcrossRootsAndEnergies) {
  const auto c = MakeCanopy(3, 5, 2);
  const auto roots = CertifiableRoots(c.t, c.p);
  ASSERT_EQ(roots.size(), 27u);
  std::vector<EigenvectorCertificate> all;
  for (Vertex x : {roots[0], roots[1], roots[13]}) {
    std::vector<EigenvectorCertificate> at_root;
    for (Eigen::Index k = 0; k < 4; ++k) {
      for (auto& cert : CanopyCertificates(c.t, c.p, c.r, x,
                                           c.local.eigenvalues[k], Psi(c, k))) {
        at_root.push_back(cert);
        all.push_back(std::move(cert));
      }
    }
    ASSERT_EQ(at_root.size(), 8u);
    EXPECT_LE(GramDeviation(at_root), 1e-10);
  }
  for (std::size_t a = 0; a < all.size(); ++a) {
    for (std::size_t b = a + 1; b < all.size(); ++b) {
      if (all[a].provenance.site == all[b].provenance.site) continue;
      const auto sa = all[a].support();
      const auto sb = all[b].support();
      std::vector<Vertex> common;
      std::set_intersection(sa.begin(), sa.end(), sb.begin(), sb.end(),
                            std::back_inserter(common));
      EXPECT_TRUE(common.empty());
    }
  }
}

TEST(CanopyCertificates, OracleEquivalenceWithTheFullSpectrum) {
  const auto c = MakeCanopy(3, 5, 2);
  const auto spectrum = EigSym(c.op.ToDense()).eigenvalues;
  for (Vertex x : CertifiableRoots(c.t, c.p)) {
    const double omega = c.r.values[*c.p.root_position(x)];
    for (const auto& cl : ClusterMultiplicities(c.local.eigenvalues, 1e-9)) {
      EXPECT_GE(CountNear(spectrum, cl.value + omega, 1e-7), 2 * cl.count);
    }
  }
}

TEST(CanopyCertificates, BinaryTreeGivesOneCertificate) {
  const auto c = MakeCanopy(2, 5, 2);
  const Vertex x = CertifiableRoots(c.t, c.p).front();
  const auto certs =
      CanopyCertificates(c.t, c.p, c.r, x, c.local.eigenvalues[0], Psi(c, 0));
  ASSERT_EQ(certs.size(), 1u);
  EXPECT_LE(CertificateResidual(c.op, certs[0]), 1e-10);
}

TEST(CanopyCertificates, LargerPatches) {
  const auto c = MakeCanopy(2, 7, 3);
  for (Vertex x : CertifiableRoots(c.t, c.p)) {
    for (Eigen::Index k = 0; k < c.local.eigenvalues.size(); ++k) {
      for (const auto& cert :
           CanopyCertificates(c.t, c.p, c.r, x, c.local.eigenvalues[k], Psi(c, k))) {
        EXPECT_LE(CertificateResidual(c.op, cert), cert.tolerance);
      }
    }
  }
}

TEST(CanopyCertificates, Errors) {
  const auto c = MakeCanopy(3, 5, 2);
  const Vertex leaf = c.t.size() - 1;
  EXPECT_EQ(CodeOf([&] {
              CanopyCertificates(c.t, c.p, c.r, leaf, c.local.eigenvalues[0],
                                 Psi(c, 0));
            }),
            ErrorCode::kInvalidArgument);
  const Vertex x = CertifiableRoots(c.t, c.p).front();
  EXPECT_EQ(CodeOf([&] {
              CanopyCertificates(c.t, c.p, c.r, x, 0.5, Psi(c, 0));
            }),
            ErrorCode::kInvalidArgument);
  EXPECT_EQ(CodeOf([&] {
              CanopyCertificates(c.t, c.p, c.r, x, c.local.eigenvalues[0],
                                 2.0 * Psi(c, 0));
            }),
            ErrorCode::kInvalidArgument);
  const auto flat = MakeCanopy(3, 5, 1);
  EXPECT_EQ(CodeOf([&] {
              CanopyCertificates(flat.t, flat.p, flat.r, flat.p.roots.back(), 0.0,
                                 Eigen::VectorXd::Ones(1));
            }),
            ErrorCode::kInvalidArgument);
}

TEST(CanopyCertificates, DeepRootIsRejected) {
  const auto c = MakeCanopy(3, 5, 2);
  ASSERT_EQ(c.t.depth[c.t.root()], 5u);
  EXPECT_EQ(CodeOf([&] {
              CanopyCertificates(c.t, c.p, c.r, c.t.root(), c.local.eigenvalues[0],
                                 Psi(c, 0));
            }),
            ErrorCode::kPreconditionFailed);
}

TEST(CanopyCertificates, DeepRootCandidatesLeakIntoThePatchBelow) {
  // The copies below a depth-5 root end on depth-3 vertices whose children
  // belong to other patches, so (H - lambda) Psi is nonzero there.
  const auto c = MakeCanopy(3, 5, 2);
  const auto spectrum = EigSym(c.op.ToDense()).eigenvalues;
  const double omega = c.r.values[*c.p.root_position(c.t.root())];
  for (Eigen::Index k = 0; k < 4; ++k) {
    const auto candidates = CanopyCertificateCandidates(
        c.t, c.p, c.r, c.t.root(), c.local.eigenvalues[k], Psi(c, k));
    ASSERT_EQ(candidates.size(), 2u);
    for (const auto& cert : candidates) {
      EXPECT_GT(CertificateResidual(c.op, cert), 1e-3);
      EXPECT_FALSE(cert.passed());
    }
  }
  // No eigenvalue of H lands on E + omega_root for the nonzero E.
  EXPECT_EQ(CountNear(spectrum, c.local.eigenvalues[0] + omega, 1e-7), 0u);
  EXPECT_EQ(CountNear(spectrum, c.local.eigenvalues[3] + omega, 1e-7), 0u);
}

TEST(CertifiableRoots, OnlyTheLeafLayerOfPatches) {
  const auto c = MakeCanopy(3, 5, 2);
  const auto roots = CertifiableRoots(c.t, c.p);
  EXPECT_EQ(roots.size(), 27u);
  for (Vertex x : roots) EXPECT_EQ(c.t.depth[x], 2u);
}

struct CayleyCase {
  GluedGraph h;
  CayleyGraph cg;
  DisorderRealization r;
  SiteOperator op;
  JunctionKernel kernel;
};

CayleyCase MakeCayley(const std::string& group_spec, std::uint64_t seed = 7) {
  auto h = PrimePathsGraph(4, 2);
  const Group group = ParseGroup(group_spec);
  const std::size_t n = group.generator_count();
  auto cg = BuildCayleyGraph(
      TemplateFromJunctions(h, {std::vector<std::size_t>(n, 2),
                                std::vector<std::size_t>(n, 1)}),
      group);
  auto r = SampleDisorder({UniformDistribution{0, 1}, seed}, group.size());
  auto op = AssembleCayleyOperator(cg, r);
  auto kernel = JunctionKernelBasis(h, 0.0);
  return {std::move(h), std::move(cg), std::move(r), std::move(op), std::move(kernel)};
}

TEST(JunctionKernelBasis, PrimePaths) {
  const auto h = PrimePathsGraph(4, 2);
  const auto k = JunctionKernelBasis(h, 0.0);
  EXPECT_GE(k.dimension(), 2u);
  EXPECT_TRUE(k.verified());
  EXPECT_LE(k.max_residual, 1e-10);
  EXPECT_LE(k.max_equation_residual, 1e-12);
  const Eigen::MatrixXd a = AdjacencyMatrix(h.graph);
  for (std::size_t i = 0; i < k.dimension(); ++i) {
    const auto& v = k.vectors[i];
    EXPECT_LE((a * v).cwiseAbs().maxCoeff(), 1e-10);
    for (Vertex x : h.junctions) EXPECT_EQ(v[static_cast<Eigen::Index>(x)], 0.0);
    for (std::size_t j = 0; j < k.dimension(); ++j) {
      EXPECT_NEAR(v.dot(k.vectors[j]), i == j ? 1.0 : 0.0, 1e-12);
    }
  }
}

TEST(JunctionKernelBasis, ZeroAttachMatrixKeepsEveryPiece) {
  // The zero-energy vector of a three-vertex path vanishes at its middle.
  GluedGraphSpec spec{{PathGraph(3), PathGraph(3), PathGraph(3)}, {{1}, {1}, {1}}, 1};
  const auto k = JunctionKernelBasis(GlueSubgraphs(spec), 0.0);
  EXPECT_EQ(k.rank, 0u);
  EXPECT_EQ(k.dimension(), 3u);
  EXPECT_TRUE(k.verified());
}

TEST(JunctionKernelBasis, MissingEnergy) {
  GluedGraphSpec spec{{PathGraph(2), PathGraph(3)}, {{0}, {0}}, 1};
  EXPECT_EQ(CodeOf([&] { JunctionKernelBasis(GlueSubgraphs(spec), 0.0); }),
            ErrorCode::kInvalidArgument);
}

TEST(CayleyCertificates, PrimePathsOverCyclicSix) {
  const auto c = MakeCayley("cyclic:6");
  ASSERT_EQ(c.kernel.dimension(), 2u);
  const auto spectrum = EigSym(c.op.ToDense()).eigenvalues;
  for (std::size_t g = 0; g < 6; ++g) {
    const auto certs = CayleyCertificates(c.cg, c.r, g, 0.0, c.kernel.vectors);
    ASSERT_EQ(certs.size(), 2u);
    EXPECT_LE(GramDeviation(certs), 1e-10);
    for (const auto& cert : certs) {
      EXPECT_LE(CertificateResidual(c.op, cert), 1e-10);
      EXPECT_EQ(cert.eigenvalue, c.r.values[g]);
      for (Vertex v : cert.support()) EXPECT_EQ(c.cg.fiber[v], g);
    }
    EXPECT_GE(CountNear(spectrum, c.r.values[g], 1e-7), 2u);
  }
}

TEST(CayleyCertificates, TrivialGroupReducesToTheBase) {
  const auto h = PrimePathsGraph(4, 2);
  const auto cg = BuildCayleyGraph(TemplateFromJunctions(h, {{}, {}}), Group::Cyclic(1));
  const auto r = SampleDisorder({UniformDistribution{0, 1}, 3}, 1);
  const auto kernel = JunctionKernelBasis(h, 0.0);
  const auto certs = CayleyCertificates(cg, r, 0, 0.0, kernel.vectors);
  const Eigen::MatrixXd shifted =
      AdjacencyMatrix(h.graph) +
      r.values[0] * Eigen::MatrixXd::Identity(h.graph.vertex_count(),
                                              h.graph.vertex_count());
  for (std::size_t i = 0; i < certs.size(); ++i) {
    const Eigen::VectorXd v = certs[i].Dense(h.graph.vertex_count());
    EXPECT_LE((shifted * v - r.values[0] * v).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(CayleyCertificates, TruncatedGroupsOnInteriorFibers) {
  for (const char* spec : {"box:2:2", "free:2:2"}) {
    const auto c = MakeCayley(spec);
    for (std::size_t g = 0; g < c.cg.group.size(); ++g) {
      if (!c.cg.group.interior(g)) {
        EXPECT_EQ(CodeOf([&] {
                    CayleyCertificates(c.cg, c.r, g, 0.0, c.kernel.vectors);
                  }),
                  ErrorCode::kInvalidArgument);
        continue;
      }
      for (const auto& cert : CayleyCertificates(c.cg, c.r, g, 0.0, c.kernel.vectors)) {
        EXPECT_LE(CertificateResidual(c.op, cert), cert.tolerance) << spec;
      }
    }
  }
}

TEST(CayleyCertificates, Errors) {
  const auto c = MakeCayley("cyclic:3");
  Eigen::VectorXd bad = Eigen::VectorXd::Zero(32);
  bad[static_cast<Eigen::Index>(c.h.junctions[0])] = 1.0;
  EXPECT_EQ(CodeOf([&] { CayleyCertificates(c.cg, c.r, 0, 0.0, {bad}); }),
            ErrorCode::kInvalidArgument);
  EXPECT_EQ(CodeOf([&] {
              CayleyCertificates(c.cg, c.r, 0, 0.0,
                                 {c.kernel.vectors[0], c.kernel.vectors[0]});
            }),
            ErrorCode::kInvalidArgument);
  EXPECT_EQ(CodeOf([&] { CayleyCertificates(c.cg, c.r, 3, 0.0, c.kernel.vectors); }),
            ErrorCode::kInvalidArgument);
}

TEST(CayleyCertificates, AnchorsMustVanish) {
  // Anchor on a path vertex where the zero-energy vector is nonzero.
  const auto h = PrimePathsGraph(4, 2);
  const auto kernel = JunctionKernelBasis(h, 0.0);
  Vertex support_vertex = 0;
  for (Vertex v = 0; v < h.graph.vertex_count(); ++v) {
    if (std::abs(kernel.vectors[0][static_cast<Eigen::Index>(v)]) > 1e-3) {
      support_vertex = v;
      break;
    }
  }
  const CayleyTemplate tmpl{h.graph, {support_vertex}, {h.junctions[0]}, std::nullopt};
  const auto cg = BuildCayleyGraph(tmpl, Group::Cyclic(3));
  const auto r = SampleDisorder({UniformDistribution{0, 1}, 3}, 3);
  EXPECT_EQ(CodeOf([&] { CayleyCertificates(cg, r, 0, 0.0, kernel.vectors); }),
            ErrorCode::kPreconditionFailed);
}

TEST(CertificateResidual, DetectsAPerturbation) {
  const auto c = MakeCayley("cyclic:6");
  auto certs = CayleyCertificates(c.cg, c.r, 2, 0.0, c.kernel.vectors);
  certs[0].entries[0].second += 1e-3;
  EXPECT_GT(CertificateResidual(c.op, certs[0]), certs[0].tolerance);
}

}  // namespace
}  // namespace smult
