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
#include <functional>
#include <string>
#include <unordered_map>

#include <Eigen/SVD>

#include "smult/error.h"
#include "smult/spectral.h"

namespace smult {
namespace {

// ||(H - lambda) v||_inf evaluated on the rows that can be nonzero: the
// support and its neighbourhood.
double LocalResidual(const FiniteGraph& g,
                     const std::function<double(Vertex)>& potential,
                     const std::vector<std::pair<Vertex, double>>& entries,
                     double lambda) {
  std::unordered_map<Vertex, double> value;
  value.reserve(entries.size() * 2);
  for (const auto& [v, x] : entries) value[v] = x;
  auto at = [&](Vertex v) {
    auto it = value.find(v);
    return it == value.end() ? 0.0 : it->second;
  };
  std::vector<Vertex> rows;
  for (const auto& [v, x] : entries) {
    rows.push_back(v);
    for (Vertex w : g.neighbors(v)) rows.push_back(w);
  }
  std::sort(rows.begin(), rows.end());
  rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
  double worst = 0.0;
  for (Vertex q : rows) {
    double acc = (potential(q) - lambda) * at(q);
    for (Vertex w : g.neighbors(q)) acc += at(w);
    worst = std::max(worst, std::abs(acc));
  }
  return worst;
}

double SupNorm(const Eigen::VectorXd& v) {
  return v.size() ? v.cwiseAbs().maxCoeff() : 0.0;
}

void CheckLocalEigenvector(const Eigen::MatrixXd& adjacency,
                           const Eigen::VectorXd& psi, double E,
                           const std::string& what) {
  if (psi.size() != adjacency.rows()) {
    throw Error(ErrorCode::kInvalidArgument,
                what + " has length " + std::to_string(psi.size()) +
                    ", expected " + std::to_string(adjacency.rows()));
  }
  if (std::abs(psi.norm() - 1.0) > 1e-10) {
    throw Error(ErrorCode::kInvalidArgument, what + " is not a unit vector");
  }
  if (SupNorm(adjacency * psi - E * psi) > 1e-10) {
    throw Error(ErrorCode::kInvalidArgument,
                what + " is not an eigenvector for the claimed eigenvalue");
  }
}

}  // namespace

std::vector<Vertex> EigenvectorCertificate::support() const {
  std::vector<Vertex> out;
  out.reserve(entries.size());
  for (const auto& [v, x] : entries) out.push_back(v);
  return out;
}

Eigen::VectorXd EigenvectorCertificate::Dense(std::size_t dimension) const {
  Eigen::VectorXd out = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(dimension));
  for (const auto& [v, x] : entries) out(static_cast<Eigen::Index>(v)) = x;
  return out;
}

double EigenvectorCertificate::Norm() const {
  double s = 0.0;
  for (const auto& [v, x] : entries) s += x * x;
  return std::sqrt(s);
}

double CertificateResidual(const SiteOperator& op,
                           const EigenvectorCertificate& c) {
  const Eigen::VectorXd v = c.Dense(op.dimension());
  return SupNorm(op.Apply(v) - c.eigenvalue * v);
}

double InnerProduct(const EigenvectorCertificate& a,
                    const EigenvectorCertificate& b) {
  double s = 0.0;
  auto ia = a.entries.begin();
  auto ib = b.entries.begin();
  while (ia != a.entries.end() && ib != b.entries.end()) {
    if (ia->first < ib->first) {
      ++ia;
    } else if (ib->first < ia->first) {
      ++ib;
    } else {
      s += ia->second * ib->second;
      ++ia;
      ++ib;
    }
  }
  return s;
}

double GramDeviation(const std::vector<EigenvectorCertificate>& certs) {
  double worst = 0.0;
  for (std::size_t a = 0; a < certs.size(); ++a) {
    for (std::size_t b = a; b < certs.size(); ++b) {
      const double target = a == b ? 1.0 : 0.0;
      worst = std::max(worst, std::abs(InnerProduct(certs[a], certs[b]) - target));
    }
  }
  return worst;
}

std::vector<Vertex> CertifiableRoots(const TruncatedCanopy& t,
                                     const PatchSet& p) {
  std::vector<Vertex> out;
  for (Vertex x : p.roots) {
    if (t.depth[x] == p.l) out.push_back(x);
  }
  return out;
}

std::vector<EigenvectorCertificate> CanopyCertificateCandidates(
    const TruncatedCanopy& t, const PatchSet& p, const DisorderRealization& r,
    Vertex x, double E, const Eigen::VectorXd& psi) {
  const auto site = p.root_position(x);
  if (!site) {
    throw Error(ErrorCode::kInvalidArgument,
                "vertex " + std::to_string(x) + " is not a patch root");
  }
  if (p.l < 2) {
    throw Error(ErrorCode::kInvalidArgument,
                "canopy certificates need patch depth l >= 2");
  }
  if (r.values.size() != p.roots.size()) {
    throw Error(ErrorCode::kInvalidArgument,
                "realization does not cover the patch roots");
  }
  const TruncatedCanopy local = BuildTruncatedCanopy(t.K, p.l - 1);
  CheckLocalEigenvector(AdjacencyMatrix(local.graph), psi, E,
                        "subtree eigenvector");

  const AlphaBasis alpha = MakeAlphaBasis(t.K);
  const auto children = ForwardNeighbors(t, x);
  std::vector<std::vector<Vertex>> copies;
  for (Vertex y : children) copies.push_back(Subtree(t, y, p.l - 1));

  const double omega = r.values[*site];
  const double tolerance =
      1e-9 * (1.0 + std::abs(E) + static_cast<double>(t.K) + 1.0 + r.max_abs());
  auto potential = [&](Vertex q) { return r.values[p.patch_index[q]]; };

  std::vector<EigenvectorCertificate> out;
  for (Eigen::Index a = 0; a < alpha.rows.rows(); ++a) {
    EigenvectorCertificate c;
    for (std::size_t k = 0; k < copies.size(); ++k) {
      const double weight = alpha.rows(a, static_cast<Eigen::Index>(k));
      if (weight == 0.0) continue;
      for (std::size_t idx = 0; idx < copies[k].size(); ++idx) {
        const double value = weight * psi(static_cast<Eigen::Index>(idx));
        if (value != 0.0) c.entries.emplace_back(copies[k][idx], value);
      }
    }
    std::sort(c.entries.begin(), c.entries.end());
    c.eigenvalue = E + omega;
    c.tolerance = tolerance;
    c.residual = LocalResidual(t.graph, potential, c.entries, c.eigenvalue);
    c.provenance = {CertificateKind::kCanopy, x, E, 0,
                    static_cast<std::size_t>(a)};
    out.push_back(std::move(c));
  }
  return out;
}

std::vector<EigenvectorCertificate> CanopyCertificates(
    const TruncatedCanopy& t, const PatchSet& p, const DisorderRealization& r,
    Vertex x, double E, const Eigen::VectorXd& psi) {
  if (p.root_position(x) && t.depth.at(x) != p.l) {
    throw Error(ErrorCode::kPreconditionFailed,
                "patch root " + std::to_string(x) + " sits at depth " +
                    std::to_string(t.depth[x]) + " > l=" + std::to_string(p.l) +
                    "; its subtree copies do not end on the leaf boundary");
  }
  return CanopyCertificateCandidates(t, p, r, x, E, psi);
}

std::vector<EigenvectorCertificate> CayleyCertificates(
    const CayleyGraph& cg, const DisorderRealization& r, std::size_t g,
    double E0, const std::vector<Eigen::VectorXd>& psis) {
  if (g >= cg.group.size()) {
    throw Error(ErrorCode::kInvalidArgument, "fiber index out of range");
  }
  if (!cg.group.interior(g)) {
    throw Error(ErrorCode::kInvalidArgument,
                "fiber " + cg.group.label(g) + " is on the truncation boundary");
  }
  if (r.values.size() != cg.group.size()) {
    throw Error(ErrorCode::kInvalidArgument,
                "realization does not cover the fibers");
  }
  const Eigen::MatrixXd base = AdjacencyMatrix(cg.tmpl.base);
  for (std::size_t i = 0; i < psis.size(); ++i) {
    CheckLocalEigenvector(base, psis[i], E0,
                          "base eigenvector " + std::to_string(i + 1));
    for (std::size_t k = 0; k < i; ++k) {
      if (std::abs(psis[i].dot(psis[k])) > 1e-10) {
        throw Error(ErrorCode::kInvalidArgument,
                    "base eigenvectors are not orthonormal");
      }
    }
    for (Vertex a : cg.tmpl.AnchorSet()) {
      if (std::abs(psis[i](static_cast<Eigen::Index>(a))) > 1e-12) {
        throw Error(ErrorCode::kPreconditionFailed,
                    "base eigenvector " + std::to_string(i + 1) +
                        " does not vanish at anchor " + std::to_string(a));
      }
    }
  }

  const double omega = r.values[g];
  const double tolerance =
      1e-9 * (1.0 + std::abs(E0) +
              static_cast<double>(cg.graph.max_degree()) + r.max_abs());
  auto potential = [&](Vertex q) { return r.values[cg.fiber[q]]; };

  std::vector<EigenvectorCertificate> out;
  for (std::size_t i = 0; i < psis.size(); ++i) {
    EigenvectorCertificate c;
    for (Vertex v = 0; v < cg.base_size(); ++v) {
      const double value = psis[i](static_cast<Eigen::Index>(v));
      if (value != 0.0) c.entries.emplace_back(cg.VertexOf(v, g), value);
    }
    c.eigenvalue = E0 + omega;
    c.tolerance = tolerance;
    c.residual = LocalResidual(cg.graph, potential, c.entries, c.eigenvalue);
    c.provenance = {CertificateKind::kCayley, g, E0, i, i};
    out.push_back(std::move(c));
  }
  return out;
}

JunctionKernel JunctionKernelBasis(const GluedGraph& glued, double E0) {
  const auto& spec = glued.spec;
  const auto m = static_cast<Eigen::Index>(spec.junction_count);
  const auto r = static_cast<Eigen::Index>(spec.pieces.size());

  JunctionKernel out;
  out.E0 = E0;
  for (std::size_t i = 0; i < spec.pieces.size(); ++i) {
    const Eigen::MatrixXd adj = AdjacencyMatrix(spec.pieces[i]);
    const EigenSystem es = EigSym(adj);
    Eigen::Index best = 0;
    (es.eigenvalues.array() - E0).abs().minCoeff(&best);
    if (std::abs(es.eigenvalues(best) - E0) > 1e-10) {
      throw Error(ErrorCode::kInvalidArgument,
                  "piece " + std::to_string(i + 1) + " does not have " +
                      std::to_string(E0) + " in its spectrum");
    }
    Eigen::VectorXd psi = es.eigenvectors.col(best);
    // Fix the sign so that the first entry of non-negligible size is positive.
    for (Eigen::Index k = 0; k < psi.size(); ++k) {
      if (std::abs(psi(k)) > 1e-12) {
        if (psi(k) < 0) psi = -psi;
        break;
      }
    }
    CheckLocalEigenvector(adj, psi, E0, "piece " + std::to_string(i + 1) +
                                            " eigenvector");
    out.piece_vectors.push_back(std::move(psi));
  }

  out.attach_matrix.resize(m, r);
  for (Eigen::Index j = 0; j < m; ++j) {
    for (Eigen::Index i = 0; i < r; ++i) {
      const Vertex local = spec.attach_points[static_cast<std::size_t>(i)]
                                             [static_cast<std::size_t>(j)];
      out.attach_matrix(j, i) =
          out.piece_vectors[static_cast<std::size_t>(i)](static_cast<Eigen::Index>(local));
    }
  }

  const double scale = out.attach_matrix.size()
                           ? out.attach_matrix.cwiseAbs().maxCoeff()
                           : 0.0;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(out.attach_matrix, Eigen::ComputeFullV);
  // Piece vectors are unit vectors, so |M| <= 1 entrywise; the floor keeps
  // round-off in an all-but-zero M from counting towards the rank.
  const double rank_tol = 1e-10 * std::max(scale, 1.0);
  out.rank = 0;
  if (scale > 0.0) {
    for (double s : svd.singularValues()) {
      if (s > rank_tol) ++out.rank;
    }
  }
  out.alphas = svd.matrixV().rightCols(r - static_cast<Eigen::Index>(out.rank));

  const Eigen::SparseMatrix<double> adjacency = SparseAdjacency(glued.graph);
  for (Eigen::Index c = 0; c < out.alphas.cols(); ++c) {
    Eigen::VectorXd psi = Eigen::VectorXd::Zero(
        static_cast<Eigen::Index>(glued.graph.vertex_count()));
    for (Eigen::Index i = 0; i < r; ++i) {
      const auto piece = static_cast<std::size_t>(i);
      const auto offset = static_cast<Eigen::Index>(glued.piece_offsets[piece]);
      const Eigen::VectorXd& local = out.piece_vectors[piece];
      psi.segment(offset, local.size()) = out.alphas(i, c) * local;
    }
    out.max_residual =
        std::max(out.max_residual, SupNorm(adjacency * psi - E0 * psi));
    const Eigen::VectorXd eq = out.attach_matrix * out.alphas.col(c);
    out.max_equation_residual = std::max(out.max_equation_residual, SupNorm(eq));
    for (Vertex x : glued.junctions) {
      if (psi(static_cast<Eigen::Index>(x)) != 0.0) {
        out.junctions_exactly_zero = false;
      }
    }
    out.vectors.push_back(std::move(psi));
  }
  return out;
}

}  // namespace smult
