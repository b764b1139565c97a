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

#ifndef SMULT_CERTIFICATES_H_
#define SMULT_CERTIFICATES_H_

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "smult/anderson.h"
#include "smult/canopy.h"
#include "smult/cayley.h"
#include "smult/graph.h"

namespace smult {

enum class CertificateKind { kCanopy, kCayley };

struct CertificateProvenance {
  CertificateKind kind = CertificateKind::kCanopy;
  std::size_t site = 0;        // patch root vertex x, or group element g
  double base_eigenvalue = 0;  // E, or E_0
  std::size_t psi_index = 0;   // which eigenvector of the local block
  std::size_t alpha_index = 0; // alpha row (canopy); equals psi_index (Cayley)
};

// A finitely supported unit vector with a claimed eigenvalue. The residual
// is ||(H - lambda) v||_inf, recomputed by whoever holds the operator.
struct EigenvectorCertificate {
  std::vector<std::pair<Vertex, double>> entries;  // ascending vertex
  double eigenvalue = 0.0;
  double residual = 0.0;
  double tolerance = 0.0;
  CertificateProvenance provenance;

  bool passed() const { return residual <= tolerance; }
  std::vector<Vertex> support() const;
  Eigen::VectorXd Dense(std::size_t dimension) const;
  double Norm() const;
};

// ||(H - lambda) v||_inf using the fully assembled operator.
double CertificateResidual(const SiteOperator& op,
                           const EigenvectorCertificate& c);

// max |<c_a, c_b> - delta_ab| over a set of certificates.
double GramDeviation(const std::vector<EigenvectorCertificate>& certs);

// Per-vertex inner products, for certificates on a shared host.
double InnerProduct(const EigenvectorCertificate& a,
                    const EigenvectorCertificate& b);

// Psi^(alpha) on the K forward neighbours of patch root x: alpha_y times psi
// transported to Lambda_{l-1}(y) through the breadth-first isomorphism, zero
// elsewhere, claimed eigenvalue E + omega_x. psi is an eigenvector of
// Delta_{l-1} for E. Requirements: x is a patch root, l >= 2, psi is a unit
// vector with residual <= 1e-10 (all kInvalidArgument), and depth(x) == l so
// the copies Lambda_{l-1}(y) end on the leaf boundary (kPreconditionFailed;
// deeper patches have neighbours below them and the vector is not an
// eigenvector there). Residuals are computed by direct application of H.
std::vector<EigenvectorCertificate> CanopyCertificates(
    const TruncatedCanopy& t, const PatchSet& p, const DisorderRealization& r,
    Vertex x, double E, const Eigen::VectorXd& psi);

// The same construction without the depth(x) == l requirement. Exposed so
// the leak through the lower boundary of deep patches can be measured.
std::vector<EigenvectorCertificate> CanopyCertificateCandidates(
    const TruncatedCanopy& t, const PatchSet& p, const DisorderRealization& r,
    Vertex x, double E, const Eigen::VectorXd& psi);

// Patch roots whose patch reaches the leaf boundary (depth == l).
std::vector<Vertex> CertifiableRoots(const TruncatedCanopy& t,
                                     const PatchSet& p);

// Psi^{g,i}: psi_i copied into fiber g, claimed eigenvalue E0 + omega_g.
// Requires fiber g interior and each psi_i a unit eigenvector of Delta_H at
// E0 (residual <= 1e-10), mutually orthonormal (kInvalidArgument), and
// |psi_i(anchor)| <= 1e-12 at every anchor (kPreconditionFailed).
std::vector<EigenvectorCertificate> CayleyCertificates(
    const CayleyGraph& cg, const DisorderRealization& r, std::size_t g,
    double E0, const std::vector<Eigen::VectorXd>& psis);

// Eigenvectors of the glued graph at E0 that vanish on every junction,
// built from one E0-eigenvector per piece and the kernel of the
// junction-by-piece matrix M[j][i] = psi_i(v_{i,j}).
struct JunctionKernel {
  double E0 = 0.0;
  std::vector<Eigen::VectorXd> piece_vectors;  // psi_i on piece i
  Eigen::MatrixXd attach_matrix;               // m x r
  std::size_t rank = 0;
  Eigen::MatrixXd alphas;                      // r x (r - rank)
  std::vector<Eigen::VectorXd> vectors;        // on the glued graph

  double max_residual = 0.0;           // ||(Delta_H - E0) Psi||_inf
  double max_equation_residual = 0.0;  // |sum_i alpha_i psi_i(v_{i,j})|
  bool junctions_exactly_zero = true;

  bool verified() const {
    return max_residual <= 1e-10 && max_equation_residual <= 1e-12 &&
           junctions_exactly_zero;
  }
  std::size_t dimension() const { return vectors.size(); }
};

// kInvalidArgument if some piece has no eigenvalue within 1e-10 of E0.
JunctionKernel JunctionKernelBasis(const GluedGraph& glued, double E0);

}  // namespace smult

#endif  // SMULT_CERTIFICATES_H_
