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

#include "smult/anderson.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "smult/error.h"

namespace smult {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

double UnitInterval(std::uint64_t word) {
  return static_cast<double>(word >> 11) * 0x1.0p-53;
}

double ParseReal(const std::string& text) {
  std::size_t pos = 0;
  double value = 0.0;
  try {
    value = std::stod(text, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos == 0 || pos != text.size()) {
    throw Error(ErrorCode::kInvalidArgument,
                "bad number '" + text + "' in distribution spec");
  }
  return value;
}

}  // namespace

void DisorderSpec::Validate() const {
  std::visit(
      Overloaded{
          [](const UniformDistribution& u) {
            if (!std::isfinite(u.lo) || !std::isfinite(u.hi) || !(u.lo < u.hi)) {
              throw Error(ErrorCode::kInvalidArgument,
                          "uniform disorder needs finite lo < hi");
            }
          },
          [](const PointMass& p) {
            if (!std::isfinite(p.value)) {
              throw Error(ErrorCode::kInvalidArgument,
                          "point mass must be finite");
            }
          },
          [](const TwoPoint& t) {
            if (!std::isfinite(t.a) || !std::isfinite(t.b) ||
                !(t.p_a >= 0.0 && t.p_a <= 1.0)) {
              throw Error(ErrorCode::kInvalidArgument,
                          "two-point disorder needs finite values and "
                          "0 <= p_a <= 1");
            }
          },
      },
      distribution);
}

std::string DisorderSpec::Describe() const {
  std::ostringstream os;
  os.precision(17);
  std::visit(Overloaded{
                 [&](const UniformDistribution& u) {
                   os << "uniform:" << u.lo << ":" << u.hi;
                 },
                 [&](const PointMass& p) { os << "point:" << p.value; },
                 [&](const TwoPoint& t) {
                   os << "twopoint:" << t.a << ":" << t.b << ":" << t.p_a;
                 },
             },
             distribution);
  return os.str();
}

Distribution ParseDistribution(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  for (std::string part; std::getline(ss, part, ':');) parts.push_back(part);
  if (parts.size() == 3 && parts[0] == "uniform") {
    return UniformDistribution{ParseReal(parts[1]), ParseReal(parts[2])};
  }
  if (parts.size() == 2 && parts[0] == "point") {
    return PointMass{ParseReal(parts[1])};
  }
  if (parts.size() == 4 && parts[0] == "twopoint") {
    return TwoPoint{ParseReal(parts[1]), ParseReal(parts[2]),
                    ParseReal(parts[3])};
  }
  throw Error(ErrorCode::kInvalidArgument,
              "unrecognized distribution '" + text +
                  "' (expected uniform:a:b, point:c, twopoint:a:b:p)");
}

double DisorderRealization::max_abs() const {
  double m = 0.0;
  for (double v : values) m = std::max(m, std::abs(v));
  return m;
}

DisorderRealization SampleDisorder(const DisorderSpec& spec,
                                   std::size_t site_count) {
  spec.Validate();
  DisorderRealization r;
  r.spec = spec;
  r.values.reserve(site_count);
  std::mt19937_64 rng(spec.seed);
  for (std::size_t s = 0; s < site_count; ++s) {
    const double u = UnitInterval(rng());
    r.values.push_back(std::visit(
        Overloaded{
            [&](const UniformDistribution& d) { return d.lo + (d.hi - d.lo) * u; },
            [&](const PointMass& d) { return d.value; },
            [&](const TwoPoint& d) { return u < d.p_a ? d.a : d.b; },
        },
        spec.distribution));
  }
  return r;
}

bool AllDistinct(const DisorderRealization& r) {
  std::vector<double> sorted = r.values;
  std::sort(sorted.begin(), sorted.end());
  return std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();
}

void RequireDistinct(const DisorderRealization& r) {
  if (!AllDistinct(r)) {
    throw Error(ErrorCode::kDegenerateDisorder,
                "disorder realization (seed " + std::to_string(r.spec.seed) +
                    ") has repeated coupling values");
  }
}

Eigen::VectorXd SiteOperator::Apply(const Eigen::VectorXd& x) const {
  Eigen::VectorXd y = adjacency * x;
  y.array() += potential.array() * x.array();
  return y;
}

Eigen::MatrixXd SiteOperator::ToDense() const {
  Eigen::MatrixXd m = Eigen::MatrixXd(adjacency);
  m.diagonal() += potential;
  return m;
}

double SiteOperator::InfinityNorm() const {
  Eigen::VectorXd rows = potential.cwiseAbs();
  for (Eigen::Index k = 0; k < adjacency.outerSize(); ++k) {
    for (Eigen::SparseMatrix<double>::InnerIterator it(adjacency, k); it; ++it) {
      rows(it.row()) += std::abs(it.value());
    }
  }
  return rows.size() ? rows.maxCoeff() : 0.0;
}

SiteOperator AssembleCanopyOperator(const TruncatedCanopy& t,
                                    const PatchSet& p,
                                    const DisorderRealization& r) {
  if (r.values.size() != p.roots.size()) {
    throw Error(ErrorCode::kInvalidArgument,
                "realization has " + std::to_string(r.values.size()) +
                    " values for " + std::to_string(p.roots.size()) +
                    " patch roots");
  }
  if (p.patch_index.size() != t.size()) {
    throw Error(ErrorCode::kInvalidArgument, "patch set does not match tree");
  }
  SiteOperator op;
  op.adjacency = SparseAdjacency(t.graph);
  op.potential.resize(static_cast<Eigen::Index>(t.size()));
  for (Vertex v = 0; v < t.size(); ++v) {
    op.potential(static_cast<Eigen::Index>(v)) = r.values[p.patch_index[v]];
  }
  op.provenance = "canopy K=" + std::to_string(t.K) + " L=" +
                  std::to_string(t.L) + " l=" + std::to_string(p.l) +
                  " disorder=" + r.spec.Describe() +
                  " seed=" + std::to_string(r.spec.seed);
  return op;
}

SiteOperator AssembleCayleyOperator(const CayleyGraph& cg,
                                    const DisorderRealization& r) {
  if (r.values.size() != cg.group.size()) {
    throw Error(ErrorCode::kInvalidArgument,
                "realization has " + std::to_string(r.values.size()) +
                    " values for " + std::to_string(cg.group.size()) +
                    " fibers");
  }
  SiteOperator op;
  op.adjacency = SparseAdjacency(cg.graph);
  op.potential.resize(static_cast<Eigen::Index>(cg.graph.vertex_count()));
  for (Vertex x = 0; x < cg.graph.vertex_count(); ++x) {
    op.potential(static_cast<Eigen::Index>(x)) = r.values[cg.fiber[x]];
  }
  op.provenance = "cayley group=" + cg.group.description() +
                  " |H|=" + std::to_string(cg.base_size()) +
                  " disorder=" + r.spec.Describe() +
                  " seed=" + std::to_string(r.spec.seed);
  return op;
}

DisorderRealization ShiftDisorder(const DisorderRealization& r, std::size_t g,
                                  const Group& group) {
  if (!group.is_finite()) {
    throw Error(ErrorCode::kUnsupported,
                "disorder shift needs a finite group, got " +
                    group.description());
  }
  if (r.values.size() != group.size() || g >= group.size()) {
    throw Error(ErrorCode::kInvalidArgument,
                "realization or element does not match the group");
  }
  DisorderRealization out;
  out.spec = r.spec;
  out.values.resize(group.size());
  for (std::size_t h = 0; h < group.size(); ++h) {
    out.values[h] = r.values[*group.Multiply(g, h)];
  }
  return out;
}

CovarianceResult CovarianceCheck(const CayleyGraph& cg,
                                 const DisorderRealization& r, std::size_t g) {
  const std::vector<Vertex> image = LeftTranslation(cg, g);
  const auto n = static_cast<Eigen::Index>(image.size());
  Eigen::MatrixXd u = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index x = 0; x < n; ++x) {
    u(x, static_cast<Eigen::Index>(image[static_cast<std::size_t>(x)])) = 1.0;
  }
  const Eigen::MatrixXd h = AssembleCayleyOperator(cg, r).ToDense();
  const Eigen::MatrixXd conjugated = u * h * u.transpose();
  const Eigen::MatrixXd shifted =
      AssembleCayleyOperator(cg, ShiftDisorder(r, g, cg.group)).ToDense();
  CovarianceResult result;
  result.max_deviation = n ? (conjugated - shifted).cwiseAbs().maxCoeff() : 0.0;
  result.exact = result.max_deviation == 0.0;
  return result;
}

}  // namespace smult
