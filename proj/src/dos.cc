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

#include "smult/dos.h"

#include <algorithm>
#include <future>
#include <numeric>
#include <string>
#include <thread>

#include "smult/certificates.h"
#include "smult/error.h"

namespace smult {

double Histogram::total_mass() const {
  return std::accumulate(normalized.begin(), normalized.end(), 0.0);
}

std::vector<double> UniformBinEdges(double lo, double hi, std::size_t bins) {
  if (bins == 0 || !(lo < hi)) {
    throw Error(ErrorCode::kInvalidArgument, "need bins >= 1 and lo < hi");
  }
  std::vector<double> edges(bins + 1);
  for (std::size_t k = 0; k <= bins; ++k) {
    edges[k] = lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(bins);
  }
  edges.back() = hi;
  return edges;
}

void AccumulateHistogram(Histogram& h, const Eigen::VectorXd& eigenvalues) {
  const auto& e = h.bin_edges;
  for (double v : eigenvalues) {
    if (v < e.front() || v > e.back()) {
      ++h.outside;
      continue;
    }
    auto it = std::upper_bound(e.begin(), e.end(), v);
    std::size_t bin = static_cast<std::size_t>(it - e.begin());
    bin = bin == 0 ? 0 : bin - 1;
    bin = std::min(bin, h.counts.size() - 1);
    h.counts[bin] += 1.0;
  }
}

Histogram EigenvalueHistogram(const CanopyConfig& config,
                              const DisorderSpec& spec,
                              const std::vector<double>& bin_edges,
                              std::size_t realizations, std::size_t eig_cap) {
  if (bin_edges.size() < 2 ||
      !std::is_sorted(bin_edges.begin(), bin_edges.end()) ||
      bin_edges.front() == bin_edges.back()) {
    throw Error(ErrorCode::kInvalidArgument, "bin edges must ascend");
  }
  if (realizations == 0) {
    throw Error(ErrorCode::kInvalidArgument, "need at least one realization");
  }
  spec.Validate();
  const TruncatedCanopy t = BuildTruncatedCanopy(config.K, config.L);
  if (t.size() > eig_cap) {
    throw Error(ErrorCode::kTooLarge,
                "operator dimension " + std::to_string(t.size()) +
                    " exceeds the eigensolver cap");
  }
  const PatchSet p = PotentialRoots(t, config.l);

  auto spectrum_of = [&](std::size_t k) {
    DisorderSpec s = spec;
    s.seed = spec.seed + k;
    const auto r = SampleDisorder(s, p.roots.size());
    return EigSym(AssembleCanopyOperator(t, p, r).ToDense(), eig_cap).eigenvalues;
  };

  std::vector<Eigen::VectorXd> spectra(realizations);
  const std::size_t workers =
      std::max<std::size_t>(1, std::thread::hardware_concurrency());
  for (std::size_t begin = 0; begin < realizations; begin += workers) {
    const std::size_t end = std::min(realizations, begin + workers);
    std::vector<std::future<Eigen::VectorXd>> jobs;
    for (std::size_t k = begin; k < end; ++k) {
      jobs.push_back(std::async(std::launch::async, spectrum_of, k));
    }
    for (std::size_t k = begin; k < end; ++k) spectra[k] = jobs[k - begin].get();
  }

  Histogram h;
  h.bin_edges = bin_edges;
  h.counts.assign(bin_edges.size() - 1, 0.0);
  h.dimension = t.size();
  h.realizations = realizations;
  for (const auto& s : spectra) AccumulateHistogram(h, s);
  const double scale = static_cast<double>(h.dimension * h.realizations);
  h.normalized.resize(h.counts.size());
  for (std::size_t k = 0; k < h.counts.size(); ++k) {
    h.normalized[k] = h.counts[k] / scale;
  }
  return h;
}

BandCount CertifiedBandCount(const TruncatedCanopy& t, const PatchSet& p,
                             const DisorderRealization& r,
                             const Eigen::VectorXd& operator_spectrum,
                             const Eigen::VectorXd& local_spectrum, double lo,
                             double hi) {
  if (r.values.size() != p.roots.size()) {
    throw Error(ErrorCode::kInvalidArgument,
                "realization does not cover the patch roots");
  }
  BandCount b;
  b.lo = lo;
  b.hi = hi;
  if (lo > hi) return b;
  std::size_t pairs = 0;
  for (Vertex x : CertifiableRoots(t, p)) {
    const double omega = r.values[*p.root_position(x)];
    for (double E : local_spectrum) {
      const double lambda = E + omega;
      if (lambda >= lo && lambda <= hi) ++pairs;
    }
  }
  b.certified = (t.K - 1) * pairs;
  b.observed =
      CountInBand(operator_spectrum, lo - kBandEdgeSlack, hi + kBandEdgeSlack);
  return b;
}

BandCount CertifiedBandCount(const TruncatedCanopy& t, const PatchSet& p,
                             const DisorderRealization& r, double lo,
                             double hi) {
  if (p.l < 2) {
    throw Error(ErrorCode::kInvalidArgument, "certified counts need l >= 2");
  }
  const auto spectrum =
      EigSym(AssembleCanopyOperator(t, p, r).ToDense()).eigenvalues;
  const auto local = SubtreeEigenpairs(t.K, p.l - 1).eigenvalues;
  return CertifiedBandCount(t, p, r, spectrum, local, lo, hi);
}

}  // namespace smult
