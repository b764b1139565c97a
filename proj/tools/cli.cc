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

#include "cli.h"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "smult/anderson.h"
#include "smult/automorphism.h"
#include "smult/canopy.h"
#include "smult/cayley.h"
#include "smult/certificates.h"
#include "smult/dos.h"
#include "smult/error.h"
#include "smult/graph.h"
#include "smult/group.h"
#include "smult/io.h"
#include "smult/spectral.h"

namespace smult {
namespace {

constexpr double kGramTolerance = 1e-9;
constexpr double kSelfTestPerturbation = 1e-3;

struct GlobalOptions {
  std::string out;
  std::string format = "json";
  std::string distribution = "uniform:0:1";
  double tau = kDefaultClusterTolerance;
  bool emit_vectors = false;
};

struct CanopyArgs {
  std::size_t K = 3;
  std::size_t L = 5;
  std::size_t l = 2;
  std::uint64_t seed = 0;
  bool self_test = false;
};

struct CayleyArgs {
  std::size_t pieces = 4;
  int scale = 2;
  std::string group = "cyclic:6";
  std::string anchors = "2:1";
  std::uint64_t seed = 0;
  double E0 = 0.0;
  std::size_t brute_cap = kDefaultBruteVertexCap;
};

struct DosArgs {
  std::size_t K = 3;
  std::size_t L = 5;
  std::size_t l = 2;
  std::size_t bins = 40;
  std::size_t realizations = 20;
  std::uint64_t seed = 0;
  std::optional<double> lo;
  std::optional<double> hi;
};

// A finished run: the machine-readable report, an optional CSV table, and
// human summary lines.
struct Outcome {
  Json report;
  std::string csv;
  std::vector<std::string> summary;
  bool verified = true;
};

std::string Num(double x) {
  std::ostringstream s;
  s << std::setprecision(std::numeric_limits<double>::max_digits10) << x;
  return s.str();
}

std::size_t CapFromEnv(const char* name, std::size_t fallback) {
  const char* raw = std::getenv(name);
  if (raw == nullptr || *raw == '\0') return fallback;
  std::string text(raw);
  if (!std::all_of(text.begin(), text.end(),
                   [](unsigned char c) { return std::isdigit(c); })) {
    throw Error(ErrorCode::kInvalidArgument,
                std::string(name) + " must be a positive integer");
  }
  const auto value = std::stoull(text);
  if (value == 0) {
    throw Error(ErrorCode::kInvalidArgument,
                std::string(name) + " must be a positive integer");
  }
  return static_cast<std::size_t>(value);
}

DisorderSpec MakeSpec(const GlobalOptions& g, std::uint64_t seed) {
  DisorderSpec spec{ParseDistribution(g.distribution), seed};
  spec.Validate();
  return spec;
}

Json ConfigJson(const std::string& command, const GlobalOptions& g) {
  Json j;
  j["command"] = command;
  j["distribution"] = g.distribution;
  j["tau"] = g.tau;
  j["format"] = g.format;
  return j;
}

Json CapsJson(const SizeCaps& caps) {
  Json j;
  j["tree_vertices"] = caps.tree_vertices;
  j["eig_dimension"] = caps.eig_dimension;
  j["aut_vertices"] = caps.aut_vertices;
  return j;
}

Json CertificateSummary(const EigenvectorCertificate& c, bool with_vector) {
  Json j = CertificateToJson(c);
  if (!with_vector) j.erase("vector");
  return j;
}

// "m:p" applies to every generator; "m1:p1,m2:p2,..." lists them.
AnchorAssignment ParseAnchors(const std::string& text, std::size_t n) {
  AnchorAssignment a;
  std::stringstream items(text);
  std::string item;
  while (std::getline(items, item, ',')) {
    const auto colon = item.find(':');
    if (colon == std::string::npos) {
      throw Error(ErrorCode::kInvalidArgument,
                  "anchor pair '" + item + "' is not of the form m:p");
    }
    try {
      a.minus.push_back(std::stoul(item.substr(0, colon)));
      a.plus.push_back(std::stoul(item.substr(colon + 1)));
    } catch (const std::exception&) {
      throw Error(ErrorCode::kInvalidArgument,
                  "anchor pair '" + item + "' is not numeric");
    }
  }
  if (a.minus.size() == 1 && n != 1) {
    a.minus.assign(n, a.minus.front());
    a.plus.assign(n, a.plus.front());
  }
  if (a.minus.size() != n) {
    throw Error(ErrorCode::kInvalidArgument,
                "expected " + std::to_string(n) + " anchor pairs, got " +
                    std::to_string(a.minus.size()));
  }
  return a;
}

Outcome CanopyVerify(const CanopyArgs& a, const GlobalOptions& g,
                     const SizeCaps& caps) {
  if (a.l < 2) {
    throw Error(ErrorCode::kInvalidArgument, "canopy certificates need l >= 2");
  }
  const TruncatedCanopy t = BuildTruncatedCanopy(a.K, a.L, caps.tree_vertices);
  const PatchSet p = PotentialRoots(t, a.l);
  const DisorderSpec spec = MakeSpec(g, a.seed);
  const DisorderRealization r = SampleDisorder(spec, p.roots.size());
  const SiteOperator op = AssembleCanopyOperator(t, p, r);
  const EigenSystem local =
      SubtreeEigenpairs(a.K, a.l - 1, caps.eig_dimension);
  const Eigen::VectorXd spectrum =
      EigSym(op.ToDense(), caps.eig_dimension).eigenvalues;
  const auto local_clusters = ClusterMultiplicities(local.eigenvalues, 1e-9);

  std::vector<EigenvectorCertificate> certs;
  std::vector<std::size_t> root_begin;
  const auto certifiable = CertifiableRoots(t, p);
  for (Vertex x : certifiable) {
    root_begin.push_back(certs.size());
    for (Eigen::Index k = 0; k < local.eigenvalues.size(); ++k) {
      auto batch = CanopyCertificates(t, p, r, x, local.eigenvalues[k],
                                      local.eigenvectors.col(k));
      for (auto& c : batch) {
        c.provenance.psi_index = static_cast<std::size_t>(k);
        certs.push_back(std::move(c));
      }
    }
  }
  root_begin.push_back(certs.size());

  Json self_test = nullptr;
  if (a.self_test && !certs.empty()) {
    auto& victim = certs.front();
    victim.entries.front().second += kSelfTestPerturbation;
    self_test = Json::object();
    self_test["perturbation"] = kSelfTestPerturbation;
    self_test["vertex"] = victim.entries.front().first;
    self_test["certificate_index"] = 0;
  }

  Outcome o;
  std::size_t failed = 0;
  double worst_residual = 0.0;
  double worst_gram = 0.0;
  Json cert_json = Json::array();
  std::ostringstream csv;
  csv << "site,base_eigenvalue,psi_index,alpha_index,eigenvalue,residual,"
         "tolerance,passed\n";
  for (auto& c : certs) {
    c.residual = CertificateResidual(op, c);
    worst_residual = std::max(worst_residual, c.residual);
    if (!c.passed()) ++failed;
    cert_json.push_back(CertificateSummary(c, g.emit_vectors));
    csv << c.provenance.site << ',' << Num(c.provenance.base_eigenvalue)
        << ',' << c.provenance.psi_index << ',' << c.provenance.alpha_index
        << ',' << Num(c.eigenvalue) << ',' << Num(c.residual) << ','
        << Num(c.tolerance) << ',' << (c.passed() ? "true" : "false") << '\n';
  }
  for (std::size_t k = 0; k + 1 < root_begin.size(); ++k) {
    std::vector<EigenvectorCertificate> at_root(
        certs.begin() + static_cast<std::ptrdiff_t>(root_begin[k]),
        certs.begin() + static_cast<std::ptrdiff_t>(root_begin[k + 1]));
    worst_gram = std::max(worst_gram, GramDeviation(at_root));
  }

  Json multiplicities = Json::array();
  std::size_t short_clusters = 0;
  for (Vertex x : certifiable) {
    const double omega = r.values[*p.root_position(x)];
    for (const auto& cl : local_clusters) {
      const std::size_t required = (a.K - 1) * cl.count;
      const std::size_t found = CountNear(spectrum, cl.value + omega, g.tau);
      if (found < required) ++short_clusters;
      multiplicities.push_back({{"root", x},
                                {"base_eigenvalue", cl.value},
                                {"eigenvalue", cl.value + omega},
                                {"required", required},
                                {"found", found}});
    }
  }

  Json uncertifiable = Json::array();
  for (Vertex x : p.roots) {
    if (t.depth[x] == a.l) continue;
    double leak = 0.0;
    for (Eigen::Index k = 0; k < local.eigenvalues.size(); ++k) {
      for (const auto& c : CanopyCertificateCandidates(
               t, p, r, x, local.eigenvalues[k], local.eigenvectors.col(k))) {
        leak = std::max(leak, CertificateResidual(op, c));
      }
    }
    uncertifiable.push_back(
        {{"root", x}, {"depth", t.depth[x]}, {"candidate_residual", leak}});
  }

  const BandCount whole = CertifiedBandCount(t, p, r, spectrum, local.eigenvalues,
                                             -kWholeLine, kWholeLine);

  o.verified = failed == 0 && worst_gram <= kGramTolerance &&
               short_clusters == 0 && whole.certified <= whole.observed;

  Json config = ConfigJson("canopy-verify", g);
  config["K"] = a.K;
  config["L"] = a.L;
  config["l"] = a.l;
  config["seed"] = a.seed;
  config["self_test"] = a.self_test;
  o.report["config"] = config;
  o.report["operator"] = OperatorMetadata(op, t.graph, spec);
  o.report["couplings"] = r.values;
  o.report["local_spectrum"] = std::vector<double>(
      local.eigenvalues.data(), local.eigenvalues.data() + local.eigenvalues.size());
  o.report["patch_roots"] = p.roots.size();
  o.report["certifiable_roots"] = certifiable.size();
  o.report["uncertifiable_roots"] = uncertifiable;
  o.report["certificate_count"] = certs.size();
  o.report["failed_certificates"] = failed;
  o.report["max_residual"] = worst_residual;
  o.report["max_gram_deviation"] = worst_gram;
  o.report["multiplicities"] = multiplicities;
  o.report["band_whole_line"] = {{"certified", whole.certified},
                                 {"observed", whole.observed}};
  o.report["certificates"] = cert_json;
  o.report["self_test"] = self_test;
  o.report["verified"] = o.verified;
  o.csv = csv.str();

  o.summary.push_back("tree: K=" + std::to_string(a.K) + " L=" +
                      std::to_string(a.L) + " l=" + std::to_string(a.l) +
                      ", " + std::to_string(t.size()) + " vertices, " +
                      std::to_string(p.roots.size()) + " patch roots");
  o.summary.push_back("certificates: " + std::to_string(certs.size()) +
                      " issued, " + std::to_string(failed) + " failed, max residual " +
                      Num(worst_residual));
  o.summary.push_back("roots below the leaf patch layer (not certifiable): " +
                      std::to_string(uncertifiable.size()));
  o.summary.push_back("clusters short of the certified multiplicity: " +
                      std::to_string(short_clusters));
  o.summary.push_back("whole line: certified " + std::to_string(whole.certified) +
                      " <= observed " + std::to_string(whole.observed));
  return o;
}

struct CayleySetup {
  GluedGraph glued;
  CayleyTemplate tmpl;
  CayleyGraph cg;
  DisorderSpec spec;
  DisorderRealization r;
};

CayleySetup BuildCayleySetup(const CayleyArgs& a, const GlobalOptions& g,
                             const SizeCaps& caps) {
  GluedGraph glued = PrimePathsGraph(a.pieces, a.scale);
  const Group group = ParseGroup(a.group);
  CayleyTemplate tmpl = TemplateFromJunctions(
      glued, ParseAnchors(a.anchors, group.generator_count()));
  CayleyGraph cg = BuildCayleyGraph(tmpl, group, caps.tree_vertices);
  DisorderSpec spec = MakeSpec(g, a.seed);
  DisorderRealization r = SampleDisorder(spec, group.size());
  return {std::move(glued), std::move(tmpl), std::move(cg), spec, std::move(r)};
}

Json CayleyConfig(const std::string& command, const CayleyArgs& a,
                  const GlobalOptions& g) {
  Json config = ConfigJson(command, g);
  config["pieces"] = a.pieces;
  config["scale"] = a.scale;
  config["group"] = a.group;
  config["anchors"] = a.anchors;
  config["seed"] = a.seed;
  return config;
}

Outcome CayleyVerify(const CayleyArgs& a, const GlobalOptions& g,
                     const SizeCaps& caps) {
  const CayleySetup s = BuildCayleySetup(a, g, caps);
  const CayleyGraph& cg = s.cg;
  const JunctionKernel kernel = JunctionKernelBasis(s.glued, a.E0);
  const SiteOperator op = AssembleCayleyOperator(cg, s.r);

  Outcome o;
  std::optional<Eigen::VectorXd> spectrum;
  if (op.dimension() <= caps.eig_dimension) {
    spectrum = EigSym(op.ToDense(), caps.eig_dimension).eigenvalues;
  }

  std::size_t failed = 0;
  std::size_t issued = 0;
  std::size_t short_fibers = 0;
  double worst_residual = 0.0;
  double worst_gram = 0.0;
  Json fibers = Json::array();
  Json cert_json = Json::array();
  std::ostringstream csv;
  csv << "fiber,psi_index,eigenvalue,residual,tolerance,passed\n";
  for (std::size_t h = 0; h < cg.group.size(); ++h) {
    Json fj;
    fj["fiber"] = h;
    fj["label"] = cg.group.label(h);
    fj["coupling"] = s.r.values[h];
    fj["interior"] = cg.group.interior(h);
    if (!cg.group.interior(h) || kernel.dimension() == 0) {
      fibers.push_back(fj);
      continue;
    }
    auto certs = CayleyCertificates(cg, s.r, h, a.E0, kernel.vectors);
    for (auto& c : certs) {
      c.residual = CertificateResidual(op, c);
      worst_residual = std::max(worst_residual, c.residual);
      if (!c.passed()) ++failed;
      ++issued;
      cert_json.push_back(CertificateSummary(c, g.emit_vectors));
      csv << h << ',' << c.provenance.psi_index << ',' << Num(c.eigenvalue)
          << ',' << Num(c.residual) << ',' << Num(c.tolerance) << ','
          << (c.passed() ? "true" : "false") << '\n';
    }
    worst_gram = std::max(worst_gram, GramDeviation(certs));
    fj["certificates"] = certs.size();
    if (spectrum) {
      const std::size_t found = CountNear(*spectrum, a.E0 + s.r.values[h], g.tau);
      fj["eigenvalues_near"] = found;
      if (found < certs.size()) ++short_fibers;
    }
    fibers.push_back(fj);
  }

  Json covariance = Json::array();
  bool covariance_exact = true;
  if (cg.group.is_finite()) {
    for (std::size_t gen : cg.group.generators()) {
      const auto c = CovarianceCheck(cg, s.r, gen);
      covariance_exact = covariance_exact && c.exact;
      covariance.push_back({{"element", gen},
                            {"label", cg.group.label(gen)},
                            {"max_deviation", c.max_deviation},
                            {"exact", c.exact}});
    }
  }

  o.verified = kernel.verified() && failed == 0 &&
               worst_gram <= kGramTolerance && short_fibers == 0 &&
               covariance_exact;

  Json config = CayleyConfig("cayley-verify", a, g);
  config["E0"] = a.E0;
  o.report["config"] = config;
  o.report["operator"] = OperatorMetadata(op, cg.graph, s.spec);
  o.report["base_vertices"] = s.glued.graph.vertex_count();
  o.report["group_size"] = cg.group.size();
  o.report["kernel"] = {{"dimension", kernel.dimension()},
                        {"rank", kernel.rank},
                        {"max_residual", kernel.max_residual},
                        {"max_equation_residual", kernel.max_equation_residual},
                        {"junctions_exactly_zero", kernel.junctions_exactly_zero},
                        {"verified", kernel.verified()}};
  o.report["fibers"] = fibers;
  o.report["certificate_count"] = issued;
  o.report["failed_certificates"] = failed;
  o.report["max_residual"] = worst_residual;
  o.report["max_gram_deviation"] = worst_gram;
  o.report["spectrum_checked"] = spectrum.has_value();
  o.report["covariance"] = covariance;
  o.report["certificates"] = cert_json;
  o.report["verified"] = o.verified;
  o.csv = csv.str();

  o.summary.push_back("H: " + std::to_string(s.glued.graph.vertex_count()) +
                      " vertices; H_G: " + std::to_string(cg.graph.vertex_count()) +
                      " vertices over " + cg.group.description());
  o.summary.push_back("kernel dimension " + std::to_string(kernel.dimension()) +
                      (kernel.verified() ? " (verified)" : " (NOT verified)"));
  o.summary.push_back("certificates: " + std::to_string(issued) + " issued, " +
                      std::to_string(failed) + " failed, max residual " +
                      Num(worst_residual));
  if (!spectrum) o.summary.push_back("spectrum check skipped: dimension over cap");
  o.summary.push_back(
      !cg.group.is_finite()
          ? std::string("covariance check skipped: group is not finite")
          : std::string("covariance under generators: ") +
                (covariance_exact ? "exact" : "VIOLATED"));
  return o;
}

Outcome Aut(const CayleyArgs& a, const GlobalOptions& g, const SizeCaps& caps) {
  const CayleySetup s = BuildCayleySetup(a, g, caps);
  const auto anchors = s.tmpl.AnchorSet();
  const AutGroup base = Automorphisms(s.glued.graph, anchors, caps.aut_vertices);
  const AutGroup structural = AndersonAutomorphisms(s.cg, s.r);

  Outcome o;
  const std::size_t brute_cap = std::min(a.brute_cap, caps.aut_vertices);
  Json brute = nullptr;
  bool agree = true;
  if (s.cg.graph.vertex_count() <= brute_cap) {
    const AutGroup b = BruteAndersonAutomorphisms(s.cg, s.r, brute_cap);
    agree = b.order == structural.order;
    if (agree && b.has_explicit_elements() && structural.has_explicit_elements()) {
      agree = b.elements == structural.elements;
    }
    brute = AutGroupToJson(b);
  }
  GroupOrder expected = 1;
  for (std::size_t k = 0; k < s.cg.group.size(); ++k) expected *= base.order;
  o.verified = agree && expected == structural.order;

  o.report["config"] = CayleyConfig("aut", a, g);
  o.report["anchor_set"] = anchors;
  o.report["base_stabilizer"] = AutGroupToJson(base);
  o.report["anderson_automorphisms"] = AutGroupToJson(structural);
  o.report["brute_force"] = brute;
  o.report["brute_force_agrees"] = brute.is_null() ? Json(nullptr) : Json(agree);
  o.report["couplings"] = s.r.values;
  o.report["verified"] = o.verified;
  o.csv = "quantity,value\nbase_stabilizer_order," + base.order.str() +
          "\nanderson_order," + structural.order.str() + "\nbrute_order," +
          (brute.is_null() ? std::string("") : brute["order"].get<std::string>()) +
          "\n";

  o.summary.push_back("Aut(H | anchors) order " + base.order.str());
  o.summary.push_back("Aut_And(H_G) order " + structural.order.str() +
                      " over " + s.cg.group.description());
  o.summary.push_back(brute.is_null()
                          ? std::string("brute force skipped: over vertex cap")
                          : "brute force order " +
                                brute["order"].get<std::string>() +
                                (agree ? " (agrees)" : " (DISAGREES)"));
  return o;
}

Outcome Spectrum(const std::string& path, const GlobalOptions& g,
                 const SizeCaps& caps) {
  FiniteGraph graph;
  if (path.size() >= 5 && path.substr(path.size() - 5) == ".json") {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::kInvalidArgument, "cannot open " + path);
    Json j;
    try {
      j = Json::parse(in);
    } catch (const Json::exception& e) {
      throw Error(ErrorCode::kInvalidArgument, e.what());
    }
    graph = GraphFromJson(j);
  } else {
    graph = ReadEdgeListFile(path);
  }
  const EigenSystem es = EigSym(AdjacencyMatrix(graph), caps.eig_dimension);
  Outcome o;
  const double bound = 1e-9 * (1.0 + static_cast<double>(graph.max_degree()));
  o.verified = es.residual_bound <= bound;
  Json config = ConfigJson("spectrum", g);
  config["graph"] = path;
  o.report["config"] = config;
  o.report["vertices"] = graph.vertex_count();
  o.report["edges"] = graph.edge_count();
  o.report["eigenvalues"] = std::vector<double>(
      es.eigenvalues.data(), es.eigenvalues.data() + es.eigenvalues.size());
  Json clusters = Json::array();
  for (const auto& c : ClusterMultiplicities(es.eigenvalues, g.tau)) {
    clusters.push_back({{"value", c.value}, {"count", c.count}});
  }
  o.report["clusters"] = clusters;
  o.report["residual_bound"] = es.residual_bound;
  o.report["verified"] = o.verified;
  std::ostringstream csv;
  csv << "index,eigenvalue\n";
  for (Eigen::Index k = 0; k < es.eigenvalues.size(); ++k) {
    csv << k << ',' << Num(es.eigenvalues[k]) << '\n';
  }
  o.csv = csv.str();
  o.summary.push_back(std::to_string(graph.vertex_count()) + " eigenvalues, " +
                      std::to_string(clusters.size()) + " distinct at tau " +
                      Num(g.tau));
  return o;
}

Outcome Dos(const DosArgs& a, const GlobalOptions& g, const SizeCaps& caps) {
  if (a.l < 2) {
    throw Error(ErrorCode::kInvalidArgument, "certified counts need l >= 2");
  }
  const TruncatedCanopy t = BuildTruncatedCanopy(a.K, a.L, caps.tree_vertices);
  const PatchSet p = PotentialRoots(t, a.l);
  const double reach = static_cast<double>(a.K) + 2.0;
  const double lo = a.lo.value_or(-reach);
  const double hi = a.hi.value_or(reach);
  const auto edges = UniformBinEdges(lo, hi, a.bins);
  const DisorderSpec spec = MakeSpec(g, a.seed);
  const Histogram h = EigenvalueHistogram({a.K, a.L, a.l}, spec, edges,
                                          a.realizations, caps.eig_dimension);
  const Eigen::VectorXd local =
      SubtreeEigenpairs(a.K, a.l - 1, caps.eig_dimension).eigenvalues;

  Outcome o;
  std::size_t violations = 0;
  Json runs = Json::array();
  for (std::size_t k = 0; k < a.realizations; ++k) {
    DisorderSpec sk = spec;
    sk.seed = spec.seed + k;
    const auto r = SampleDisorder(sk, p.roots.size());
    const Eigen::VectorXd spectrum =
        EigSym(AssembleCanopyOperator(t, p, r).ToDense(), caps.eig_dimension)
            .eigenvalues;
    const auto whole =
        CertifiedBandCount(t, p, r, spectrum, local, -kWholeLine, kWholeLine);
    std::size_t bad = whole.certified > whole.observed ? 1 : 0;
    Json bins = Json::array();
    for (std::size_t b = 0; b + 1 < edges.size(); ++b) {
      const auto band = CertifiedBandCount(t, p, r, spectrum, local, edges[b],
                                           edges[b + 1]);
      if (band.certified > band.observed) ++bad;
      bins.push_back({band.certified, band.observed});
    }
    violations += bad;
    runs.push_back({{"seed", sk.seed},
                    {"certified_whole_line", whole.certified},
                    {"observed_whole_line", whole.observed},
                    {"bands_certified_observed", bins},
                    {"violations", bad}});
  }
  o.verified = violations == 0;

  Json config = ConfigJson("dos", g);
  config["K"] = a.K;
  config["L"] = a.L;
  config["l"] = a.l;
  config["bins"] = a.bins;
  config["lo"] = lo;
  config["hi"] = hi;
  config["realizations"] = a.realizations;
  config["seed"] = a.seed;
  o.report["config"] = config;
  o.report["histogram"] = HistogramToJson(h);
  o.report["realizations"] = runs;
  o.report["band_edge_slack"] = kBandEdgeSlack;
  o.report["violations"] = violations;
  o.report["verified"] = o.verified;
  std::ostringstream csv;
  WriteHistogramCsv(csv, h);
  o.csv = csv.str();
  o.summary.push_back(std::to_string(a.realizations) + " realizations of " +
                      std::to_string(t.size()) + " eigenvalues, mass in bins " +
                      Num(h.total_mass()));
  o.summary.push_back("bands where certified > observed: " +
                      std::to_string(violations));
  return o;
}

Outcome Example1(const std::string& path, const GlobalOptions& g) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kInvalidArgument, "cannot open " + path);
  GluedGraphSpec spec;
  double E0 = 0.0;
  try {
    const Json j = Json::parse(in);
    for (const auto& piece : j.at("pieces")) spec.pieces.push_back(GraphFromJson(piece));
    spec.attach_points =
        j.at("attach_points").get<std::vector<std::vector<Vertex>>>();
    spec.junction_count = j.at("junction_count").get<std::size_t>();
    E0 = j.value("E0", 0.0);
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::kInvalidArgument,
                std::string("malformed pieces spec: ") + e.what());
  }
  const GluedGraph glued = GlueSubgraphs(spec);
  const JunctionKernel kernel = JunctionKernelBasis(glued, E0);

  Outcome o;
  o.verified = kernel.verified();
  Json config = ConfigJson("example1", g);
  config["pieces_spec"] = path;
  config["E0"] = E0;
  o.report["config"] = config;
  o.report["graph"] = GraphToJson(glued.graph);
  o.report["junctions"] = glued.junctions;
  Json attach = Json::array();
  for (Eigen::Index j = 0; j < kernel.attach_matrix.rows(); ++j) {
    std::vector<double> row(static_cast<std::size_t>(kernel.attach_matrix.cols()));
    for (Eigen::Index i = 0; i < kernel.attach_matrix.cols(); ++i) {
      row[static_cast<std::size_t>(i)] = kernel.attach_matrix(j, i);
    }
    attach.push_back(row);
  }
  o.report["attach_matrix"] = attach;
  o.report["rank"] = kernel.rank;
  o.report["dimension"] = kernel.dimension();
  Json vectors = Json::array();
  for (const auto& v : kernel.vectors) {
    vectors.push_back(std::vector<double>(v.data(), v.data() + v.size()));
  }
  o.report["vectors"] = vectors;
  o.report["max_residual"] = kernel.max_residual;
  o.report["max_equation_residual"] = kernel.max_equation_residual;
  o.report["junctions_exactly_zero"] = kernel.junctions_exactly_zero;
  o.report["verified"] = o.verified;
  o.summary.push_back("glued graph: " + std::to_string(glued.graph.vertex_count()) +
                      " vertices, kernel dimension " +
                      std::to_string(kernel.dimension()) + ", max residual " +
                      Num(kernel.max_residual));
  return o;
}

int ExitFor(ErrorCode code) {
  switch (code) {
    case ErrorCode::kTooLarge:
      return kExitSizeCap;
    case ErrorCode::kPreconditionFailed:
      return kExitVerificationFailed;
    default:
      return kExitInvalidConfig;
  }
}

int Emit(const Outcome& o, const GlobalOptions& g, std::ostream& out,
         std::ostream& err) {
  std::string body;
  if (g.format == "csv") {
    if (o.csv.empty()) {
      err << "error: this command has no CSV output\n";
      return kExitInvalidConfig;
    }
    body = o.csv;
  } else {
    body = o.report.dump(2) + "\n";
  }
  if (g.out.empty()) {
    out << body;
  } else {
    std::ofstream file(g.out, std::ios::binary);
    if (!file) {
      err << "error: cannot write " << g.out << "\n";
      return kExitInvalidConfig;
    }
    file << body;
    for (const auto& line : o.summary) out << line << "\n";
    out << (o.verified ? "verification: PASS" : "verification: FAIL") << "\n";
  }
  return o.verified ? kExitOk : kExitVerificationFailed;
}

}  // namespace

SizeCaps SizeCapsFromEnvironment() {
  return {CapFromEnv("SMULT_MAX_TREE_VERTICES", kDefaultTreeVertexCap),
          CapFromEnv("SMULT_MAX_EIG_DIM", kDefaultEigDimensionCap),
          CapFromEnv("SMULT_MAX_AUT_VERTICES", kDefaultAutVertexCap)};
}

int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err) {
  CLI::App app{"Anderson-type operators on canopy trees and Cayley-type "
               "graphs: eigenvector certificates, automorphisms, density of "
               "states",
               "smult"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOptions g;
  app.add_option("--out", g.out, "Write the report here instead of stdout");
  app.add_option("--format", g.format, "Report format")
      ->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--distribution", g.distribution,
                 "uniform:a:b | point:c | twopoint:a:b:p");
  app.add_option("--tau", g.tau, "Eigenvalue clustering tolerance")
      ->check(CLI::PositiveNumber);
  app.add_flag("--emit-vectors", g.emit_vectors,
               "Include certificate vectors in JSON reports");

  CanopyArgs canopy;
  auto* cv = app.add_subcommand("canopy-verify", "Canopy tree certificates");
  cv->add_option("--K", canopy.K, "Branching factor")->required();
  cv->add_option("--L", canopy.L, "Truncation depth")->required();
  cv->add_option("--l", canopy.l, "Patch depth")->required();
  cv->add_option("--seed", canopy.seed, "Disorder seed");
  cv->add_flag("--self-test", canopy.self_test,
               "Perturb one certificate entry; the run must then fail");

  CayleyArgs cayley;
  auto add_cayley = [&cayley](CLI::App* sub) {
    sub->add_option("--pieces", cayley.pieces, "Number of prime paths")
        ->check(CLI::PositiveNumber);
    sub->add_option("--group", cayley.group,
                    "cyclic:m | product:axb | box:d:R | free:r:R");
    sub->add_option("--seed", cayley.seed, "Disorder seed");
    sub->add_option("--anchors", cayley.anchors,
                    "Junction pairs minus:plus, one for all generators or one "
                    "per generator");
    sub->add_option("--scale", cayley.scale, "Path sizes scale * p - 1")
        ->check(CLI::IsMember({2, 3}));
  };
  auto* cy = app.add_subcommand("cayley-verify", "Cayley graph certificates");
  add_cayley(cy);
  cy->add_option("--E0", cayley.E0, "Target eigenvalue of the pieces");
  auto* au = app.add_subcommand("aut", "Automorphism groups");
  add_cayley(au);
  au->add_option("--brute-cap", cayley.brute_cap,
                 "Largest graph searched by brute force");

  std::string graph_path;
  auto* sp = app.add_subcommand("spectrum", "Adjacency spectrum of a graph");
  sp->add_option("--graph", graph_path, "Edge list, or graph JSON (.json)")
      ->required();

  DosArgs dos;
  auto* ds = app.add_subcommand("dos", "Density of states and certified counts");
  ds->add_option("--K", dos.K, "Branching factor")->required();
  ds->add_option("--L", dos.L, "Truncation depth")->required();
  ds->add_option("--l", dos.l, "Patch depth")->required();
  ds->add_option("--bins", dos.bins, "Histogram bins")->check(CLI::PositiveNumber);
  ds->add_option("--realizations", dos.realizations, "Disorder realizations")
      ->check(CLI::PositiveNumber);
  ds->add_option("--seed", dos.seed, "Seed of the first realization");
  ds->add_option("--lo", dos.lo, "Lower histogram edge");
  ds->add_option("--hi", dos.hi, "Upper histogram edge");

  std::string pieces_spec;
  auto* ex = app.add_subcommand("example1", "Glued graph kernel basis");
  ex->add_option("--pieces-spec", pieces_spec, "JSON pieces specification")
      ->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInvalidConfig;
  }

  try {
    const SizeCaps caps = SizeCapsFromEnvironment();
    Outcome o;
    if (*cv) {
      o = CanopyVerify(canopy, g, caps);
    } else if (*cy) {
      o = CayleyVerify(cayley, g, caps);
    } else if (*au) {
      o = Aut(cayley, g, caps);
    } else if (*sp) {
      o = Spectrum(graph_path, g, caps);
    } else if (*ds) {
      o = Dos(dos, g, caps);
    } else {
      o = Example1(pieces_spec, g);
    }
    o.report["caps"] = CapsJson(caps);
    return Emit(o, g, out, err);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return ExitFor(e.code());
  }
}

int RunCli(int argc, char** argv) {
  std::vector<std::string> args;
  for (int k = 1; k < argc; ++k) args.emplace_back(argv[k]);
  return RunCli(args, std::cout, std::cerr);
}

}  // namespace smult
