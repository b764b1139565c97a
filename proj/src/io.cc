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

#include "smult/io.h"

#include <fstream>
#include <iomanip>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>
#include <type_traits>

#include "smult/error.h"

namespace smult {
namespace {

[[noreturn]] void Malformed(const std::string& what) {
  throw Error(ErrorCode::kInvalidArgument, "malformed edge list: " + what);
}

template <typename T>
T ReadCount(std::istream& in, const char* what) {
  long long value = 0;
  if (!(in >> value)) Malformed(std::string("expected ") + what);
  if (value < 0) Malformed(std::string("negative ") + what);
  return static_cast<T>(value);
}

}  // namespace

void WriteEdgeList(std::ostream& out, const FiniteGraph& g) {
  out << g.vertex_count() << ' ' << g.edge_count() << '\n';
  for (const Edge& e : g.edges()) out << e.u << ' ' << e.v << '\n';
}

std::string EdgeListString(const FiniteGraph& g) {
  std::ostringstream out;
  WriteEdgeList(out, g);
  return out.str();
}

FiniteGraph ReadEdgeList(std::istream& in) {
  const auto n = ReadCount<std::size_t>(in, "vertex count");
  const auto m = ReadCount<std::size_t>(in, "edge count");
  std::vector<Edge> edges;
  edges.reserve(m);
  for (std::size_t k = 0; k < m; ++k) {
    const auto u = ReadCount<Vertex>(in, "edge endpoint");
    const auto v = ReadCount<Vertex>(in, "edge endpoint");
    if (u >= v) Malformed("edge " + std::to_string(k) + " does not have u < v");
    edges.push_back(Edge{u, v});
  }
  std::string rest;
  if (in >> rest) Malformed("trailing content after " + std::to_string(m) + " edges");
  return FiniteGraph(n, std::move(edges));
}

FiniteGraph ReadEdgeListFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kInvalidArgument, "cannot open " + path);
  return ReadEdgeList(in);
}

Json GraphToJson(const FiniteGraph& g) {
  Json j;
  j["n"] = g.vertex_count();
  Json edges = Json::array();
  for (const Edge& e : g.edges()) edges.push_back({e.u, e.v});
  j["edges"] = std::move(edges);
  Json labels = Json::object();
  for (const auto& [v, name] : g.labels()) labels[std::to_string(v)] = name;
  j["labels"] = std::move(labels);
  return j;
}

FiniteGraph GraphFromJson(const Json& j) {
  try {
    const auto n = j.at("n").get<std::size_t>();
    std::vector<Edge> edges;
    for (const auto& e : j.at("edges")) {
      edges.push_back(MakeEdge(e.at(0).get<Vertex>(), e.at(1).get<Vertex>()));
    }
    std::map<Vertex, std::string> labels;
    if (j.contains("labels")) {
      for (const auto& [key, value] : j.at("labels").items()) {
        labels[static_cast<Vertex>(std::stoull(key))] = value.get<std::string>();
      }
    }
    return FiniteGraph(n, std::move(edges), std::move(labels));
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::kInvalidArgument,
                std::string("malformed graph JSON: ") + e.what());
  }
}

Json CanopyToJson(const TruncatedCanopy& t) {
  Json j;
  j["K"] = t.K;
  j["L"] = t.L;
  j["depth"] = t.depth;
  Json parent = Json::array();
  for (const auto& p : t.parent) {
    if (p) {
      parent.push_back(*p);
    } else {
      parent.push_back(nullptr);
    }
  }
  j["parent"] = std::move(parent);
  return j;
}

Json CayleyToJson(const CayleyGraph& cg) {
  Json j;
  j["group"] = cg.group.description();
  j["fibers"] = cg.fiber;
  Json labels = Json::array();
  for (Vertex v = 0; v < cg.graph.vertex_count(); ++v) {
    labels.push_back(cg.graph.label(v).value_or(""));
  }
  j["vertex_labels"] = std::move(labels);
  return j;
}

void WriteOperatorCoo(std::ostream& out, const SiteOperator& op) {
  const auto flags = out.flags();
  const auto precision = out.precision();
  out << std::setprecision(std::numeric_limits<double>::max_digits10);
  const auto& a = op.adjacency;
  for (Eigen::Index row = 0; row < a.outerSize(); ++row) {
    bool diagonal_done = false;
    auto diagonal = [&] {
      out << row << ' ' << row << ' ' << op.potential[row] << '\n';
      diagonal_done = true;
    };
    for (Eigen::SparseMatrix<double>::InnerIterator it(a, row); it; ++it) {
      if (!diagonal_done && it.index() > row) diagonal();
      out << row << ' ' << it.index() << ' ' << it.value() << '\n';
    }
    if (!diagonal_done) diagonal();
  }
  out.flags(flags);
  out.precision(precision);
}

std::uint64_t StructureHash(const FiniteGraph& g) {
  std::uint64_t h = 1469598103934665603ull;
  auto mix = [&h](std::uint64_t word) {
    for (int b = 0; b < 8; ++b) {
      h ^= (word >> (8 * b)) & 0xffu;
      h *= 1099511628211ull;
    }
  };
  mix(g.vertex_count());
  for (const Edge& e : g.edges()) {
    mix(e.u);
    mix(e.v);
  }
  return h;
}

Json DisorderSpecToJson(const DisorderSpec& spec) {
  Json j;
  j["distribution"] = spec.Describe();
  j["seed"] = spec.seed;
  return j;
}

Json OperatorMetadata(const SiteOperator& op, const FiniteGraph& g,
                      const DisorderSpec& spec) {
  Json j;
  j["dimension"] = op.dimension();
  j["provenance"] = op.provenance;
  j["disorder"] = DisorderSpecToJson(spec);
  std::ostringstream hash;
  hash << std::hex << std::setw(16) << std::setfill('0') << StructureHash(g);
  j["structure_hash"] = hash.str();
  return j;
}

Json CertificateToJson(const EigenvectorCertificate& c) {
  Json j;
  j["eigenvalue"] = c.eigenvalue;
  j["residual"] = c.residual;
  j["tolerance"] = c.tolerance;
  j["passed"] = c.passed();
  j["support"] = c.support();
  Json prov;
  prov["kind"] =
      c.provenance.kind == CertificateKind::kCanopy ? "canopy" : "cayley";
  prov["site"] = c.provenance.site;
  prov["base_eigenvalue"] = c.provenance.base_eigenvalue;
  prov["psi_index"] = c.provenance.psi_index;
  prov["alpha_index"] = c.provenance.alpha_index;
  j["provenance"] = std::move(prov);
  Json vec = Json::array();
  for (const auto& [v, x] : c.entries) vec.push_back({v, x});
  j["vector"] = std::move(vec);
  return j;
}

Json AutGroupToJson(const AutGroup& a) {
  Json j;
  j["order"] = a.order.str();
  const auto& list = a.has_explicit_elements() ? a.elements : a.generators;
  Json perms = Json::array();
  for (const auto& p : list) perms.push_back(p.image);
  j[a.has_explicit_elements() ? "elements" : "generators"] = std::move(perms);
  j["fixed_set"] = a.fixed_set;
  return j;
}

void WriteHistogramCsv(std::ostream& out, const Histogram& h) {
  const auto flags = out.flags();
  const auto precision = out.precision();
  out << std::setprecision(std::numeric_limits<double>::max_digits10);
  out << "bin_lo,bin_hi,count,normalized\n";
  for (std::size_t k = 0; k < h.counts.size(); ++k) {
    out << h.bin_edges[k] << ',' << h.bin_edges[k + 1] << ',' << h.counts[k]
        << ',' << h.normalized[k] << '\n';
  }
  out.flags(flags);
  out.precision(precision);
}

Json HistogramToJson(const Histogram& h) {
  Json j;
  j["bin_edges"] = h.bin_edges;
  j["counts"] = h.counts;
  j["normalized"] = h.normalized;
  j["dimension"] = h.dimension;
  j["realizations"] = h.realizations;
  j["outside"] = h.outside;
  j["total_mass"] = h.total_mass();
  return j;
}

}  // namespace smult
