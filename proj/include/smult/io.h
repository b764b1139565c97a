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

#ifndef SMULT_IO_H_
#define SMULT_IO_H_

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"

#include "smult/anderson.h"
#include "smult/automorphism.h"
#include "smult/canopy.h"
#include "smult/cayley.h"
#include "smult/certificates.h"
#include "smult/dos.h"
#include "smult/graph.h"

namespace smult {

using Json = nlohmann::ordered_json;

// Edge list: "n m" then m lines "u v" with u < v, 0-based.
void WriteEdgeList(std::ostream& out, const FiniteGraph& g);
std::string EdgeListString(const FiniteGraph& g);
// kInvalidArgument on malformed input.
FiniteGraph ReadEdgeList(std::istream& in);
FiniteGraph ReadEdgeListFile(const std::string& path);

Json GraphToJson(const FiniteGraph& g);
FiniteGraph GraphFromJson(const Json& j);

Json CanopyToJson(const TruncatedCanopy& t);
Json CayleyToJson(const CayleyGraph& cg);

// "i j value" per stored entry, diagonal included, row-major order.
void WriteOperatorCoo(std::ostream& out, const SiteOperator& op);
// FNV-1a over the sorted edge list and dimension.
std::uint64_t StructureHash(const FiniteGraph& g);
Json OperatorMetadata(const SiteOperator& op, const FiniteGraph& g,
                      const DisorderSpec& spec);

Json CertificateToJson(const EigenvectorCertificate& c);
Json AutGroupToJson(const AutGroup& a);

// "bin_lo,bin_hi,count,normalized".
void WriteHistogramCsv(std::ostream& out, const Histogram& h);
Json HistogramToJson(const Histogram& h);

Json DisorderSpecToJson(const DisorderSpec& spec);

}  // namespace smult

#endif  // SMULT_IO_H_
