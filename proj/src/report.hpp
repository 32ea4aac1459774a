/*
 * Copyright 2026 The latcount Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include "bounds.hpp"
#include "dio.hpp"
#include "dual_compare.hpp"

#include <json.hpp>

#include <map>
#include <optional>
#include <string>

namespace latcount {

using Json = nlohmann::ordered_json;

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

// A computed result in both serializations. Real values are always stored
// as full-precision decimal strings.
struct Report {
    std::string kind;
    Json data = Json::object();
    std::optional<Table> table;
    bool flagged = false;
    std::map<std::string, std::string> scalars;
};

std::string real_text(const Real& x);
Json vector_json(const Vector& v);
Json int_vector_json(const IntVector& z);
Json matrix_json(const Matrix& m);

/// {"version", "precision", "seed", "config", "<kind>": data}; keys keep insertion order.
std::string render_json(const Report& report, const Json& meta);

/// "# key: value" comment lines for the metadata, then the table.
std::string render_csv(const Report& report, const Json& meta);

Report report_lattice(const LatticeBasis& lattice);
Report report_nu(const NuResult& r, const Real& rho);
Report report_nu_profile(const NuProfile& p);
Report report_count(const CountResult& c, const AlignedBox& box);
Report report_bound(const BoundReport& b);
Report report_bound_homogeneous(const HomogeneousBoundReport& b);
Report report_s_sum(const SSumResult& s, const Real& r);
Report report_compare(const NuComparison& c);
Report report_example31(const LatticeBasis& lattice, const NuProfile& primal, const NuProfile& dual);
Report report_dio(const IrrationalSpec& alpha, const PhiBound& phi, const DioCountResult& r, std::uint64_t box_count);
Report report_sweep(const IrrationalSpec& alpha, const PhiBound& phi, const std::vector<SweepRow>& rows);

}  // namespace latcount
