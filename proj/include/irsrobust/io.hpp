// SPDX-License-Identifier: Apache-2.0
//
// irsrobust: robust beamforming and quasi-static IRS phase-shift design
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include "irsrobust/beamform.hpp"
#include "irsrobust/evaluate.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace irs {

using json = nlohmann::json;

/// Shortest round-trip decimal form, '.' separator regardless of locale.
std::string format_double(double x);

/// v is stored as interleaved [re0, im0, re1, im1, ...].
json design_to_json(const DesignResult& design);

/// Throws std::invalid_argument on missing or malformed fields.
DesignResult design_from_json(const json& j);

std::string trace_to_csv(const std::vector<TraceRow>& trace);

json report_to_json(const EvaluationReport& report);

std::string report_csv_header();
std::string report_csv_row(const EvaluationReport& report);

void write_text_file(const std::string& path, const std::string& text);
std::string read_text_file(const std::string& path);

/// Appends one row, writing the header first when the file is new or empty.
void append_report_csv(const std::string& path, const EvaluationReport& report);

}  // namespace irs
