#pragma once

#include <string>
#include <vector>

#include "fiblrc/harness.hpp"
#include "fiblrc/lrc_code.hpp"
#include "json.hpp"

namespace fiblrc::io {

using json = nlohmann::json;
using gf::Raw;

inline constexpr const char* kSchema = "fibered-lrc/v1";

// Nonzero elements are written as their discrete log, zero as the string "0".
json element_to_json(const gf::Field& f, Raw a);
Raw element_from_json(const gf::Field& f, const json& j);

json profile_to_json(const lrc::CodeProfile& p);
// Checks the schema tag and the profile invariants.
lrc::CodeProfile profile_from_json(const json& j);

// Field, parameters and evaluation set described by a profile.
construction::EvaluationSet evaluation_set_for(const lrc::CodeProfile& p);

json codeword_to_json(const gf::Field& f, const std::vector<Raw>& word);
std::vector<Raw> codeword_from_json(const gf::Field& f, const json& j);

json evaluation_set_to_json(const construction::EvaluationSet& es);

json sim_report_to_json(const harness::SimReport& rep);

json parse_json(const std::string& text);
json read_json_file(const std::string& path);
std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace fiblrc::io
