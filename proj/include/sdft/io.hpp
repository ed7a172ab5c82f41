#pragma once

#include <json.hpp>
#include <string>

#include "sdft/families.hpp"
#include "sdft/hidft.hpp"
#include "sdft/numeric_core.hpp"
#include "sdft/sas.hpp"
#include "sdft/support_set.hpp"

namespace sdft {

using Json = nlohmann::json;

// Parse errors and missing files raise InvalidInput.
Json read_json_file(const std::string& path);
Json parse_json(const std::string& text);

// Sorted keys, no whitespace, floats at 17 significant digits.
std::string canonical_dump(const Json& j);
void write_text_file(const std::string& path, const std::string& text);

// {"N": int, "indices": [int...]}
Json support_to_json(const SupportSet& s);
SupportSet support_from_json(const Json& j);

// {"N": int, "support": [...], "coeffs": [[re, im]...]}; spectra use the
// same layout.
Json spectrum_to_json(const SupportSet& s, std::span<const Complex> coeffs);
BandlimitedSignal signal_from_json(const Json& j);

Json family_to_json(const FamilySpec& spec);
FamilySpec family_from_json(const Json& j);

Json pivots_to_json(const PivotVector& r);
PivotVector pivots_from_json(const Json& j);
// "1,3,4" or "" for the empty vector.
PivotVector parse_pivot_list(const std::string& text);

Json cost_to_json(const CostReport& c);
Json hidft_to_json(const HiDftResult& res);

}  // namespace sdft
