#pragma once

#include <string>

#include "json.hpp"

namespace ermat {

// %.17g — enough digits that re-parsing recovers the exact double.
std::string format_double(double v);

// Compact serialization of an ordered JSON document with all floating-point
// numbers printed at 17 significant digits (NaN/inf become null). Key order
// is preserved, so the same document always produces the same bytes.
std::string dump_json(const nlohmann::ordered_json& j);

}  // namespace ermat
