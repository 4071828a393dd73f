#pragma once

#include <string>
#include <string_view>

#include "plgen/log.hpp"

namespace plgen {

enum class WireFormat { Ndjson, XesFragment };

std::string_view to_string(WireFormat f);
WireFormat wire_format_from_string(std::string_view text);

/// One message, newline-terminated. ndjson keys come in the order
/// case, activity, timestamp, lifecycle, attrs.
std::string encode_event(const Event& e, WireFormat format = WireFormat::Ndjson);

/// Parses one ndjson line back. Throws ParseError.
Event decode_ndjson(std::string_view line);

}  // namespace plgen
