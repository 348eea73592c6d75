#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "galsum/nt.hpp"

namespace galsum::cli {

using Json = nlohmann::ordered_json;

enum class Format { csv, json, pretty };
Format parse_format(const std::string& s);

// Integers that fit in 64 bits stay numeric; larger ones become strings.
Json big(const BigInt& v);
Json set_json(const nt::IntegerSet& M);

// An object renders as a record (plus one sub-table per array-of-objects
// field); an array of objects renders as a table.
void render(const Json& doc, Format f, std::ostream& os);

}  // namespace galsum::cli
