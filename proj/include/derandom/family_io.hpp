#pragma once

#include <iosfwd>
#include <string>

#include "derandom/family.hpp"

namespace derandom {

// Plain-text family file: header (format version, kind, exact-rational
// parameters, count, regime flags, builder provenance incl. seed), a `---`
// separator, one line per function with n space-separated image values, and a
// trailing decimal CRC-32 of the body bytes.  Round-trip exact.
std::string serialize_family(const Family& family, bool valid_flag = true);

struct ParsedFamily {
    Family family;
    bool valid_flag = true;  // the header's valid= field
};

ParsedFamily parse_family(const std::string& text);

void write_family_file(const std::string& path, const Family& family, bool valid_flag = true);
ParsedFamily read_family_file(const std::string& path);

} // namespace derandom
