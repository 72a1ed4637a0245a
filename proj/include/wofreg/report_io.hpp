#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "wofreg/verify.hpp"

namespace wofreg {

/// instance,k,theta,oracle,match,skipped,reason (oracle empty when skipped).
std::string to_csv(const EquivalenceReport& rep);
/// Rows only; the counters are not part of the CSV form. Throws ParseError.
EquivalenceReport report_from_csv(std::string_view text);

std::string to_json(const EquivalenceReport& rep);
EquivalenceReport report_from_json(std::string_view text);

/// RFC 4180 field quoting and the matching splitter.
std::string csv_field(std::string_view s);
std::vector<std::string> split_csv_line(std::string_view line);

}  // namespace wofreg
