#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "wofreg/digraph.hpp"

namespace wofreg {

/// Parses the text format (statements separated by ';' or newlines):
///
///   # comment
///   x1:1; y1:4
///   x1->y1
///
/// or, when the first non-space byte is '{', the JSON form
/// {"vertices":[{"id":..,"weight":..}], "edges":[[head, tail], ...]}.
/// Sources declared with a weight other than 1 are normalised to 1 and a
/// warning is recorded on the graph. Throws ParseError.
WeightedOrientedGraph parse_digraph(std::string_view text);

/// Reads and parses a file; I/O failures throw wofreg::Error.
WeightedOrientedGraph read_digraph_file(const std::filesystem::path& path);

std::string to_text(const WeightedOrientedGraph& d);
std::string to_json(const WeightedOrientedGraph& d);

}  // namespace wofreg
