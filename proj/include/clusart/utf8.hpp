#pragma once

#include <cstddef>
#include <string>
#include <string_view>

namespace clusart {

// Returns `bytes` with every ill-formed UTF-8 sequence replaced by U+FFFD.
// `replacements` is incremented once per replaced sequence.
std::string repair_utf8(std::string_view bytes, std::size_t& replacements);

}  // namespace clusart
