#pragma once

#include <string>
#include <string_view>

namespace topstab {

/// Porter (1980) suffix-stripping stemmer, as published: no special case for
/// short words, so "is" -> "i" and "s" -> "". Input is expected to be a
/// lowercase ASCII word.
std::string porter_stem(std::string_view word);

}  // namespace topstab
