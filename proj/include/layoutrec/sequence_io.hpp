#pragma once

#include <string>
#include <string_view>

#include "layoutrec/sequence.hpp"

namespace layoutrec {

/// Signed decimal integers separated by whitespace and/or commas; '#' starts a
/// comment running to the end of the line. At least one integer is required.
/// Throws ParseError with line and column in the message.
DisplacementSequence parse_displacements(std::string_view text);

/// One displacement per line.
std::string render_displacements(const DisplacementSequence& seq);

}  // namespace layoutrec
