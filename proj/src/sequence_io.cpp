#include "layoutrec/sequence_io.hpp"

#include <cctype>
#include <charconv>
#include <vector>

#include "layoutrec/errors.hpp"

namespace layoutrec {

DisplacementSequence parse_displacements(std::string_view text) {
  std::vector<Displacement> values;
  std::size_t line = 1;
  std::size_t line_start = 0;
  std::size_t pos = 0;

  auto fail = [&](const std::string& what, std::size_t at) {
    throw ParseError("line " + std::to_string(line) + ", column " + std::to_string(at - line_start + 1) +
                         ": " + what,
                     at);
  };

  while (pos < text.size()) {
    const char c = text[pos];
    if (c == '\n') {
      ++pos;
      ++line;
      line_start = pos;
    } else if (c == '#') {
      while (pos < text.size() && text[pos] != '\n') ++pos;
    } else if (c == ',' || std::isspace(static_cast<unsigned char>(c))) {
      ++pos;
    } else {
      const std::size_t start = pos;
      std::size_t end = pos;
      if (text[end] == '-' || text[end] == '+') ++end;
      const std::size_t digits = end;
      while (end < text.size() && std::isdigit(static_cast<unsigned char>(text[end]))) ++end;
      if (end == digits) fail("expected an integer", start);
      if (end < text.size() && !(text[end] == ',' || text[end] == '#' ||
                                 std::isspace(static_cast<unsigned char>(text[end])))) {
        fail("unexpected character '" + std::string(1, text[end]) + "'", end);
      }
      Displacement value = 0;
      const char* first = text.data() + (text[start] == '+' ? start + 1 : start);
      auto [ptr, ec] = std::from_chars(first, text.data() + end, value);
      if (ec == std::errc::result_out_of_range) fail("integer out of 64-bit range", start);
      if (ec != std::errc{} || ptr != text.data() + end) fail("expected an integer", start);
      values.push_back(value);
      pos = end;
    }
  }
  if (values.empty()) throw ParseError("no displacements in input", text.size());
  return DisplacementSequence(std::move(values));
}

std::string render_displacements(const DisplacementSequence& seq) {
  std::string out;
  for (Displacement d : seq) {
    out += std::to_string(d);
    out += '\n';
  }
  return out;
}

}  // namespace layoutrec
