#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "eur/qmat.hpp"

namespace eur {

// Parse failure with a 1-based position in the offending text.
struct ParseError : Error {
  ParseError(std::size_t line, std::size_t column, const std::string& what);
  std::size_t line;
  std::size_t column;
};

// Real-valued expression: numbers, + - * /, parentheses, `pi`, sqrt(),
// and a number directly followed by `pi` ("4pi"). `column` offsets error
// positions when the expression is embedded in a longer argument.
double parse_real(std::string_view text, std::size_t column = 1);

// One complex entry per token, written `re`, `re+imi`, `re-imi` or `imi`.
// Tokens are separated by whitespace or commas; `#` starts a comment.
// Row-major, side inferred from the token count (must be a perfect square).
Matrix parse_matrix_text(std::string_view text);
Matrix read_matrix_file(const std::filesystem::path& path);

// Inverse of parse_matrix_text with 17 significant digits, one row per line.
std::string format_matrix_text(const Matrix& m);

// Observable pairs shipped with the library, named X1..X4 and Z1..Z4
// (2x2 except X2/Z2, which are 3x3).
Matrix bundled_observable(std::string_view name);
std::string_view bundled_observable_text(std::string_view name);

// State description `family:key=value,key=value`, e.g.
//   werner:d=2,f=0.8      isotropic:d=3,f=0.9     bell:c1=-0.8,c2=-0.8,c3=-0.8
//   qubit-qutrit:alpha=0.25,gamma=0.1              qubit-ququart:alpha=0.1,gamma=0.3
//   bell-like:alpha=1/sqrt(10)                     bell-mixture:w1p=0.9,w1m=0.1,w2p=0,w2m=0
//   mixed:da=2,db=2                                file:path=rho.txt,da=2,db=2
DensityMatrix parse_state_spec(std::string_view spec);

}  // namespace eur
