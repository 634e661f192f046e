#pragma once

#include <array>
#include <cstdint>

namespace sceneloom::detail {

// Printable ASCII 0x20..0x7e, one byte per row, MSB is the leftmost pixel.
inline constexpr std::array<std::array<std::uint8_t, 8>, 95> kFont8x8 = {{
    {0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00},  // ' '
    {0x10, 0x10, 0x10, 0x10, 0x10, 0x00, 0x10, 0x00},  // '!'
    {0x28, 0x28, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00},  // '"'
    {0x14, 0x14, 0x7c, 0x28, 0x7c, 0x28, 0x38, 0x00},  // '#'
    {0x10, 0x38, 0x30, 0x38, 0x1c, 0x1c, 0x38, 0x10},  // '$'
    {0x30, 0x50, 0x34, 0x10, 0x0c, 0x0c, 0x0c, 0x00},  // '%'
    {0x38, 0x20, 0x30, 0x30, 0x7c, 0x6c, 0x3c, 0x00},  // '&'
    {0x10, 0x10, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00},  // "'"
    {0x10, 0x10, 0x10, 0x10, 0x10, 0x10, 0x08, 0x00},  // '('
    {0x10, 0x18, 0x18, 0x18, 0x18, 0x10, 0x10, 0x00},  // ')'
    {0x10, 0x38, 0x38, 0x10, 0x00, 0x00, 0x00, 0x00},  // '*'
    {0x00, 0x00, 0x10, 0x10, 0x7c, 0x10, 0x10, 0x00},  // '+'
    {0x00, 0x00, 0x00, 0x00, 0x00, 0x10, 0x10, 0x10},  // ','
    {0x00, 0x00, 0x00, 0x00, 0x38, 0x00, 0x00, 0x00},  // '-'
    {0x00, 0x00, 0x00, 0x00, 0x00, 0x18, 0x18, 0x00},  // '.'
    {0x04, 0x08, 0x08, 0x10, 0x10, 0x20, 0x20, 0x00},  // '/'
    {0x38, 0x2c, 0x2c, 0x3c, 0x2c, 0x2c, 0x38, 0x00},  // '0'
    {0x38, 0x18, 0x18, 0x18, 0x18, 0x18, 0x3c, 0x00},  // '1'
    {0x38, 0x0c, 0x0c, 0x08, 0x10, 0x20, 0x7c, 0x00},  // '2'
    {0x38, 0x0c, 0x0c, 0x18, 0x0c, 0x0c, 0x78, 0x00},  // '3'
    {0x08, 0x18, 0x28, 0x28, 0x7c, 0x08, 0x08, 0x00},  // '4'
    {0x38, 0x20, 0x20, 0x38, 0x0c, 0x0c, 0x38, 0x00},  // '5'
    {0x1c, 0x20, 0x20, 0x38, 0x2c, 0x2c, 0x38, 0x00},  // '6'
    {0x3c, 0x0c, 0x08, 0x18, 0x18, 0x10, 0x30, 0x00},  // '7'
    {0x38, 0x2c, 0x2c, 0x38, 0x2c, 0x2c, 0x38, 0x00},  // '8'
    {0x38, 0x2c, 0x6c, 0x3c, 0x0c, 0x0c, 0x38, 0x00},  // '9'
    {0x00, 0x00, 0x18, 0x18, 0x00, 0x18, 0x18, 0x00},  // ':'
    {0x00, 0x00, 0x18, 0x18, 0x00, 0x18, 0x10, 0x10},  // ';'
    {0x00, 0x00, 0x04, 0x38, 0x60, 0x38, 0x04, 0x00},  // '<'
    {0x00, 0x00, 0x00, 0x7c, 0x00, 0x7c, 0x00, 0x00},  // '='
    {0x00, 0x00, 0x60, 0x38, 0x0c, 0x38, 0x60, 0x00},  // '>'
    {0x18, 0x2c, 0x08, 0x18, 0x10, 0x00, 0x10, 0x00},  // '?'
    {0x00, 0x38, 0x24, 0x5c, 0x54, 0x54, 0x5c, 0x20},  // '@'
    {0x18, 0x38, 0x38, 0x28, 0x3c, 0x64, 0x64, 0x00},  // 'A'
    {0x78, 0x6c, 0x6c, 0x78, 0x64, 0x64, 0x7c, 0x00},  // 'B'
    {0x18, 0x30, 0x20, 0x20, 0x20, 0x30, 0x18, 0x00},  // 'C'
    {0x38, 0x2c, 0x24, 0x24, 0x24, 0x2c, 0x38, 0x00},  // 'D'
    {0x3c, 0x20, 0x20, 0x3c, 0x20, 0x20, 0x3c, 0x00},  // 'E'
    {0x3c, 0x20, 0x20, 0x3c, 0x20, 0x20, 0x20, 0x00},  // 'F'
    {0x18, 0x20, 0x20, 0x60, 0x2c, 0x24, 0x1c, 0x00},  // 'G'
    {0x2c, 0x2c, 0x2c, 0x3c, 0x2c, 0x2c, 0x2c, 0x00},  // 'H'
    {0x3c, 0x10, 0x10, 0x10, 0x10, 0x10, 0x3c, 0x00},  // 'I'
    {0x3c, 0x0c, 0x0c, 0x0c, 0x08, 0x08, 0x38, 0x00},  // 'J'
    {0x6c, 0x68, 0x78, 0x78, 0x68, 0x6c, 0x64, 0x00},  // 'K'
    {0x20, 0x20, 0x20, 0x20, 0x20, 0x20, 0x3c, 0x00},  // 'L'
    {0x6c, 0x6c, 0x7c, 0x7c, 0x74, 0x64, 0x64, 0x00},  // 'M'
    {0x64, 0x74, 0x74, 0x74, 0x6c, 0x6c, 0x6c, 0x00},  // 'N'
    {0x38, 0x2c, 0x64, 0x64, 0x64, 0x2c, 0x38, 0x00},  // 'O'
    {0x38, 0x2c, 0x2c, 0x38, 0x20, 0x20, 0x20, 0x00},  // 'P'
    {0x38, 0x2c, 0x64, 0x64, 0x64, 0x2c, 0x38, 0x08},  // 'Q'
    {0x38, 0x2c, 0x2c, 0x38, 0x28, 0x2c, 0x24, 0x00},  // 'R'
    {0x38, 0x20, 0x20, 0x38, 0x0c, 0x0c, 0x38, 0x00},  // 'S'
    {0x7c, 0x10, 0x10, 0x10, 0x10, 0x10, 0x10, 0x00},  // 'T'
    {0x64, 0x64, 0x64, 0x64, 0x64, 0x2c, 0x38, 0x00},  // 'U'
    {0x64, 0x2c, 0x2c, 0x28, 0x38, 0x38, 0x18, 0x00},  // 'V'
    {0x44, 0x44, 0x54, 0x7c, 0x7c, 0x2c, 0x2c, 0x00},  // 'W'
    {0x64, 0x2c, 0x38, 0x18, 0x38, 0x2c, 0x64, 0x00},  // 'X'
    {0x64, 0x2c, 0x38, 0x18, 0x10, 0x10, 0x10, 0x00},  // 'Y'
    {0x3c, 0x0c, 0x18, 0x18, 0x30, 0x20, 0x7c, 0x00},  // 'Z'
    {0x10, 0x10, 0x10, 0x10, 0x10, 0x10, 0x18, 0x00},  // '['
    {0x20, 0x20, 0x10, 0x10, 0x08, 0x08, 0x04, 0x00},  // '\\'
    {0x18, 0x18, 0x18, 0x18, 0x18, 0x18, 0x38, 0x00},  // ']'
    {0x18, 0x2c, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00},  // '^'
    {0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x7e},  // '_'
    {0x10, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00},  // '`'
    {0x00, 0x00, 0x38, 0x0c, 0x3c, 0x6c, 0x3c, 0x00},  // 'a'
    {0x20, 0x20, 0x38, 0x2c, 0x24, 0x2c, 0x38, 0x00},  // 'b'
    {0x00, 0x00, 0x1c, 0x20, 0x20, 0x20, 0x1c, 0x00},  // 'c'
    {0x0c, 0x0c, 0x3c, 0x6c, 0x6c, 0x6c, 0x3c, 0x00},  // 'd'
    {0x00, 0x00, 0x38, 0x2c, 0x7c, 0x20, 0x3c, 0x00},  // 'e'
    {0x10, 0x10, 0x3c, 0x10, 0x10, 0x10, 0x10, 0x00},  // 'f'
    {0x00, 0x00, 0x3c, 0x2c, 0x6c, 0x2c, 0x3c, 0x0c},  // 'g'
    {0x20, 0x20, 0x38, 0x2c, 0x2c, 0x2c, 0x2c, 0x00},  // 'h'
    {0x18, 0x00, 0x38, 0x18, 0x18, 0x18, 0x3c, 0x00},  // 'i'
    {0x18, 0x00, 0x38, 0x18, 0x18, 0x18, 0x18, 0x18},  // 'j'
    {0x20, 0x20, 0x2c, 0x38, 0x38, 0x28, 0x2c, 0x00},  // 'k'
    {0x10, 0x10, 0x10, 0x10, 0x10, 0x10, 0x1c, 0x00},  // 'l'
    {0x00, 0x00, 0x7c, 0x74, 0x54, 0x54, 0x54, 0x00},  // 'm'
    {0x00, 0x00, 0x38, 0x2c, 0x2c, 0x2c, 0x2c, 0x00},  // 'n'
    {0x00, 0x00, 0x38, 0x2c, 0x64, 0x2c, 0x38, 0x00},  // 'o'
    {0x00, 0x00, 0x38, 0x2c, 0x24, 0x2c, 0x38, 0x20},  // 'p'
    {0x00, 0x00, 0x3c, 0x6c, 0x6c, 0x6c, 0x3c, 0x0c},  // 'q'
    {0x00, 0x00, 0x3c, 0x30, 0x30, 0x30, 0x30, 0x00},  // 'r'
    {0x00, 0x00, 0x38, 0x20, 0x38, 0x0c, 0x38, 0x00},  // 's'
    {0x00, 0x10, 0x7c, 0x10, 0x10, 0x10, 0x1c, 0x00},  // 't'
    {0x00, 0x00, 0x2c, 0x2c, 0x2c, 0x2c, 0x3c, 0x00},  // 'u'
    {0x00, 0x00, 0x64, 0x2c, 0x28, 0x38, 0x18, 0x00},  // 'v'
    {0x00, 0x00, 0x44, 0x54, 0x7c, 0x3c, 0x2c, 0x00},  // 'w'
    {0x00, 0x00, 0x2c, 0x38, 0x18, 0x38, 0x2c, 0x00},  // 'x'
    {0x00, 0x00, 0x64, 0x2c, 0x38, 0x18, 0x18, 0x10},  // 'y'
    {0x00, 0x00, 0x3c, 0x08, 0x18, 0x30, 0x3c, 0x00},  // 'z'
    {0x10, 0x10, 0x10, 0x30, 0x10, 0x10, 0x1c, 0x00},  // '{'
    {0x10, 0x10, 0x10, 0x10, 0x10, 0x10, 0x10, 0x10},  // '|'
    {0x10, 0x10, 0x18, 0x1c, 0x18, 0x10, 0x30, 0x00},  // '}'
    {0x00, 0x00, 0x00, 0x30, 0x0c, 0x00, 0x00, 0x00},  // '~'
}};

}  // namespace sceneloom::detail
