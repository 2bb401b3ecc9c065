#pragma once

#include <array>
#include <string_view>

namespace fixtures {

/// Reference vertex-edge incidence matrix of G: rows a1 a2 a3 b1 b2 b3 u v w;
/// columns are the nine a-b edges, then u's six edges, v's six, w's six.
inline constexpr std::array<std::string_view, 9> kMatrixA = {
    "111000000100000100000100000",  // a1
    "000111000010000010000010000",  // a2
    "000000111001000001000001000",  // a3
    "100100100000100000100000100",  // b1
    "010010010000010000010000010",  // b2
    "001001001000001000001000001",  // b3
    "000000000111111000000000000",  // u
    "000000000000000111111000000",  // v
    "000000000000000000000111111",  // w
};

/// Elements e with si(M/e) internally 4-connected in the 37-element
/// connection, recorded from the first full run.
inline constexpr std::array<std::string_view, 31> kSection6MGood = {
    "a1b1", "a1b2", "a1b3", "a2b1", "a2b2", "a2b3", "a3b1", "a3b2", "a3b3", "ua1", "ua2",
    "ua3",  "ub1",  "ub2",  "ub3",  "va1",  "va2",  "va3",  "vb1",  "vb2",  "vb3", "wa1",
    "wa2",  "wa3",  "wb1",  "wb2",  "wb3",  "g15",  "g25",  "g35",  "g45",
};

}  // namespace fixtures
