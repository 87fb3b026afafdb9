// Exact decimal numbers for corpus values: integer micro-units plus a
// remembered display scale, so parsing, arithmetic on boundaries, and
// serialization are bit-stable with no binary floating-point drift.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace tacap {

// One decimal literal: value = micro / 1'000'000. `scale` is the number of
// fraction digits the literal was written with (0..6); it affects only
// formatting, never comparisons.
struct Dec {
    long long micro = 0;
    int scale = 0;

    static Dec from_micro(long long m, int s = 0) { return Dec{m, s}; }

    double to_double() const { return static_cast<double>(micro) / 1e6; }

    bool operator==(const Dec& o) const { return micro == o.micro; }
    bool operator!=(const Dec& o) const { return micro != o.micro; }
    bool operator<(const Dec& o) const { return micro < o.micro; }
    bool operator<=(const Dec& o) const { return micro <= o.micro; }
    bool operator>(const Dec& o) const { return micro > o.micro; }
    bool operator>=(const Dec& o) const { return micro >= o.micro; }
};

// Parses an optionally signed decimal literal with at most 6 fraction digits
// and magnitude below 1e6 units. Returns nullopt on any malformation.
std::optional<Dec> parse_dec(std::string_view text);

// Canonical text: minus sign, integer part, then exactly `scale` fraction
// digits (none when scale is 0). parse_dec(format_dec(d)) == d, same scale.
std::string format_dec(const Dec& d);

// Formats a micro value with the smallest scale that loses nothing
// (e.g. -2'400'000 -> "-2.4", 9'000'000 -> "9").
std::string format_micro_minimal(long long micro);

// Rounds num/den to the nearest integer, halves away from zero. den > 0.
long long round_div_half_away(long long num, long long den);

// Value in tenths, rounded half away from zero: round_tenths(4'450'000) = 45.
long long round_tenths_of_micro(long long micro);

// "11.5" from 115 tenths; "−" handling for negatives ("-0.4" from -4).
std::string format_tenths(long long tenths);

} // namespace tacap
