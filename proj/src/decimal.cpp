// Exact decimal parsing, formatting, and half-away-from-zero rounding.
#include "tacap/decimal.hpp"

#include <cctype>
#include <cstdio>

namespace tacap {

// Magnitude cap keeps every downstream integer computation (sums over 64
// values, cross-multiplied ratios scaled by 1000) inside long long range.
static constexpr long long max_units = 1'000'000;          // 1e6 units
static constexpr long long max_micro = max_units * 1'000'000;

std::optional<Dec> parse_dec(std::string_view text) {
    if (text.empty()) return std::nullopt;
    std::size_t i = 0;
    bool neg = false;
    if (text[i] == '-') { neg = true; ++i; }
    if (i >= text.size() || !std::isdigit(static_cast<unsigned char>(text[i]))) return std::nullopt;

    long long whole = 0;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
        whole = whole * 10 + (text[i] - '0');
        if (whole > max_units) return std::nullopt;
        ++i;
    }
    long long frac = 0;
    int scale = 0;
    if (i < text.size() && text[i] == '.') {
        ++i;
        if (i >= text.size() || !std::isdigit(static_cast<unsigned char>(text[i]))) return std::nullopt;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
            if (scale == 6) return std::nullopt;  // finer than micro resolution
            frac = frac * 10 + (text[i] - '0');
            ++scale;
            ++i;
        }
    }
    if (i != text.size()) return std::nullopt;

    long long m = frac;
    for (int s = scale; s < 6; ++s) m *= 10;
    m += whole * 1'000'000;
    if (m >= max_micro) return std::nullopt;
    return Dec{neg ? -m : m, scale};
}

std::string format_dec(const Dec& d) {
    long long m = d.micro < 0 ? -d.micro : d.micro;
    long long units = m / 1'000'000;
    long long frac = m % 1'000'000;
    char frac_digits[7];
    std::snprintf(frac_digits, sizeof frac_digits, "%06lld", frac);

    std::string out;
    if (d.micro < 0) out.push_back('-');
    out += std::to_string(units);
    if (d.scale > 0) {
        out.push_back('.');
        out.append(frac_digits, frac_digits + d.scale);
    }
    return out;
}

std::string format_micro_minimal(long long micro) {
    long long m = micro < 0 ? -micro : micro;
    int scale = 6;
    while (scale > 0 && m % 10 == 0) { m /= 10; --scale; }
    // m is now micro with trailing zeros stripped; rebuild a Dec-style string
    long long denom = 1;
    for (int s = 0; s < scale; ++s) denom *= 10;
    std::string out;
    if (micro < 0) out.push_back('-');
    out += std::to_string(m / denom);
    if (scale > 0) {
        std::string frac = std::to_string(m % denom);
        out.push_back('.');
        out.append(scale - static_cast<int>(frac.size()), '0');
        out += frac;
    }
    return out;
}

long long round_div_half_away(long long num, long long den) {
    long long q = num / den;
    long long r = num % den;
    if (r == 0) return q;
    long long r2 = (r < 0 ? -r : r) * 2;
    if (r2 >= den) q += (num < 0 ? -1 : 1);
    return q;
}

long long round_tenths_of_micro(long long micro) {
    return round_div_half_away(micro, 100'000);
}

std::string format_tenths(long long tenths) {
    long long t = tenths < 0 ? -tenths : tenths;
    std::string out;
    if (tenths < 0) out.push_back('-');
    out += std::to_string(t / 10);
    out.push_back('.');
    out += std::to_string(t % 10);
    return out;
}

} // namespace tacap
