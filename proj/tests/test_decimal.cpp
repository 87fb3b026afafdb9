// Exact-decimal parsing, formatting, and rounding.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "tacap/decimal.hpp"

using namespace tacap;

TEST_CASE("parse accepts signed decimals up to six fraction digits") {
    auto d = parse_dec("4.5");
    REQUIRE(d.has_value());
    CHECK(d->micro == 4'500'000);
    CHECK(d->scale == 1);

    CHECK(parse_dec("0")->micro == 0);
    CHECK(parse_dec("-2.4")->micro == -2'400'000);
    CHECK(parse_dec("-0.4")->micro == -400'000);
    CHECK(parse_dec("12.25")->micro == 12'250'000);
    CHECK(parse_dec("0.000001")->micro == 1);
    CHECK(parse_dec("999999.999999")->micro == 999'999'999'999LL);
}

TEST_CASE("parse rejects malformed and out-of-range literals") {
    CHECK_FALSE(parse_dec("").has_value());
    CHECK_FALSE(parse_dec("-").has_value());
    CHECK_FALSE(parse_dec(".5").has_value());
    CHECK_FALSE(parse_dec("5.").has_value());
    CHECK_FALSE(parse_dec("1.2.3").has_value());
    CHECK_FALSE(parse_dec("1e3").has_value());
    CHECK_FALSE(parse_dec("+3").has_value()); // explicit plus is not grammar
    CHECK_FALSE(parse_dec("0.0000001").has_value()); // 7 fraction digits
    CHECK_FALSE(parse_dec("1000000").has_value());   // magnitude cap
    CHECK_FALSE(parse_dec("-1000000").has_value());
    CHECK_FALSE(parse_dec("4 .5").has_value());
    CHECK_FALSE(parse_dec("nan").has_value());
}

TEST_CASE("format preserves the written scale") {
    CHECK(format_dec(*parse_dec("4.5")) == "4.5");
    CHECK(format_dec(*parse_dec("4.50")) == "4.50");
    CHECK(format_dec(*parse_dec("9")) == "9");
    CHECK(format_dec(*parse_dec("-2.4")) == "-2.4");
    CHECK(format_dec(*parse_dec("0.000001")) == "0.000001");
    CHECK(format_dec(Dec::from_micro(1'500'000, 3)) == "1.500");
}

TEST_CASE("parse-format identity holds for random literals") {
    std::mt19937 rng(20260816);
    std::uniform_int_distribution<int> scale_of(0, 6);
    for (int i = 0; i < 2000; ++i) {
        int scale = scale_of(rng);
        long long pow10 = 1;
        for (int k = 0; k < 6 - scale; ++k) pow10 *= 10;
        std::uniform_int_distribution<long long> step(-999'999'999'999LL / pow10,
                                                      999'999'999'999LL / pow10);
        Dec d{step(rng) * pow10, scale};
        auto back = parse_dec(format_dec(d));
        REQUIRE(back.has_value());
        CHECK(back->micro == d.micro);
        CHECK(back->scale == d.scale);
    }
}

TEST_CASE("minimal formatting drops trailing zeros") {
    CHECK(format_micro_minimal(-2'400'000) == "-2.4");
    CHECK(format_micro_minimal(9'000'000) == "9");
    CHECK(format_micro_minimal(0) == "0");
    CHECK(format_micro_minimal(12'250'000) == "12.25");
    CHECK(format_micro_minimal(1) == "0.000001");
    CHECK(format_micro_minimal(-100'000) == "-0.1");
}

TEST_CASE("half-away-from-zero division") {
    CHECK(round_div_half_away(5, 10) == 1);
    CHECK(round_div_half_away(-5, 10) == -1);
    CHECK(round_div_half_away(4, 10) == 0);
    CHECK(round_div_half_away(-4, 10) == 0);
    CHECK(round_div_half_away(15, 10) == 2);
    CHECK(round_div_half_away(-15, 10) == -2);
    CHECK(round_div_half_away(25, 10) == 3); // not banker's rounding
    CHECK(round_div_half_away(0, 7) == 0);
    CHECK(round_div_half_away(7, 7) == 1);
}

TEST_CASE("tenths rounding and display") {
    CHECK(round_tenths_of_micro(4'450'000) == 45);
    CHECK(round_tenths_of_micro(4'449'999) == 44);
    CHECK(round_tenths_of_micro(-4'450'000) == -45);
    CHECK(round_tenths_of_micro(0) == 0);

    CHECK(format_tenths(115) == "11.5");
    CHECK(format_tenths(-4) == "-0.4");
    CHECK(format_tenths(0) == "0.0");
    CHECK(format_tenths(50) == "5.0");
    CHECK(format_tenths(-172) == "-17.2");
}
