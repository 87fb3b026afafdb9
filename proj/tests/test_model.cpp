// Domain types, typing helpers, and derived lifecycle geometry.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>
#include <string>

#include "corpus_fixture.hpp"
#include "tacap/model.hpp"

using namespace tacap;
using tacap::testing::bundled_corpus;

TEST_CASE("type helpers agree on prefixes, names, and sensory grouping") {
    CHECK(type_prefix(CaType::Cognitive) == 'C');
    CHECK(type_prefix(CaType::Visual) == 'V');
    CHECK(type_prefix(CaType::Touch) == 'T');
    CHECK(type_prefix(CaType::Kinaesthetic) == 'K');
    CHECK(type_prefix(CaType::Motor) == 'M');

    CHECK(type_name(CaType::Kinaesthetic) == std::string("Kinaesthetic"));
    CHECK(type_from_name("Visual") == CaType::Visual);
    CHECK_FALSE(type_from_name("visual").has_value());
    CHECK_FALSE(type_from_name("").has_value());

    CHECK(ca_type_from_id("MRHH") == CaType::Motor);
    CHECK(ca_type_from_id("KLHTKL") == CaType::Kinaesthetic);
    CHECK_FALSE(ca_type_from_id("XRHH").has_value());
    CHECK_FALSE(ca_type_from_id("").has_value());

    CHECK_FALSE(is_perceptual(CaType::Cognitive));
    CHECK(is_perceptual(CaType::Visual));
    CHECK(is_perceptual(CaType::Touch));
    CHECK(is_perceptual(CaType::Kinaesthetic));
    CHECK_FALSE(is_perceptual(CaType::Motor));
}

TEST_CASE("separator levels") {
    CHECK(sep_level(Sep::Start) == 0);
    CHECK(sep_level(Sep::Amp) == 0);
    CHECK(sep_level(Sep::Stop) == 0);
    CHECK(sep_level(Sep::Comma) == 1);
    CHECK(sep_level(Sep::Semi) == 2);
    CHECK(sep_level(Sep::Colon) == 3);
}

TEST_CASE("lifecycle geometry of pinned assemblies") {
    const Corpus& c = bundled_corpus();

    const CellAssembly* ckec = c.find("CKEC");
    REQUIRE(ckec != nullptr);
    CHECK(ckec->seq == 1);
    CHECK(ckec->acronym == "COG Kitchen Entrance Check");
    CHECK(prime_start_micro(*ckec) == -2'000'000);
    REQUIRE(decay_end_micro(*ckec).has_value());
    CHECK(*decay_end_micro(*ckec) == 600'000);
    CHECK(*duration_micro(*ckec) == 400'000);
    CHECK(fatigue_micro(*ckec) == 1'000'000);

    const CellAssembly* cmc = c.find("CMC");
    REQUIRE(cmc != nullptr);
    CHECK(prime_start_micro(*cmc) == -2'400'000); // earliest in the corpus
    CHECK(*decay_end_micro(*cmc) == 5'500'000);
    CHECK(*duration_micro(*cmc) == 2'100'000);
    CHECK(fatigue_micro(*cmc) == 500'000);

    const CellAssembly* mrhh = c.find("MRHH");
    REQUIRE(mrhh != nullptr);
    CHECK(mrhh->p.persistent());
    CHECK_FALSE(decay_end_micro(*mrhh).has_value());
    CHECK_FALSE(duration_micro(*mrhh).has_value());
    CHECK(fatigue_micro(*mrhh) == 0);
    CHECK(prime_start_micro(*mrhh) == 3'700'000); // 2*3.9 - 4.1

    CHECK(c.find("NOPE") == nullptr);
    CHECK(c.seq_of("CKEC") == 1);
    CHECK(c.seq_of("NOPE") == 0);
}

TEST_CASE("half-activation midpoints are exact for every assembly") {
    const Corpus& c = bundled_corpus();
    REQUIRE(c.cas.size() == 64);
    long long earliest = 0;
    for (const CellAssembly& ca : c.cas) {
        // priming midpoint: (prime_start + igtig) / 2 == p50
        CHECK(prime_start_micro(ca) + ca.p.igtig.micro == 2 * ca.p.p50.micro);
        earliest = std::min(earliest, prime_start_micro(ca));
        if (!ca.p.persistent()) {
            // decay midpoint: (igtex + decay_end) / 2 == d50
            CHECK(ca.p.igtex->micro + *decay_end_micro(ca) == 2 * ca.p.d50->micro);
            CHECK(*duration_micro(ca) >= 0);
        }
        CHECK(fatigue_micro(ca) >= 0);
        // id prefix agrees with the declared type
        CHECK(ca_type_from_id(ca.id) == ca.type);
    }
    CHECK(earliest == -2'400'000);
}

TEST_CASE("bundled corpus census") {
    const Corpus& c = bundled_corpus();
    int by_type[5] = {0, 0, 0, 0, 0};
    std::set<std::string> persistent;
    for (const CellAssembly& ca : c.cas) {
        ++by_type[static_cast<int>(ca.type)];
        if (ca.p.persistent()) persistent.insert(ca.id);
    }
    CHECK(by_type[static_cast<int>(CaType::Cognitive)] == 22);
    CHECK(by_type[static_cast<int>(CaType::Visual)] == 20);
    CHECK(by_type[static_cast<int>(CaType::Touch)] == 3);
    CHECK(by_type[static_cast<int>(CaType::Kinaesthetic)] == 2);
    CHECK(by_type[static_cast<int>(CaType::Motor)] == 17);

    CHECK(persistent == std::set<std::string>{"CRHH", "MRHH", "CS", "VS", "CMKT",
                                              "VK", "MHKT", "TLHTS", "CFK",
                                              "MPTSU"});

    // two assemblies end exactly at the horizon and are not persistent
    const CellAssembly* vlhts = c.find("VLHTS");
    REQUIRE(vlhts != nullptr);
    CHECK_FALSE(vlhts->p.persistent());
    CHECK(vlhts->p.igtex->micro == 9'000'000);
    CHECK(vlhts->p.d50->micro == 9'000'000);

    CHECK(c.end_time_micro() == 9'000'000);
    CHECK(c.known_missing_ids() == std::vector<std::string>{"VHWA"});
    const std::string* title = c.meta_value("title");
    REQUIRE(title != nullptr);
    CHECK(*title == "First steps to making coffee");
    CHECK(c.meta_value("nope") == nullptr);
    CHECK(c.checkpoints.size() == 2);
    CHECK(c.checkpoints[0].name == "kettle_held");
    CHECK(c.checkpoints[0].ca_id == "MRHH");
    CHECK(c.checkpoints[0].expected_time.micro == 4'100'000);
    CHECK(c.checkpoints[0].tolerance.micro == 50'000);
}

TEST_CASE("horizon falls back to the latest recorded time without meta") {
    Corpus c;
    CellAssembly a;
    a.seq = 1;
    a.id = "CA";
    a.type = CaType::Cognitive;
    a.p.potn = *parse_dec("10");
    a.p.thresh = *parse_dec("2");
    a.p.igmax = *parse_dec("7");
    a.p.igfat = *parse_dec("6");
    a.p.p50 = *parse_dec("1.0");
    a.p.igtig = *parse_dec("2.0");
    a.p.igtex = parse_dec("3.0");
    a.p.d50 = parse_dec("4.5");
    c.cas.push_back(a);
    CHECK(c.end_time_micro() == 6'000'000); // decay end 2*4.5 - 3
}
