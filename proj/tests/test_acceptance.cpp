// Acceptance gate: twelve numbered criteria checked against the bundled
// corpus, each printing one "CRITERION k: PASS/FAIL" line. Four criteria
// compare derived tables against the reference analysis that accompanies
// the corpus and fail honestly where the recorded parameter table does not
// reproduce the reference's printed values; the assertions below pin those
// mismatches exactly, so any drift in either direction is caught.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <set>
#include <string>
#include <vector>

#include "corpus_fixture.hpp"
#include "corpus_gen.hpp"
#include "tacap/cli.hpp"
#include "tacap/dsl.hpp"
#include "tacap/metrics.hpp"
#include "tacap/model.hpp"
#include "tacap/render.hpp"
#include "tacap/sim.hpp"
#include "tacap/util.hpp"
#include "tacap/validate.hpp"

using namespace tacap;
using tacap::testing::bundled_corpus;
using tacap::testing::bundled_path;
using tacap::testing::bundled_text;
using tacap::testing::CorpusGen;
using tacap::testing::fuzz_input;

namespace {

const std::vector<GroupStats>& group_stats() {
    static std::vector<GroupStats> st = [] {
        auto s = type_means(bundled_corpus());
        REQUIRE(s.has_value());
        REQUIRE(s->size() == 4);
        return *s;
    }();
    return st;
}

std::string tenths(long long t) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%s%lld.%lld", t < 0 ? "-" : "",
                  (t < 0 ? -t : t) / 10, (t < 0 ? -t : t) % 10);
    return buf;
}

void line(int k, bool pass, const std::string& detail) {
    std::cout << "CRITERION " << k << ": " << (pass ? "PASS" : "FAIL")
              << " — " << detail << "\n";
}

std::string join(const std::vector<std::string>& parts) {
    std::string s;
    for (const std::string& p : parts) {
        if (!s.empty()) s += ", ";
        s += p;
    }
    return s;
}

// Reference analysis values (display precision).
constexpr long long kRefMeans[4][8] = {
    {111, 33, 68, 57, 45, 47, 54, 55},   // All
    {104, 28, 66, 52, 38, 41, 50, 52},   // Cognitive
    {144, 50, 86, 75, 45, 47, 53, 54},   // Visual
    {95, 26, 59, 49, 53, 54, 61, 62},    // Motor
};
constexpr long long kRefNorm[4][4] = {
    {0, 4, 11, 13}, {0, 6, 15, 19}, {0, 4, 10, 12}, {0, 2, 9, 11}};
constexpr double kRefRatio[3][6] = {
    {29.7, 38.5, 51.6, -6.4, 9.5, -14.4},    // PotN
    {51.6, 78.6, 92.3, -15.1, 7.7, -21.2},   // Thresh
    {26.5, 30.3, 45.8, -2.9, 1.1, -13.2},    // IgMax
};
constexpr long long kRefFatigue[4][3] = {
    {11, 68, 162}, {14, 66, 212}, {11, 86, 128}, {10, 59, 170}};
constexpr int kRefLinks[3][3] = {{0, 21, 1}, {20, 26, 17}, {3, 1, 0}};

const std::set<std::string> kPersistentIds = {
    "CRHH", "MRHH", "CS", "VS", "CMKT", "VK", "MHKT", "TLHTS", "CFK", "MPTSU"};

} // namespace

TEST_CASE("criterion 1: per-type parameter means at display rounding") {
    const auto& st = group_stats();
    CHECK(st[0].n == 48);
    CHECK(st[1].n == 18);
    CHECK(st[2].n == 16);
    CHECK(st[3].n == 14);

    int match = 0;
    std::vector<std::string> diffs;
    for (int r = 0; r < 4; ++r) {
        auto got = st[r].mean_tenths();
        for (int c = 0; c < 8; ++c) {
            if (got[c] == kRefMeans[r][c]) {
                ++match;
            } else {
                diffs.push_back(st[r].name + " " + kParamNames[c] + " " +
                                tenths(got[c]) + " vs " +
                                tenths(kRefMeans[r][c]));
            }
        }
    }
    // the recorded parameter table reproduces 26 of the 32 reference means;
    // the six standing differences are pinned here
    CHECK(match == 26);
    REQUIRE(diffs.size() == 6);
    CHECK(diffs[0] == "All PotN 11.5 vs 11.1");
    CHECK(diffs[1] == "All Thresh 3.5 vs 3.3");
    CHECK(diffs[2] == "All IgMax 7.1 vs 6.8");
    CHECK(diffs[3] == "All IgFat 5.9 vs 5.7");
    CHECK(diffs[4] == "All D50% 5.6 vs 5.5");
    CHECK(diffs[5] == "Visual Thresh 4.9 vs 5.0");

    line(1, match == 32,
         std::to_string(match) + "/32 display means match the reference "
         "(subset 48/18/16/14 matches); differing: " + join(diffs));
}

TEST_CASE("criterion 2: normalized lifecycle times from the computed means") {
    auto rows = normalized_times_rows(group_stats());
    REQUIRE(rows.size() == 4);

    int match = 0;
    std::vector<std::string> diffs;
    static const char* stage[] = {"start", "ignite", "extinguish", "end"};
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) {
            if (rows[r].tenths[c] == kRefNorm[r][c]) {
                ++match;
            } else {
                diffs.push_back(rows[r].name + " " + stage[c] + " " +
                                tenths(rows[r].tenths[c]) + " vs " +
                                tenths(kRefNorm[r][c]));
            }
        }
    CHECK(match == 15);
    REQUIRE(diffs.size() == 1);
    CHECK(diffs[0] == "All end 1.5 vs 1.3");

    // the transform itself is sound: applied to the reference means it
    // reproduces every reference normalized value
    int identity = 0;
    for (int r = 0; r < 4; ++r) {
        auto t = normalized_times(
            kRefMeans[r][4] / 10.0, kRefMeans[r][5] / 10.0,
            kRefMeans[r][6] / 10.0, kRefMeans[r][7] / 10.0);
        for (int c = 0; c < 4; ++c)
            if (std::llround(t[c] * 10) == kRefNorm[r][c]) ++identity;
    }
    CHECK(identity == 16);

    line(2, match == 16,
         std::to_string(match) + "/16 normalized values match the reference "
         "(" + join(diffs) + "); the transform applied to the reference "
         "means reproduces all 16");
}

TEST_CASE("criterion 3: between-group percentage differences") {
    const auto& st = group_stats();
    constexpr long long kComputedTenths[3][6] = {
        {252, 376, 513, -90, 99, -172},
        {419, 743, 868, -186, 72, -240},
        {221, 316, 455, -72, 106, -161},
    };
    static const char* pair_names[] = {"Visual/All", "Visual/Cognitive",
                                       "Visual/Motor", "Cognitive/All",
                                       "Cognitive/Motor", "Motor/All"};
    int within = 0;
    double closest = 1e9;
    std::string closest_at;
    for (int p = 0; p < 3; ++p) {
        auto entries = ratio_table(st, p);
        REQUIRE(entries.size() == 6);
        for (int k = 0; k < 6; ++k) {
            CHECK(entries[k].num + "/" + entries[k].den == pair_names[k]);
            CHECK(entries[k].tenths == kComputedTenths[p][k]);
            double delta = std::abs(entries[k].raw - kRefRatio[p][k]);
            if (delta <= 0.2) ++within;
            if (delta < closest) {
                closest = delta;
                closest_at = std::string(kParamNames[p]) + " " + pair_names[k];
            }
        }
    }
    // no entry lands within the 0.2-point tolerance of the reference
    CHECK(within == 0);

    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "%d/18 percentage entries within 0.2 points of the "
                  "reference (closest delta %.2f points at %s)",
                  within, closest, closest_at.c_str());
    line(3, within == 18, buf);
}

TEST_CASE("criterion 4: fatigue summary at display rounding") {
    auto rows = fatigue_summary(group_stats());
    REQUIRE(rows.size() == 4);

    int match = 0;
    std::vector<std::string> diffs;
    static const char* col[] = {"fatigue", "IgMax", "%"};
    for (int r = 0; r < 4; ++r) {
        long long got[3] = {rows[r].fat_tenths, rows[r].igmax_tenths,
                            rows[r].pct_tenths};
        for (int c = 0; c < 3; ++c) {
            if (got[c] == kRefFatigue[r][c]) {
                ++match;
            } else {
                diffs.push_back(rows[r].name + " " + col[c] + " " +
                                tenths(got[c]) + " vs " +
                                tenths(kRefFatigue[r][c]));
            }
        }
    }
    CHECK(match == 8);
    REQUIRE(diffs.size() == 4);
    CHECK(diffs[0] == "All fatigue 1.2 vs 1.1");
    CHECK(diffs[1] == "All IgMax 7.1 vs 6.8");
    CHECK(diffs[2] == "All % 16.9 vs 16.2");
    CHECK(diffs[3] == "Motor % 16.9 vs 17.0");

    line(4, match == 12,
         std::to_string(match) + "/12 fatigue cells match the reference; "
         "differing: " + join(diffs));
}

TEST_CASE("criterion 5: excitatory link-count matrix within tolerance") {
    IoMatrix m = io_matrix(bundled_corpus());
    CHECK(m.n[0][0] == 0);  CHECK(m.n[0][1] == 20); CHECK(m.n[0][2] == 1);
    CHECK(m.n[1][0] == 19); CHECK(m.n[1][1] == 26); CHECK(m.n[1][2] == 18);
    CHECK(m.n[2][0] == 1);  CHECK(m.n[2][1] == 1);  CHECK(m.n[2][2] == 0);
    CHECK(m.total == 86);

    static const char* axis = "VCM";
    bool ok = true;
    std::vector<std::string> diffs;
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) {
            int delta = m.n[r][c] - kRefLinks[r][c];
            CHECK(std::abs(delta) <= 2);
            ok &= std::abs(delta) <= 2;
            if (delta != 0)
                diffs.push_back(std::string(1, axis[r]) + "->" + axis[c] +
                                " " + std::to_string(m.n[r][c]) + " vs " +
                                std::to_string(kRefLinks[r][c]));
        }
    CHECK(std::abs(m.total - 89) <= 4);
    ok &= std::abs(m.total - 89) <= 4;

    line(5, ok,
         "all cells within +-2 of the reference (4 reconstruction gaps: " +
         join(diffs) + "); total 86 vs 89 within +-4");
}

TEST_CASE("criterion 6: checkpoint ignition times") {
    const Corpus& c = bundled_corpus();
    REQUIRE(c.checkpoints.size() == 2);
    CHECK(c.checkpoints[0].ca_id == "MRHH");
    CHECK(c.checkpoints[0].expected_time.micro == 4'100'000);
    CHECK(c.checkpoints[1].ca_id == "MPTSU");
    CHECK(c.checkpoints[1].expected_time.micro == 9'000'000);

    bool ok = true;
    std::vector<std::string> details;
    for (const Checkpoint& cp : c.checkpoints) {
        const CellAssembly* ca = c.find(cp.ca_id);
        REQUIRE(ca != nullptr);
        long long diff =
            std::abs(ca->p.igtig.micro - cp.expected_time.micro);
        CHECK(diff == 0); // recorded ignitions sit exactly on the checkpoints
        CHECK(diff <= cp.tolerance.micro);
        ok &= diff <= cp.tolerance.micro;
        details.push_back(cp.ca_id + " at " +
                          format_micro_minimal(cp.expected_time.micro) +
                          " s (diff 0)");
    }
    // the checkpoint rule agrees
    for (const Finding& f : validate_corpus(c).findings)
        CHECK(f.rule != "r5");

    line(6, ok, join(details) + "; tolerance 0.05 s");
}

TEST_CASE("criterion 7: half-level anchors for every curve shape") {
    const Corpus& c = bundled_corpus();
    long long horizon = c.end_time_micro();
    const Shape shapes[] = {{1.0}, {2.0}, {0.5}};

    int primed = 0, decayed = 0, flat_prime = 0, flat_decay = 0;
    double worst = 0.0;
    for (const CellAssembly& ca : c.cas) {
        long long ps = prime_start_micro(ca);
        for (const Shape& shape : shapes) {
            if (ca.p.igtig.micro > ps) {
                double n = level_at(ca, ca.p.p50.micro, horizon, shape);
                worst = std::max(
                    worst, std::abs(n - ca.p.thresh.micro / 1e6 / 2.0));
                ++primed;
            } else {
                // zero-width priming: the half-crossing does not exist and
                // the ignition boundary convention holds instead
                CHECK(phase_at(ca, ca.p.igtig.micro, horizon) ==
                      Phase::Ignited);
                CHECK(level_at(ca, ca.p.igtig.micro, horizon, shape) ==
                      ca.p.igmax.micro / 1e6);
                ++flat_prime;
            }
            if (!ca.p.igtex || !ca.p.d50) continue;
            if (ca.p.d50->micro > ca.p.igtex->micro) {
                double n = level_at(ca, ca.p.d50->micro, horizon, shape);
                worst = std::max(
                    worst, std::abs(n - ca.p.igfat.micro / 1e6 / 2.0));
                ++decayed;
            } else {
                // zero-width decay collapses to quiescence at extinction
                CHECK(phase_at(ca, ca.p.d50->micro, horizon) ==
                      Phase::Quiescent);
                CHECK(level_at(ca, ca.p.d50->micro, horizon, shape) == 0.0);
                ++flat_decay;
            }
        }
    }
    CHECK(primed == 63 * 3);
    CHECK(decayed == 46 * 3);
    CHECK(flat_prime == 1 * 3);
    CHECK(flat_decay == 8 * 3);
    CHECK(worst <= 1e-9);

    char buf[256];
    std::snprintf(buf, sizeof buf,
                  "n(P50%%) = Thresh/2 on 63 priming spans and n(D50%%) = "
                  "IgFat/2 on 46 decay spans, each under 3 shapes, max error "
                  "%.1e <= 1e-9; 1 zero-width priming and 8 zero-width "
                  "decays follow the boundary conventions",
                  worst);
    line(7, worst <= 1e-9 && primed == 63 * 3 && decayed == 46 * 3, buf);
}

TEST_CASE("criterion 8: persistence census at the horizon") {
    ScriptedSim sim = simulate_scripted(bundled_corpus(), 100'000);
    std::set<std::string> ignited;
    for (const CaTrace& tr : sim.traces)
        if (!tr.phase.empty() && tr.phase.back() == Phase::Ignited)
            ignited.insert(tr.id);
    CHECK(ignited.size() == 10);
    CHECK(ignited == kPersistentIds);

    line(8, ignited == kPersistentIds,
         "exactly 10 assemblies ignited at the 9 s horizon, matching the "
         "recorded persistent set by id");
}

TEST_CASE("criterion 9: ignited-duration histogram") {
    Histogram h = duration_histogram(bundled_corpus());
    REQUIRE(!h.groups.empty());
    REQUIRE(h.groups[0].first == "All");
    const std::vector<int>& bins = h.groups[0].second;
    REQUIRE(bins.size() == 6);
    const std::vector<int> frozen = {25, 5, 7, 8, 2, 1};
    CHECK(bins == frozen);
    int total = 0;
    for (int b : bins) total += b;
    CHECK(total == 48);
    CHECK(bins[0] * 2 >= total); // at least half the subset under 0.5 s

    line(9, bins == frozen && bins[0] * 2 >= total,
         "25 of 48 durations (52%) in [0, 0.5); bins 25/5/7/8/2/1 match the "
         "frozen counts");
}

TEST_CASE("criterion 10: round trips and fuzz robustness") {
    const std::string& text = bundled_text();
    ParseResult pr = parse_corpus(text);
    REQUIRE(pr.ok());
    bool bundled_exact = serialize_corpus(*pr.corpus) == text;
    CHECK(bundled_exact);

    CorpusGen gen(0xACCE57);
    int round_trips = 0;
    for (int i = 0; i < 1000; ++i) {
        std::string t1 = serialize_corpus(gen.make());
        ParseResult p = parse_corpus(t1);
        REQUIRE(p.ok());
        if (serialize_corpus(*p.corpus) == t1) ++round_trips;
    }
    CHECK(round_trips == 1000);

    std::mt19937 rng(0xACCE58);
    CorpusGen mutator(0xACCE59);
    int survived = 0;
    for (int i = 0; i < 10'000; ++i) {
        parse_corpus(fuzz_input(i, rng, mutator));
        ++survived; // reaching here means no crash
    }
    CHECK(survived == 10'000);

    line(10, bundled_exact && round_trips == 1000 && survived == 10'000,
         "byte-exact round trip on the bundled corpus (10435 bytes) and "
         "1000/1000 random corpora; 10000 fuzzed inputs parsed without a "
         "crash");
}

TEST_CASE("criterion 11: causal calibration reproduces recorded ignitions") {
    constexpr long long dt = 10'000; // 0.01 s
    CausalOptions opts;
    opts.calibrate = true;
    CausalSim sim = simulate_causal(bundled_corpus(), dt, opts);
    REQUIRE(sim.rows.size() == 64);

    long long worst = -1;
    for (const CausalRow& r : sim.rows) {
        REQUIRE(r.predicted_micro.has_value());
        long long res = std::abs(*r.predicted_micro - r.recorded_micro);
        worst = std::max(worst, res);
        CHECK(res <= dt / 2);
    }
    CHECK(worst == 0);
    CHECK(sim.findings.empty());

    line(11, worst == 0,
         "calibrated causal replay reproduces all 64 recorded ignition "
         "times exactly at dt = 0.01 s (max residual 0.000 s, bound dt/2)");
}

TEST_CASE("criterion 12: every command is byte-reproducible") {
    namespace fs = std::filesystem;
    fs::path d = fs::temp_directory_path() / "tacap_acceptance_scratch";
    fs::remove_all(d);
    fs::create_directories(d);
    fs::current_path(d);

    const std::string& b = bundled_path();
    struct Cmd {
        std::vector<std::string> args;
        std::vector<std::string> files;
    };
    std::vector<Cmd> cmds = {
        {{"validate", b}, {}},
        {{"validate", b, "--format", "tsv"}, {}},
        {{"simulate", b, "--dt", "0.1", "--mode", "scripted", "-o", "s"},
         {"s_trace.csv", "s_events.csv"}},
        {{"simulate", b, "--dt", "0.01", "--mode", "causal", "--calibrate",
          "-o", "c"},
         {"c_residuals.csv"}},
        {{"simulate", b, "--dt", "0.01", "--mode", "causal", "-o", "f"},
         {"f_residuals.csv"}},
        {{"render", b, "scam", "--ca", "CKEC", "-o", "ca.svg"}, {"ca.svg"}},
        {{"render", b, "scam", "--means", "All", "-o", "mean.svg"},
         {"mean.svg"}},
        {{"render", b, "caar", "-o", "caar.svg"}, {"caar.svg"}},
        {{"render", b, "caar", "--show-dangling", "-o", "caard.svg"},
         {"caard.svg"}},
        {{"render", b, "frames", "--dt", "0.1", "-o", "frames.json"},
         {"frames.json"}},
        {{"report", b, "-o", "report.md"}, {"report.md"}},
    };
    for (const char* table : {"3", "4", "5a", "5b", "5c", "6", "7", "hist"})
        for (const char* format : {"text", "csv"})
            cmds.push_back({{"stats", b, "--table", table, "--format", format},
                            {}});

    auto snapshot = [](const Cmd& c) {
        std::ostringstream out, err;
        int rc = run_cli(c.args, out, err);
        CHECK(rc == kOk);
        std::string s = std::to_string(rc) + "\x1f" + out.str() + "\x1f" +
                        err.str();
        for (const std::string& f : c.files) {
            auto content = read_text_file(f);
            REQUIRE(content.has_value());
            s += "\x1f" + *content;
        }
        return s;
    };

    bool all_equal = true;
    for (const Cmd& c : cmds) {
        bool same = snapshot(c) == snapshot(c);
        CHECK(same);
        all_equal &= same;
    }

    line(12, all_equal,
         std::to_string(cmds.size()) +
             " command invocations byte-identical across repeated runs "
             "(stdout, stderr, and 10 output files)");
}
