// Derived corpus metrics: the analysis subset, per-type parameter means,
// normalized lifecycle times, between-group ratio tables, fatigue summary,
// ignited-duration histogram, and the excitatory link-count matrix.
//
// Display values are computed in exact integer arithmetic (micro-unit sums,
// half-away-from-zero rounding to tenths) so printed tables never depend on
// floating-point rounding.
#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "tacap/model.hpp"

namespace tacap {

// Column order used by every 8-parameter table.
extern const std::array<const char*, 8> kParamNames;  // PotN .. D50%

// Whole-corpus head counts.
struct Census {
    int total = 0;
    std::array<int, 5> by_type{};  // indexed by CaType
    int persistent = 0;
    int excite = 0, inhibit = 0, env_in = 0, motor_out = 0;
    int checkpoints = 0;
};
Census census(const Corpus& corpus);

// Assemblies entering the statistics tables: Touch and Kinaesthetic types
// are excluded, as are persistent assemblies and those whose extinction
// lands on or after the analysis horizon (their decay is unobserved).
// Corpus order is preserved.
std::vector<const CellAssembly*> analysis_subset(const Corpus& corpus);

// Exact per-group sums; display means derive from these.
struct GroupStats {
    std::string name;                    // "All", "Cognitive", ...
    int n = 0;
    std::array<long long, 8> sum_micro{};  // potn..d50 in micro-units

    std::array<long long, 8> mean_tenths() const;  // rounded display means
    std::array<double, 8> mean_raw() const;
};

// Rows: "All" (whole subset) then each assembly type present in the
// subset, in type order. Empty subset -> nullopt (empty group).
std::optional<std::vector<GroupStats>> type_means(const Corpus& corpus);

// Normalized lifecycle built from display means (integer tenths):
//   t1 = (IgTIg - P50%) * 2,  t2 = (IgTEx - IgTIg) + t1,
//   t3 = (D50% - IgTEx) * 2 + t2.
struct NormRow {
    std::string name;
    std::array<long long, 4> tenths{};   // start(0), ignite, extinguish, end
};
std::vector<NormRow> normalized_times_rows(const std::vector<GroupStats>& stats);
std::array<double, 4> normalized_times(double p50, double igtig, double igtex,
                                       double d50);

// Percent differences (meanA/meanB - 1) * 100 between group means of one
// parameter, computed from unrounded sums. Type groups are ordered by
// descending mean; each is compared against All and every later group.
struct RatioEntry {
    std::string num, den;    // group names
    long long tenths = 0;    // display value, tenths of a percent
    double raw = 0.0;
};
std::vector<RatioEntry> ratio_table(const std::vector<GroupStats>& stats,
                                    int param_idx);

// Mean fatigue (IgMax - IgFat), mean IgMax, and their displayed ratio.
// The percentage is computed from the two *displayed* (rounded) means.
struct FatigueRow {
    std::string name;
    int n = 0;
    long long fat_tenths = 0, igmax_tenths = 0, pct_tenths = 0;
    double fat_raw = 0.0, igmax_raw = 0.0, pct_raw = 0.0;
};
std::vector<FatigueRow> fatigue_summary(const std::vector<GroupStats>& stats);

// Ignited-duration histogram over the analysis subset; bins are
// left-closed [k*w, (k+1)*w). groups[0] is "All", then per-type rows.
struct Histogram {
    long long width_micro = 500000;
    std::vector<std::pair<std::string, std::vector<int>>> groups;
};
Histogram duration_histogram(const Corpus& corpus, long long width_micro = 500000);

// Unique excitatory links between defined Visual/Cognitive/Motor
// assemblies; rows are sources, columns targets, order V, C, M.
struct IoMatrix {
    std::array<std::array<int, 3>, 3> n{};
    int total = 0;
};
IoMatrix io_matrix(const Corpus& corpus);

// ─── Table rendering ─────────────────────────────────────────────────────

struct TextTable {
    std::string title;
    std::vector<std::string> headers;
    std::vector<std::vector<std::string>> rows;
};

std::string render_table_text(const TextTable& t);
std::string render_table_csv(const TextTable& t);       // no title line
std::string render_table_markdown(const TextTable& t);  // title as heading

// full_precision switches numeric cells from rounded display values to
// the unrounded quantities at six decimals (used by CSV output).
TextTable table_type_means(const std::vector<GroupStats>& stats,
                           bool full_precision = false);
TextTable table_normalized(const std::vector<GroupStats>& stats,
                           bool full_precision = false);
TextTable table_ratio(const std::vector<GroupStats>& stats, int param_idx,
                      bool full_precision = false);
TextTable table_fatigue(const std::vector<GroupStats>& stats,
                        bool full_precision = false);
TextTable table_histogram(const Histogram& h);
TextTable table_io_matrix(const IoMatrix& m);

} // namespace tacap
