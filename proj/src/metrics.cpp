// Derived metric tables and their text/CSV/Markdown rendering.
#include "tacap/metrics.hpp"

#include <algorithm>
#include <cstdio>

#include "tacap/decimal.hpp"

namespace tacap {

const std::array<const char*, 8> kParamNames = {
    "PotN", "Thresh", "IgMax", "IgFat", "P50%", "IgTIg", "IgTEx", "D50%"};

namespace {

constexpr CaType kTypeOrder[5] = {CaType::Cognitive, CaType::Visual,
                                  CaType::Touch, CaType::Kinaesthetic,
                                  CaType::Motor};

std::array<long long, 8> param_micros(const CellAssembly& ca) {
    return {ca.p.potn.micro,
            ca.p.thresh.micro,
            ca.p.igmax.micro,
            ca.p.igfat.micro,
            ca.p.p50.micro,
            ca.p.igtig.micro,
            ca.p.igtex ? ca.p.igtex->micro : 0,
            ca.p.d50 ? ca.p.d50->micro : 0};
}

// Exact mean comparison: meanA > meanB  <=>  sumA*nB > sumB*nA.
bool mean_greater(const GroupStats& a, const GroupStats& b, int idx) {
    return a.sum_micro[idx] * b.n > b.sum_micro[idx] * a.n;
}

} // namespace

Census census(const Corpus& corpus) {
    Census c;
    c.total = static_cast<int>(corpus.cas.size());
    for (const CellAssembly& ca : corpus.cas) {
        ++c.by_type[static_cast<std::size_t>(ca.type)];
        if (ca.p.persistent()) ++c.persistent;
    }
    for (const Edge& e : corpus.edges) {
        switch (e.kind) {
            case EdgeKind::Excite:   ++c.excite; break;
            case EdgeKind::Inhibit:  ++c.inhibit; break;
            case EdgeKind::EnvIn:    ++c.env_in; break;
            case EdgeKind::MotorOut: ++c.motor_out; break;
        }
    }
    c.checkpoints = static_cast<int>(corpus.checkpoints.size());
    return c;
}

std::vector<const CellAssembly*> analysis_subset(const Corpus& corpus) {
    std::vector<const CellAssembly*> out;
    long long horizon = corpus.end_time_micro();
    for (const CellAssembly& ca : corpus.cas) {
        if (ca.type == CaType::Touch || ca.type == CaType::Kinaesthetic) continue;
        if (ca.p.persistent()) continue;
        if (!ca.p.igtex || !ca.p.d50) continue;  // half-persistent: not analyzable
        if (ca.p.igtex->micro >= horizon) continue;  // decay unobserved
        out.push_back(&ca);
    }
    return out;
}

std::array<long long, 8> GroupStats::mean_tenths() const {
    std::array<long long, 8> out{};
    for (int i = 0; i < 8; ++i)
        out[i] = round_div_half_away(sum_micro[i], static_cast<long long>(n) * 100000);
    return out;
}

std::array<double, 8> GroupStats::mean_raw() const {
    std::array<double, 8> out{};
    for (int i = 0; i < 8; ++i)
        out[i] = static_cast<double>(sum_micro[i]) / (1e6 * n);
    return out;
}

std::optional<std::vector<GroupStats>> type_means(const Corpus& corpus) {
    auto subset = analysis_subset(corpus);
    if (subset.empty()) return std::nullopt;

    auto accumulate = [&](std::string name, auto&& pred) {
        GroupStats g;
        g.name = std::move(name);
        for (const CellAssembly* ca : subset) {
            if (!pred(*ca)) continue;
            ++g.n;
            auto v = param_micros(*ca);
            for (int i = 0; i < 8; ++i) g.sum_micro[i] += v[i];
        }
        return g;
    };

    std::vector<GroupStats> rows;
    rows.push_back(accumulate("All", [](const CellAssembly&) { return true; }));
    for (CaType t : kTypeOrder) {
        GroupStats g = accumulate(type_name(t),
                                  [&](const CellAssembly& ca) { return ca.type == t; });
        if (g.n > 0) rows.push_back(std::move(g));
    }
    return rows;
}

std::vector<NormRow> normalized_times_rows(const std::vector<GroupStats>& stats) {
    std::vector<NormRow> rows;
    for (const GroupStats& g : stats) {
        auto m = g.mean_tenths();
        NormRow r;
        r.name = g.name;
        long long t1 = (m[5] - m[4]) * 2;          // priming, centered on P50%
        long long t2 = (m[6] - m[5]) + t1;         // ignited span
        long long t3 = (m[7] - m[6]) * 2 + t2;     // decay, centered on D50%
        r.tenths = {0, t1, t2, t3};
        rows.push_back(std::move(r));
    }
    return rows;
}

std::array<double, 4> normalized_times(double p50, double igtig, double igtex,
                                       double d50) {
    double t1 = (igtig - p50) * 2;
    double t2 = (igtex - igtig) + t1;
    double t3 = (d50 - igtex) * 2 + t2;
    return {0.0, t1, t2, t3};
}

std::vector<RatioEntry> ratio_table(const std::vector<GroupStats>& stats,
                                    int param_idx) {
    // Type groups (everything but "All"), ordered by descending mean.
    std::vector<const GroupStats*> groups;
    const GroupStats* all = nullptr;
    for (const GroupStats& g : stats) {
        if (g.name == "All") all = &g;
        else groups.push_back(&g);
    }
    std::stable_sort(groups.begin(), groups.end(),
                     [&](const GroupStats* a, const GroupStats* b) {
                         return mean_greater(*a, *b, param_idx);
                     });

    auto make = [&](const GroupStats& a, const GroupStats& b) {
        RatioEntry e;
        e.num = a.name;
        e.den = b.name;
        long long sa = a.sum_micro[param_idx], sb = b.sum_micro[param_idx];
        long long num = sa * b.n - sb * a.n;
        long long den = sb * a.n;
        if (den < 0) num = -num, den = -den;
        e.tenths = den == 0 ? 0 : round_div_half_away(1000 * num, den);
        e.raw = den == 0 ? 0.0
                         : 100.0 * (static_cast<double>(sa) * b.n /
                                        (static_cast<double>(sb) * a.n) -
                                    1.0);
        return e;
    };

    std::vector<RatioEntry> out;
    for (std::size_t i = 0; i < groups.size(); ++i) {
        if (all) out.push_back(make(*groups[i], *all));
        for (std::size_t j = i + 1; j < groups.size(); ++j)
            out.push_back(make(*groups[i], *groups[j]));
    }
    return out;
}

std::vector<FatigueRow> fatigue_summary(const std::vector<GroupStats>& stats) {
    std::vector<FatigueRow> out;
    for (const GroupStats& g : stats) {
        FatigueRow r;
        r.name = g.name;
        r.n = g.n;
        long long fat_sum = g.sum_micro[2] - g.sum_micro[3];  // igmax - igfat
        long long denom = static_cast<long long>(g.n) * 100000;
        r.fat_tenths = round_div_half_away(fat_sum, denom);
        r.igmax_tenths = round_div_half_away(g.sum_micro[2], denom);
        // Percentage from the two displayed means, not the raw ones.
        r.pct_tenths = r.igmax_tenths == 0
                           ? 0
                           : round_div_half_away(1000 * r.fat_tenths,
                                                 r.igmax_tenths);
        r.fat_raw = static_cast<double>(fat_sum) / (1e6 * g.n);
        r.igmax_raw = static_cast<double>(g.sum_micro[2]) / (1e6 * g.n);
        r.pct_raw = r.igmax_raw == 0 ? 0.0 : 100.0 * r.fat_raw / r.igmax_raw;
        out.push_back(std::move(r));
    }
    return out;
}

Histogram duration_histogram(const Corpus& corpus, long long width_micro) {
    Histogram h;
    h.width_micro = width_micro;
    auto subset = analysis_subset(corpus);

    auto fill = [&](auto&& pred) {
        std::vector<int> bins;
        for (const CellAssembly* ca : subset) {
            if (!pred(*ca)) continue;
            long long dur = ca->p.igtex->micro - ca->p.igtig.micro;
            if (dur < 0) dur = 0;
            auto idx = static_cast<std::size_t>(dur / width_micro);
            if (bins.size() <= idx) bins.resize(idx + 1, 0);
            ++bins[idx];
        }
        return bins;
    };

    h.groups.emplace_back("All", fill([](const CellAssembly&) { return true; }));
    for (CaType t : kTypeOrder) {
        auto bins = fill([&](const CellAssembly& ca) { return ca.type == t; });
        if (!bins.empty()) h.groups.emplace_back(type_name(t), std::move(bins));
    }
    return h;
}

IoMatrix io_matrix(const Corpus& corpus) {
    auto axis = [](CaType t) -> int {
        switch (t) {
            case CaType::Visual:    return 0;
            case CaType::Cognitive: return 1;
            case CaType::Motor:     return 2;
            default:                return -1;
        }
    };
    IoMatrix m;
    for (const Edge& e : corpus.edges) {
        if (e.kind != EdgeKind::Excite) continue;
        const CellAssembly* a = corpus.find(e.source);
        const CellAssembly* b = corpus.find(e.target);
        if (!a || !b) continue;
        int r = axis(a->type), c = axis(b->type);
        if (r < 0 || c < 0) continue;
        ++m.n[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
        ++m.total;
    }
    return m;
}

// ─── Table rendering ─────────────────────────────────────────────────────

namespace {

std::string f6(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

std::string csv_cell(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) {
        if (c == '"') q += "\"\"";
        else q += c;
    }
    return q + "\"";
}

} // namespace

std::string render_table_text(const TextTable& t) {
    std::vector<std::size_t> width(t.headers.size(), 0);
    auto widen = [&](const std::vector<std::string>& row) {
        for (std::size_t i = 0; i < row.size() && i < width.size(); ++i)
            width[i] = std::max(width[i], row[i].size());
    };
    widen(t.headers);
    for (const auto& row : t.rows) widen(row);

    std::string out = t.title + "\n";
    auto emit = [&](const std::vector<std::string>& row) {
        for (std::size_t i = 0; i < width.size(); ++i) {
            const std::string& cell = i < row.size() ? row[i] : std::string();
            if (i == 0) {
                out += cell;
                out.append(width[i] - cell.size(), ' ');
            } else {
                out += "  ";
                out.append(width[i] - cell.size(), ' ');
                out += cell;
            }
        }
        while (!out.empty() && out.back() == ' ') out.pop_back();
        out += "\n";
    };
    emit(t.headers);
    for (const auto& row : t.rows) emit(row);
    return out;
}

std::string render_table_csv(const TextTable& t) {
    std::string out;
    auto emit = [&](const std::vector<std::string>& row) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out += ',';
            out += csv_cell(row[i]);
        }
        out += '\n';
    };
    emit(t.headers);
    for (const auto& row : t.rows) emit(row);
    return out;
}

std::string render_table_markdown(const TextTable& t) {
    std::string out = "### " + t.title + "\n\n";
    auto emit = [&](const std::vector<std::string>& row) {
        out += "|";
        for (const std::string& cell : row) out += " " + cell + " |";
        out += "\n";
    };
    emit(t.headers);
    std::vector<std::string> rule;
    for (std::size_t i = 0; i < t.headers.size(); ++i)
        rule.push_back(i == 0 ? "---" : "---:");
    emit(rule);
    for (const auto& row : t.rows) emit(row);
    return out;
}

TextTable table_type_means(const std::vector<GroupStats>& stats,
                           bool full_precision) {
    TextTable t;
    t.title = "Parameter means by assembly type";
    t.headers = {"Type", "n"};
    for (const char* p : kParamNames) t.headers.push_back(p);
    for (const GroupStats& g : stats) {
        std::vector<std::string> row = {g.name, std::to_string(g.n)};
        if (full_precision)
            for (double v : g.mean_raw()) row.push_back(f6(v));
        else
            for (long long v : g.mean_tenths()) row.push_back(format_tenths(v));
        t.rows.push_back(std::move(row));
    }
    return t;
}

TextTable table_normalized(const std::vector<GroupStats>& stats,
                           bool full_precision) {
    TextTable t;
    t.title = "Normalized lifecycle times (s)";
    t.headers = {"Type", "start", "ignite", "extinguish", "end"};
    if (full_precision) {
        for (const GroupStats& g : stats) {
            auto m = g.mean_raw();
            auto v = normalized_times(m[4], m[5], m[6], m[7]);
            t.rows.push_back({g.name, f6(v[0]), f6(v[1]), f6(v[2]), f6(v[3])});
        }
        return t;
    }
    for (const NormRow& r : normalized_times_rows(stats)) {
        t.rows.push_back({r.name, format_tenths(r.tenths[0]),
                          format_tenths(r.tenths[1]), format_tenths(r.tenths[2]),
                          format_tenths(r.tenths[3])});
    }
    return t;
}

TextTable table_ratio(const std::vector<GroupStats>& stats, int param_idx,
                      bool full_precision) {
    TextTable t;
    t.title = std::string(kParamNames[static_cast<std::size_t>(param_idx)]) +
              " differences between groups (%)";
    t.headers = {"Pair", "diff%"};
    for (const RatioEntry& e : ratio_table(stats, param_idx))
        t.rows.push_back({e.num + "/" + e.den,
                          full_precision ? f6(e.raw) : format_tenths(e.tenths)});
    return t;
}

TextTable table_fatigue(const std::vector<GroupStats>& stats,
                        bool full_precision) {
    TextTable t;
    t.title = "Fatigue summary (kiloneurons)";
    t.headers = {"Type", "n", "Fatigue", "IgMax", "Fatigue%"};
    for (const FatigueRow& r : fatigue_summary(stats)) {
        if (full_precision)
            t.rows.push_back({r.name, std::to_string(r.n), f6(r.fat_raw),
                              f6(r.igmax_raw), f6(r.pct_raw)});
        else
            t.rows.push_back({r.name, std::to_string(r.n),
                              format_tenths(r.fat_tenths),
                              format_tenths(r.igmax_tenths),
                              format_tenths(r.pct_tenths)});
    }
    return t;
}

TextTable table_histogram(const Histogram& h) {
    TextTable t;
    t.title = "Ignited-duration histogram (bin width " +
              format_micro_minimal(h.width_micro) + " s)";
    t.headers = {"Range"};
    std::size_t nbins = 0;
    for (const auto& [name, bins] : h.groups) {
        t.headers.push_back(name);
        nbins = std::max(nbins, bins.size());
    }
    for (std::size_t b = 0; b < nbins; ++b) {
        std::vector<std::string> row;
        long long lo = static_cast<long long>(b) * h.width_micro;
        long long hi = lo + h.width_micro;
        row.push_back("[" + format_micro_minimal(lo) + ", " +
                      format_micro_minimal(hi) + ")");
        for (const auto& [name, bins] : h.groups)
            row.push_back(std::to_string(b < bins.size() ? bins[b] : 0));
        t.rows.push_back(std::move(row));
    }
    return t;
}

TextTable table_io_matrix(const IoMatrix& m) {
    TextTable t;
    t.title = "Excitatory link counts (rows = source)";
    t.headers = {"Source", "V", "C", "M"};
    const char* names[3] = {"V", "C", "M"};
    for (std::size_t r = 0; r < 3; ++r) {
        std::vector<std::string> row = {names[r]};
        for (std::size_t c = 0; c < 3; ++c)
            row.push_back(std::to_string(m.n[r][c]));
        t.rows.push_back(std::move(row));
    }
    t.rows.push_back({"total", "", "", std::to_string(m.total)});
    return t;
}

} // namespace tacap
