// Validation rule engine.
#include "tacap/validate.hpp"

#include <algorithm>
#include <set>

#include "tacap/decimal.hpp"

namespace tacap {
namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
}

std::string fmt_s(long long micro) { return format_micro_minimal(micro); }

struct Engine {
    const Corpus& c;
    const ValidateConfig& cfg;
    std::vector<Finding> findings;

    // Applies the per-rule override; nullopt drops the finding.
    std::optional<Severity> severity_for(int rule, Severity built_in) const {
        switch (cfg.mode(rule)) {
            case RuleMode::Off:     return std::nullopt;
            case RuleMode::Warning: return Severity::Warning;
            case RuleMode::Error:   return Severity::Error;
            case RuleMode::Default: return built_in;
        }
        return built_in;
    }

    void emit(int rule, Severity built_in, const std::string& locus,
              std::string code, std::string message) {
        auto sev = severity_for(rule, built_in);
        if (!sev) return;
        findings.push_back({*sev, "r" + std::to_string(rule), locus,
                            std::move(code), std::move(message)});
    }

    // r1: thresh <= igfat <= igmax <= potn, every level positive.
    void rule1() {
        for (const CellAssembly& ca : c.cas) {
            const ScamParams& p = ca.p;
            struct Level { const char* name; Dec v; };
            for (Level l : {Level{"potn", p.potn}, Level{"thresh", p.thresh},
                            Level{"igmax", p.igmax}, Level{"igfat", p.igfat}}) {
                if (l.v.micro <= 0)
                    emit(1, Severity::Error, ca.id, "NONPOSITIVE_LEVEL",
                         std::string(l.name) + " must be positive, got " +
                             format_dec(l.v));
            }
            auto order = [&](const char* lo_n, Dec lo, const char* hi_n, Dec hi) {
                if (lo.micro > hi.micro)
                    emit(1, Severity::Error, ca.id, "LEVEL_ORDER",
                         std::string(lo_n) + " (" + format_dec(lo) +
                             ") exceeds " + hi_n + " (" + format_dec(hi) + ")");
            };
            order("thresh", p.thresh, "igfat", p.igfat);
            order("igfat", p.igfat, "igmax", p.igmax);
            order("igmax", p.igmax, "potn", p.potn);
        }
    }

    // r2: p50 <= igtig <= igtex <= d50 over present fields; igtex and d50
    // must be present or absent together.
    void rule2() {
        for (const CellAssembly& ca : c.cas) {
            const ScamParams& p = ca.p;
            if (p.igtex.has_value() != p.d50.has_value()) {
                emit(2, Severity::Error, ca.id, "PERSISTENCE_MISMATCH",
                     std::string(p.igtex ? "igtex" : "d50") +
                         " is given without the other extinction time");
                continue;
            }
            auto order = [&](const char* lo_n, Dec lo, const char* hi_n, Dec hi) {
                if (lo.micro > hi.micro)
                    emit(2, Severity::Error, ca.id, "TIME_ORDER",
                         std::string(lo_n) + " (" + format_dec(lo) +
                             ") exceeds " + hi_n + " (" + format_dec(hi) + ")");
            };
            order("p50", p.p50, "igtig", p.igtig);
            if (p.igtex) {
                order("igtig", p.igtig, "igtex", *p.igtex);
                order("igtex", *p.igtex, "d50", *p.d50);
            }
        }
    }

    // r3: excitatory links must close: both endpoints defined and both
    // sides declared. Endpoints listed in known_missing downgrade the
    // dangling finding to a warning.
    void rule3() {
        auto missing_ids = c.known_missing_ids();
        std::set<std::string> known_missing(missing_ids.begin(), missing_ids.end());
        for (const Edge& e : c.edges) {
            if (e.kind != EdgeKind::Excite) continue;
            bool src_ok = c.find(e.source) != nullptr;
            bool tgt_ok = c.find(e.target) != nullptr;
            if (!src_ok || !tgt_ok) {
                const std::string& missing = src_ok ? e.target : e.source;
                Severity built_in = known_missing.count(missing)
                                        ? Severity::Warning
                                        : Severity::Error;
                // Dangling edges are declared only by the defined endpoint.
                std::string locus = e.decls.empty() ? (src_ok ? e.source : e.target)
                                                    : e.decls.front().ca_id;
                std::string where = src_ok ? "OUTPUTS target" : "INPUTS source";
                emit(3, built_in, locus, "DANGLING",
                     where + " " + missing + " is not defined in the corpus" +
                         (built_in == Severity::Warning
                              ? " (listed in known_missing)"
                              : ""));
                continue;
            }
            bool at_source = false, at_target = false;
            for (const EdgeDecl& d : e.decls) {
                if (d.side == IoSide::Outputs && d.ca_id == e.source) at_source = true;
                if (d.side == IoSide::Inputs && d.ca_id == e.target) at_target = true;
            }
            if (at_source != at_target) {
                std::string declared = at_source ? e.source + " OUTPUTS"
                                                 : e.target + " INPUTS";
                std::string locus = at_source ? e.source : e.target;
                emit(3, Severity::Warning, locus, "ONE_SIDED",
                     "link " + e.source + " -> " + e.target +
                         " is declared only at " + declared +
                         "; the mirrored declaration is missing");
            }
        }
    }

    // r4: the source's active window [igtig, decay end or horizon] must
    // touch the target's priming window widened by the tolerance.
    void rule4() {
        long long horizon = c.end_time_micro();
        long long tol = cfg.r4_tolerance_micro;
        for (const Edge& e : c.edges) {
            if (e.kind != EdgeKind::Excite) continue;
            const CellAssembly* a = c.find(e.source);
            const CellAssembly* b = c.find(e.target);
            if (!a || !b) continue;
            long long a_lo = a->p.igtig.micro;
            long long a_hi = decay_end_micro(*a).value_or(horizon);
            long long b_lo = prime_start_micro(*b) - tol;
            long long b_hi = b->p.igtig.micro + tol;
            if (a_lo <= b_hi && b_lo <= a_hi) continue;  // boundaries count
            long long gap = a_hi < b_lo ? b_lo - a_hi : a_lo - b_hi;
            emit(4, Severity::Warning, b->id, "NO_CAUSAL_OVERLAP",
                 "link " + a->id + " -> " + b->id + ": source active [" +
                     fmt_s(a_lo) + ", " + fmt_s(a_hi) +
                     "] s misses target priming [" + fmt_s(b_lo) + ", " +
                     fmt_s(b_hi) + "] s by " + fmt_s(gap) + " s");
        }
    }

    // r5: checkpoints must name a known assembly whose ignition time is
    // within tolerance of the expected time.
    void rule5() {
        for (const Checkpoint& cp : c.checkpoints) {
            const CellAssembly* ca = c.find(cp.ca_id);
            if (!ca) {
                emit(5, Severity::Error, cp.ca_id, "UNKNOWN_CA",
                     "checkpoint " + cp.name + " names unknown assembly " +
                         cp.ca_id);
                continue;
            }
            long long diff = ca->p.igtig.micro - cp.expected_time.micro;
            if (diff < 0) diff = -diff;
            if (diff > cp.tolerance.micro)
                emit(5, Severity::Error, cp.ca_id, "CHECKPOINT_MISS",
                     "checkpoint " + cp.name + ": ignition at " +
                         format_dec(ca->p.igtig) + " s, expected " +
                         format_dec(cp.expected_time) + " s +/- " +
                         format_dec(cp.tolerance) + " s");
        }
    }

    // r6: ignition times must be non-decreasing in table order.
    void rule6() {
        for (std::size_t i = 1; i < c.cas.size(); ++i) {
            const CellAssembly& prev = c.cas[i - 1];
            const CellAssembly& cur = c.cas[i];
            if (cur.p.igtig.micro < prev.p.igtig.micro)
                emit(6, Severity::Warning, cur.id, "IGNITION_ORDER",
                     cur.id + " ignites at " + format_dec(cur.p.igtig) +
                         " s, before preceding " + prev.id + " at " +
                         format_dec(prev.p.igtig) + " s");
        }
    }
};

} // namespace

ConfigParse parse_validate_config(std::string_view text) {
    ValidateConfig cfg;
    int line_no = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t nl = text.find('\n', start);
        std::string_view line = nl == std::string_view::npos
                                    ? text.substr(start)
                                    : text.substr(start, nl - start);
        start = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        std::string_view body = trim(line);
        if (body.empty() || body.front() == '#') continue;
        std::size_t eq = body.find('=');
        if (eq == std::string_view::npos)
            return {std::nullopt, "config line " + std::to_string(line_no) +
                                      ": expected key = value"};
        std::string key(trim(body.substr(0, eq)));
        std::string value(trim(body.substr(eq + 1)));
        if (key == "r4.tolerance_s") {
            auto d = parse_dec(value);
            if (!d || d->micro < 0)
                return {std::nullopt,
                        "config line " + std::to_string(line_no) +
                            ": r4.tolerance_s needs a non-negative number"};
            cfg.r4_tolerance_micro = d->micro;
            continue;
        }
        if (key.size() == 2 && key[0] == 'r' && key[1] >= '1' && key[1] <= '6') {
            RuleMode mode;
            if (value == "off") mode = RuleMode::Off;
            else if (value == "warning") mode = RuleMode::Warning;
            else if (value == "error") mode = RuleMode::Error;
            else
                return {std::nullopt, "config line " + std::to_string(line_no) +
                                          ": " + key +
                                          " must be off, warning, or error"};
            cfg.rules[key[1] - '1'] = mode;
            continue;
        }
        return {std::nullopt,
                "config line " + std::to_string(line_no) + ": unknown key " + key};
    }
    return {cfg, ""};
}

bool ValidationReport::has_error() const {
    return std::any_of(findings.begin(), findings.end(), [](const Finding& f) {
        return f.severity == Severity::Error;
    });
}

ValidationReport validate_corpus(const Corpus& corpus, const ValidateConfig& config) {
    Engine eng{corpus, config, {}};
    eng.rule1();
    eng.rule2();
    eng.rule3();
    eng.rule4();
    eng.rule5();
    eng.rule6();
    std::stable_sort(eng.findings.begin(), eng.findings.end(),
                     [&](const Finding& a, const Finding& b) {
                         int sa = corpus.seq_of(a.locus);
                         int sb = corpus.seq_of(b.locus);
                         if (sa != sb) return sa < sb;
                         return a.rule < b.rule;
                     });
    return {std::move(eng.findings)};
}

std::string findings_tsv(const std::vector<Finding>& findings) {
    std::string out;
    for (const Finding& f : findings) {
        out += f.severity == Severity::Error ? "error" : "warning";
        out += '\t';
        out += f.rule;
        out += '\t';
        out += f.locus.empty() ? "-" : f.locus;
        out += '\t';
        out += f.code + ": " + f.message + "\n";
    }
    return out;
}

std::string findings_text(const std::vector<Finding>& findings) {
    std::string out;
    for (const Finding& f : findings) {
        out += f.severity == Severity::Error ? "error " : "warning ";
        out += f.rule + " " + (f.locus.empty() ? "-" : f.locus) + ": " +
               f.code + ": " + f.message + "\n";
    }
    return out;
}

} // namespace tacap
