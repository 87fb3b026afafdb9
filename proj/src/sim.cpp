// Lifecycle simulation engines.
#include "tacap/sim.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>

#include "tacap/decimal.hpp"

namespace tacap {
namespace {

double sec(long long micro) { return static_cast<double>(micro) / 1e6; }

std::string fmt3(long long micro) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", sec(micro));
    return buf;
}

std::string fmt3d(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    return buf;
}

// Power-shape pivot: the point a (below the rise) or b (above the fall)
// chosen so the half-level anchor lands exactly on p50 / d50:
//   s = 2^(-1/e), a = (half - end*s) / (1 - s).
// Monotone S-curve through (0,0), (1/2,1/2), and (1,1) for every exponent
// e > 0: g(u) = u^e / (u^e + (1-u)^e). Exponent 1 is the identity (linear
// ramp); larger exponents flatten the ends, smaller ones steepen them. Using
// it on the normalized span keeps the half-level anchors at p50/d50 exact
// while still hitting zero and full level at the span boundaries.
double shape_blend(double u, double e) {
    if (u <= 0.0) return 0.0;
    if (u >= 1.0) return 1.0;
    double num = std::pow(u, e);
    return num / (num + std::pow(1.0 - u, e));
}

} // namespace

const char* phase_name(Phase p) {
    switch (p) {
        case Phase::Quiescent: return "quiescent";
        case Phase::Priming:   return "priming";
        case Phase::Ignited:   return "ignited";
        case Phase::Decaying:  return "decaying";
    }
    return "?";
}

Phase phase_at(const CellAssembly& ca, long long t, long long end_time_micro) {
    (void)end_time_micro;
    long long ig = ca.p.igtig.micro;
    if (t == ig) return Phase::Ignited;  // ignition instant wins every tie
    long long ps = prime_start_micro(ca);
    if (t < ps) return Phase::Quiescent;
    if (t < ig) return Phase::Priming;
    if (ca.p.persistent() || !ca.p.igtex || !ca.p.d50) return Phase::Ignited;
    long long ex = ca.p.igtex->micro;
    long long de = 2 * ca.p.d50->micro - ex;
    if (de == ex)  // zero-width decay: collapse at igtex
        return t >= ex ? Phase::Quiescent : Phase::Ignited;
    if (t <= ex) return Phase::Ignited;
    if (t <= de) return Phase::Decaying;
    return Phase::Quiescent;
}

double level_at(const CellAssembly& ca, long long t, long long end_time_micro,
                const Shape& shape) {
    const ScamParams& p = ca.p;
    long long ig = p.igtig.micro;
    switch (phase_at(ca, t, end_time_micro)) {
        case Phase::Quiescent:
            return 0.0;
        case Phase::Priming: {
            long long ps = prime_start_micro(ca);
            double thresh = static_cast<double>(p.thresh.micro) / 1e6;
            double u = static_cast<double>(t - ps) / static_cast<double>(ig - ps);
            if (shape.linear()) return thresh * u;
            return thresh * shape_blend(u, shape.exponent);
        }
        case Phase::Ignited: {
            double igmax = static_cast<double>(p.igmax.micro) / 1e6;
            double igfat = static_cast<double>(p.igfat.micro) / 1e6;
            if (t == ig) return igmax;
            long long span_end =
                p.igtex ? p.igtex->micro : end_time_micro;  // persistent: horizon
            if (span_end <= ig) return igmax;
            if (t >= span_end) return igfat;  // persistent hold past the horizon
            return igmax + (igfat - igmax) * static_cast<double>(t - ig) /
                               static_cast<double>(span_end - ig);
        }
        case Phase::Decaying: {
            long long ex = p.igtex->micro;
            long long de = 2 * p.d50->micro - ex;
            double igfat = static_cast<double>(p.igfat.micro) / 1e6;
            double v = static_cast<double>(de - t) / static_cast<double>(de - ex);
            if (shape.linear()) return igfat * v;
            return igfat * shape_blend(v, shape.exponent);
        }
    }
    return 0.0;
}

// ─── Scripted playback ───────────────────────────────────────────────────

long long sim_grid_start(const Corpus& corpus) {
    if (corpus.cas.empty()) return 0;
    long long t0 = prime_start_micro(corpus.cas.front());
    for (const CellAssembly& ca : corpus.cas)
        t0 = std::min(t0, prime_start_micro(ca));
    return t0;
}

ScriptedSim simulate_scripted(const Corpus& corpus, long long dt_micro,
                              const Shape& shape) {
    ScriptedSim sim;
    sim.dt_micro = dt_micro;
    if (corpus.cas.empty() || dt_micro <= 0) return sim;
    sim.t0_micro = sim_grid_start(corpus);
    long long horizon = corpus.end_time_micro();
    long long span = horizon - sim.t0_micro;
    sim.points = span >= 0 ? static_cast<int>(span / dt_micro) + 1 : 1;

    for (const CellAssembly& ca : corpus.cas) {
        CaTrace tr;
        tr.id = ca.id;
        tr.t0_micro = sim.t0_micro;
        tr.dt_micro = dt_micro;
        tr.n.reserve(static_cast<std::size_t>(sim.points));
        tr.phase.reserve(static_cast<std::size_t>(sim.points));
        for (int k = 0; k < sim.points; ++k) {
            long long t = sim.t0_micro + static_cast<long long>(k) * dt_micro;
            tr.phase.push_back(phase_at(ca, t, horizon));
            tr.n.push_back(level_at(ca, t, horizon, shape));
        }
        sim.traces.push_back(std::move(tr));

        sim.events.push_back({prime_start_micro(ca), ca.seq, ca.id, "prime_start"});
        sim.events.push_back({ca.p.igtig.micro, ca.seq, ca.id, "ignition"});
        if (ca.p.igtex && ca.p.d50) {
            sim.events.push_back({ca.p.igtex->micro, ca.seq, ca.id, "extinction"});
            sim.events.push_back(
                {2 * ca.p.d50->micro - ca.p.igtex->micro, ca.seq, ca.id, "decay_end"});
        }
    }
    std::stable_sort(sim.events.begin(), sim.events.end(),
                     [](const SimEvent& a, const SimEvent& b) {
                         if (a.t_micro != b.t_micro) return a.t_micro < b.t_micro;
                         return a.seq < b.seq;
                     });
    return sim;
}

// ─── Causal replay ───────────────────────────────────────────────────────

CausalSim simulate_causal(const Corpus& corpus, long long dt_micro,
                          const CausalOptions& opts) {
    CausalSim out;
    std::size_t n = corpus.cas.size();
    if (n == 0 || dt_micro <= 0) return out;

    long long t0 = sim_grid_start(corpus);
    long long horizon = corpus.end_time_micro();
    long long steps_ll = horizon > t0 ? (horizon - t0) / dt_micro : 0;
    int steps = static_cast<int>(steps_ll);

    // Static per-assembly data.
    std::vector<long long> ps(n), width(n), rec_ex(n), decay_w(n);
    std::vector<bool> persistent(n), has_env(n, false);
    std::map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < n; ++i) {
        const CellAssembly& ca = corpus.cas[i];
        index[ca.id] = i;
        ps[i] = prime_start_micro(ca);
        width[i] = ca.p.igtig.micro - ps[i];
        persistent[i] = !ca.p.igtex || !ca.p.d50;
        rec_ex[i] = persistent[i] ? 0 : ca.p.igtex->micro;
        decay_w[i] = persistent[i] ? 0 : 2 * (ca.p.d50->micro - ca.p.igtex->micro);
    }
    std::vector<std::vector<std::size_t>> excite_in(n), inhibit_out(n);
    for (const Edge& e : corpus.edges) {
        if (e.kind == EdgeKind::EnvIn) {
            auto it = index.find(e.target);
            if (it != index.end()) has_env[it->second] = true;
            continue;
        }
        auto si = index.find(e.source);
        auto ti = index.find(e.target);
        if (si == index.end() || ti == index.end()) continue;
        if (e.kind == EdgeKind::Excite) excite_in[ti->second].push_back(si->second);
        else if (e.kind == EdgeKind::Inhibit) inhibit_out[si->second].push_back(ti->second);
    }

    // Dynamic state.
    constexpr long long kNever = (1LL << 62);
    std::vector<long long> ig_at(n, kNever);   // causal ignition time
    std::vector<long long> ext_at(n, kNever);  // causal extinction time
    std::vector<long long> accrued(n, 0);

    auto driving = [&](std::size_t i, long long t) {
        // Ignited or Decaying at t (causally).
        if (ig_at[i] > t) return false;
        if (persistent[i]) return ext_at[i] == kNever || t <= ext_at[i] + decay_w[i];
        return t <= ext_at[i] + decay_w[i];
    };

    std::vector<std::size_t> pending;
    auto ignite = [&](std::size_t i, long long t) {
        ig_at[i] = t;
        if (!persistent[i]) ext_at[i] = std::max(t, rec_ex[i]);
        if (opts.calibrate) return;
        for (std::size_t j : inhibit_out[i])
            // Extinguish the target if it is Ignited right now (a persistent
            // target's extinction slot still holds kNever, so this covers it).
            if (ig_at[j] <= t && t <= ext_at[j]) ext_at[j] = t;
    };

    std::vector<bool> driven(n);
    for (int k = 0; k <= steps; ++k) {
        long long t = t0 + static_cast<long long>(k) * dt_micro;
        for (std::size_t i = 0; i < n; ++i) {
            if (ig_at[i] != kNever) { driven[i] = false; continue; }
            bool d = opts.calibrate || has_env[i];
            if (!d)
                for (std::size_t s : excite_in[i])
                    if (driving(s, t)) { d = true; break; }
            driven[i] = d;
        }
        // Zero-width priming ignites at the first driven grid point >= start.
        for (std::size_t i = 0; i < n; ++i)
            if (ig_at[i] == kNever && width[i] == 0 && t >= ps[i] && driven[i])
                ignite(i, t);
        if (k == steps) break;
        // Accrue over the step [t, t+dt); ignition lands on the next point.
        for (std::size_t i = 0; i < n; ++i) {
            if (ig_at[i] != kNever || width[i] == 0) continue;
            if (!driven[i] || t < ps[i]) continue;
            accrued[i] += dt_micro;
            if (accrued[i] >= width[i]) ignite(i, t + dt_micro);
        }
    }

    for (std::size_t i = 0; i < n; ++i) {
        const CellAssembly& ca = corpus.cas[i];
        CausalRow row;
        row.ca = ca.id;
        row.recorded_micro = ca.p.igtig.micro;
        if (ig_at[i] != kNever) row.predicted_micro = ig_at[i];
        if (ext_at[i] != kNever) row.extinction_micro = ext_at[i];
        out.rows.push_back(row);
        if (!row.predicted_micro) {
            out.findings.push_back(
                {"UNREACHABLE_CA", ca.id,
                 ca.id + " never ignites: no driven path reaches it"});
            continue;
        }
        long long res = *row.predicted_micro - row.recorded_micro;
        long long mag = res < 0 ? -res : res;
        if (mag > opts.max_residual_micro)
            out.findings.push_back(
                {"HIGH_RESIDUAL", ca.id,
                 ca.id + " predicted ignition " + fmt3(*row.predicted_micro) +
                     " s vs recorded " + fmt3(row.recorded_micro) +
                     " s (residual " + fmt3(res) + " s)"});
    }
    return out;
}

// ─── CSV output ──────────────────────────────────────────────────────────

std::string trace_csv(const ScriptedSim& sim) {
    std::string out = "t";
    for (const CaTrace& tr : sim.traces) out += "," + tr.id;
    out += "\n";
    for (int k = 0; k < sim.points; ++k) {
        out += fmt3(sim.t0_micro + static_cast<long long>(k) * sim.dt_micro);
        for (const CaTrace& tr : sim.traces)
            out += "," + fmt3d(tr.n[static_cast<std::size_t>(k)]);
        out += "\n";
    }
    return out;
}

std::string events_csv(const ScriptedSim& sim) {
    std::string out = "t,ca,event\n";
    for (const SimEvent& e : sim.events)
        out += fmt3(e.t_micro) + "," + e.ca + "," + e.event + "\n";
    return out;
}

std::string residuals_csv(const CausalSim& sim) {
    std::string out = "ca,predicted_igtig,recorded_igtig,residual\n";
    for (const CausalRow& r : sim.rows) {
        out += r.ca + ",";
        if (r.predicted_micro) out += fmt3(*r.predicted_micro);
        out += "," + fmt3(r.recorded_micro) + ",";
        if (r.predicted_micro) out += fmt3(*r.predicted_micro - r.recorded_micro);
        out += "\n";
    }
    return out;
}

} // namespace tacap
