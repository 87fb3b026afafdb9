// SVG and JSON rendering. All numeric output is fixed-format so identical
// inputs produce byte-identical documents.
#include "tacap/render.hpp"

#include <algorithm>
#include <cstdio>
#include <map>

#include "tacap/decimal.hpp"

namespace tacap {
namespace {

std::string px(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.1f", v);
    return buf;
}

std::string f3(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    return buf;
}

double sec(long long micro) { return static_cast<double>(micro) / 1e6; }

} // namespace

std::string xml_escape(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    for (char c : text) {
        switch (c) {
            case '&':  out += "&amp;"; break;
            case '<':  out += "&lt;"; break;
            case '>':  out += "&gt;"; break;
            case '"':  out += "&quot;"; break;
            case '\'': out += "&apos;"; break;
            default:   out += c;
        }
    }
    return out;
}

// ─── Lifecycle breakpoints ───────────────────────────────────────────────

std::vector<PointMicro> scam_breakpoints(const CellAssembly& ca,
                                         long long end_time_micro) {
    const ScamParams& p = ca.p;
    std::vector<PointMicro> pts;
    pts.push_back({prime_start_micro(ca), 0});
    pts.push_back({p.igtig.micro, p.thresh.micro});
    pts.push_back({p.igtig.micro, p.igmax.micro});
    if (p.igtex && p.d50) {
        pts.push_back({p.igtex->micro, p.igfat.micro});
        pts.push_back({2 * p.d50->micro - p.igtex->micro, 0});
    } else {
        pts.push_back({end_time_micro, p.igfat.micro});
    }
    return pts;
}

std::vector<PointMicro> scam_breakpoints_means(const GroupStats& stats) {
    auto m = stats.mean_tenths();  // tenths; *100000 -> micro
    std::vector<NormRow> rows = normalized_times_rows({stats});
    const auto& t = rows.front().tenths;
    auto mk = [](long long tenths) { return tenths * 100000; };
    return {{0, 0},
            {mk(t[1]), mk(m[1])},   // ignite at Thresh, then jump
            {mk(t[1]), mk(m[2])},   // to IgMax
            {mk(t[2]), mk(m[3])},   // extinguish at IgFat
            {mk(t[3]), 0}};
}

ScamRender scam_render_for_ca(const CellAssembly& ca, long long end_time_micro) {
    ScamRender r;
    r.title = ca.id;
    r.points = scam_breakpoints(ca, end_time_micro);
    r.level_guides = {{"Thresh", ca.p.thresh.micro},
                      {"IgFat", ca.p.igfat.micro},
                      {"IgMax", ca.p.igmax.micro},
                      {"PotN", ca.p.potn.micro}};
    r.time_guides = {{"P50%", ca.p.p50.micro}, {"IgTIg", ca.p.igtig.micro}};
    if (ca.p.igtex && ca.p.d50) {
        r.time_guides.emplace_back("IgTEx", ca.p.igtex->micro);
        r.time_guides.emplace_back("D50%", ca.p.d50->micro);
    }
    return r;
}

ScamRender scam_render_for_means(const GroupStats& stats) {
    ScamRender r;
    r.title = stats.name;
    r.points = scam_breakpoints_means(stats);
    auto m = stats.mean_tenths();
    auto mk = [](long long tenths) { return tenths * 100000; };
    r.level_guides = {{"Thresh", mk(m[1])},
                      {"IgFat", mk(m[3])},
                      {"IgMax", mk(m[2])},
                      {"PotN", mk(m[0])}};
    std::vector<NormRow> rows = normalized_times_rows({stats});
    const auto& t = rows.front().tenths;
    r.time_guides = {{"start", 0},
                     {"ignite", mk(t[1])},
                     {"extinguish", mk(t[2])},
                     {"end", mk(t[3])}};
    return r;
}

std::string render_scam_svg(const ScamRender& r) {
    constexpr double kW = 640, kH = 420;
    constexpr double kL = 70, kR = 20, kT = 30, kB = 56;

    long long tmin = 0, tmax = 0, nmax = 0;
    bool first = true;
    auto see_t = [&](long long t) {
        if (first) tmin = tmax = t;
        tmin = std::min(tmin, t);
        tmax = std::max(tmax, t);
        first = false;
    };
    for (const PointMicro& p : r.points) {
        see_t(p.t);
        nmax = std::max(nmax, p.n);
    }
    for (const auto& [name, t] : r.time_guides) see_t(t);
    for (const auto& [name, n] : r.level_guides) nmax = std::max(nmax, n);
    if (first) { tmin = 0; tmax = 1000000; }
    if (tmax == tmin) tmax = tmin + 1000000;
    if (nmax <= 0) nmax = 1000000;

    double span_t = sec(tmax - tmin);
    double pad = span_t * 0.04;
    double x0 = sec(tmin) - pad, x1 = sec(tmax) + pad;
    double y1 = sec(nmax) * 1.08;

    auto X = [&](double t) { return kL + (t - x0) / (x1 - x0) * (kW - kL - kR); };
    auto Y = [&](double n) { return kH - kB - n / y1 * (kH - kT - kB); };

    std::string s;
    s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"420\" "
         "viewBox=\"0 0 640 420\" font-family=\"sans-serif\">\n";
    s += "<title>" + xml_escape(r.title) + "</title>\n";

    // Guides first so the polyline draws on top.
    for (const auto& [name, n] : r.level_guides) {
        double y = Y(sec(n));
        s += "<line class=\"guide\" x1=\"" + px(kL) + "\" y1=\"" + px(y) +
             "\" x2=\"" + px(kW - kR) + "\" y2=\"" + px(y) +
             "\" stroke=\"#999999\" stroke-dasharray=\"4 3\"/>\n";
        s += "<text x=\"" + px(kL - 4) + "\" y=\"" + px(y + 3) +
             "\" font-size=\"9\" text-anchor=\"end\" fill=\"#444444\">" +
             xml_escape(name) + " " + format_micro_minimal(n) + "</text>\n";
    }
    for (const auto& [name, t] : r.time_guides) {
        double x = X(sec(t));
        s += "<line class=\"guide\" x1=\"" + px(x) + "\" y1=\"" + px(kT) +
             "\" x2=\"" + px(x) + "\" y2=\"" + px(kH - kB) +
             "\" stroke=\"#999999\" stroke-dasharray=\"4 3\"/>\n";
        s += "<text x=\"" + px(x) + "\" y=\"" + px(kT - 6) +
             "\" font-size=\"9\" text-anchor=\"middle\" fill=\"#444444\">" +
             xml_escape(name) + "</text>\n";
        s += "<text x=\"" + px(x) + "\" y=\"" + px(kH - kB + 12) +
             "\" font-size=\"9\" text-anchor=\"middle\" fill=\"#444444\">" +
             format_micro_minimal(t) + "</text>\n";
    }

    // Axes.
    s += "<line x1=\"" + px(kL) + "\" y1=\"" + px(kT) + "\" x2=\"" + px(kL) +
         "\" y2=\"" + px(kH - kB) + "\" stroke=\"#000000\"/>\n";
    s += "<line x1=\"" + px(kL) + "\" y1=\"" + px(Y(0)) + "\" x2=\"" +
         px(kW - kR) + "\" y2=\"" + px(Y(0)) + "\" stroke=\"#000000\"/>\n";
    s += "<text x=\"" + px((kL + kW - kR) / 2) + "\" y=\"" + px(kH - 10) +
         "\" font-size=\"12\" text-anchor=\"middle\">time (s)</text>\n";
    s += "<text x=\"14\" y=\"" + px((kT + kH - kB) / 2) +
         "\" font-size=\"12\" text-anchor=\"middle\" transform=\"rotate(-90 14 " +
         px((kT + kH - kB) / 2) + ")\">kiloneurons</text>\n";

    // Lifecycle polyline.
    s += "<polyline fill=\"none\" stroke=\"#1f6fb4\" stroke-width=\"2\" points=\"";
    for (std::size_t i = 0; i < r.points.size(); ++i) {
        if (i) s += " ";
        s += px(X(sec(r.points[i].t))) + "," + px(Y(sec(r.points[i].n)));
    }
    s += "\"/>\n</svg>\n";
    return s;
}

// ─── Corpus diagram ──────────────────────────────────────────────────────

namespace {

int caar_column(CaType t) {
    switch (t) {
        case CaType::Visual:       return 0;
        case CaType::Touch:        return 1;
        case CaType::Kinaesthetic: return 2;
        case CaType::Cognitive:    return 3;
        case CaType::Motor:        return 4;
    }
    return 3;
}

struct Box {
    double left, top, w, h;
    double right() const { return left + w; }
    double bottom() const { return top + h; }
    double cx() const { return left + w / 2; }
    double cy() const { return top + h / 2; }
};

} // namespace

std::string render_caar_svg(const Corpus& corpus, const CaarOptions& opts) {
    constexpr double kColW = 150, kBoxW = 96, kLeft = 70, kTop = 44;
    constexpr double kPxPerS = 48, kMinH = 12, kBottom = 30;
    const char* kColNames[5] = {"Visual", "Touch", "Kinaesthetic", "Cognitive",
                                "Motor"};

    long long horizon = corpus.end_time_micro();
    long long tmin = 0, tmax = 1000000;
    if (!corpus.cas.empty()) {
        tmin = corpus.cas.front().p.igtig.micro;
        tmax = tmin;
        for (const CellAssembly& ca : corpus.cas) {
            tmin = std::min(tmin, ca.p.igtig.micro);
            long long end = ca.p.igtex ? ca.p.igtex->micro : horizon;
            tmax = std::max(tmax, std::max(end, ca.p.igtig.micro));
        }
        if (tmax == tmin) tmax = tmin + 1000000;
    }
    auto Y = [&](long long t) { return kTop + sec(t - tmin) * kPxPerS; };
    double height = Y(tmax) + kBottom;
    double width = kLeft + 5 * kColW + 20;

    std::map<std::string, Box> pos;
    for (const CellAssembly& ca : corpus.cas) {
        double x = kLeft + caar_column(ca.type) * kColW + (kColW - kBoxW) / 2;
        long long end = ca.p.igtex ? ca.p.igtex->micro : horizon;
        double h = std::max(kMinH, sec(end - ca.p.igtig.micro) * kPxPerS);
        pos[ca.id] = {x, Y(ca.p.igtig.micro), kBoxW, h};
    }
    // Placeholder boxes for undefined link endpoints, anchored beside the
    // defined endpoint that references them.
    std::vector<std::string> missing_order;
    if (opts.show_dangling) {
        for (const Edge& e : corpus.edges) {
            if (e.kind != EdgeKind::Excite && e.kind != EdgeKind::Inhibit) continue;
            for (const std::string* endp : {&e.source, &e.target}) {
                if (corpus.find(*endp) || pos.count(*endp)) continue;
                const std::string& other = endp == &e.source ? e.target : e.source;
                auto it = pos.find(other);
                double top = it != pos.end() ? it->second.top : kTop;
                auto type = ca_type_from_id(*endp);
                int col = type ? caar_column(*type) : 3;
                double x = kLeft + col * kColW + (kColW - kBoxW) / 2;
                pos[*endp] = {x, top, kBoxW, kMinH};
                missing_order.push_back(*endp);
            }
        }
    }

    std::string s;
    s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + px(width) +
         "\" height=\"" + px(height) + "\" viewBox=\"0 0 " + px(width) + " " +
         px(height) + "\" font-family=\"sans-serif\">\n";
    s += "<title>assembly relationships</title>\n";
    s += "<defs>\n";
    struct Marker { const char* id; const char* color; };
    for (Marker m : {Marker{"arr-ex", "#333333"}, Marker{"arr-in", "#cc3333"},
                     Marker{"arr-env", "#2a7d2a"}, Marker{"arr-mot", "#7d2a7d"}}) {
        s += std::string("<marker id=\"") + m.id +
             "\" markerWidth=\"8\" markerHeight=\"8\" refX=\"7\" refY=\"4\" "
             "orient=\"auto\"><path d=\"M0,0 L8,4 L0,8 z\" fill=\"" + m.color +
             "\"/></marker>\n";
    }
    s += "</defs>\n";

    for (int c = 0; c < 5; ++c)
        s += "<text x=\"" + px(kLeft + c * kColW + kColW / 2) +
             "\" y=\"20\" font-size=\"12\" text-anchor=\"middle\">" +
             kColNames[c] + "</text>\n";

    // Time axis with 1-second ticks.
    s += "<line x1=\"" + px(kLeft - 14) + "\" y1=\"" + px(Y(tmin)) + "\" x2=\"" +
         px(kLeft - 14) + "\" y2=\"" + px(Y(tmax)) + "\" stroke=\"#000000\"/>\n";
    for (long long t = ((tmin + 999999) / 1000000) * 1000000; t <= tmax;
         t += 1000000) {
        s += "<line x1=\"" + px(kLeft - 18) + "\" y1=\"" + px(Y(t)) + "\" x2=\"" +
             px(kLeft - 14) + "\" y2=\"" + px(Y(t)) + "\" stroke=\"#000000\"/>\n";
        s += "<text x=\"" + px(kLeft - 22) + "\" y=\"" + px(Y(t) + 3) +
             "\" font-size=\"9\" text-anchor=\"end\">" + format_micro_minimal(t) +
             "</text>\n";
    }

    // Boxes.
    const char* fill_by_type[5] = {"#fef7e0", "#e8f0fe", "#e6f4ea", "#f3e8fd",
                                   "#fce8e6"};  // C V T K M by CaType order
    for (const CellAssembly& ca : corpus.cas) {
        const Box& b = pos.at(ca.id);
        s += "<rect class=\"ca\" x=\"" + px(b.left) + "\" y=\"" + px(b.top) +
             "\" width=\"" + px(b.w) + "\" height=\"" + px(b.h) +
             "\" rx=\"3\" fill=\"" + fill_by_type[static_cast<int>(ca.type)] +
             "\" stroke=\"#555555\"/>\n";
        s += "<text x=\"" + px(b.cx()) + "\" y=\"" + px(b.top + 10) +
             "\" font-size=\"9\" text-anchor=\"middle\">" + xml_escape(ca.id) +
             "</text>\n";
    }
    for (const std::string& id : missing_order) {
        const Box& b = pos.at(id);
        s += "<rect class=\"placeholder\" x=\"" + px(b.left) + "\" y=\"" +
             px(b.top) + "\" width=\"" + px(b.w) + "\" height=\"" + px(b.h) +
             "\" rx=\"3\" fill=\"none\" stroke=\"#aaaaaa\" "
             "stroke-dasharray=\"3 3\"/>\n";
        s += "<text x=\"" + px(b.cx()) + "\" y=\"" + px(b.top + 10) +
             "\" font-size=\"9\" text-anchor=\"middle\" fill=\"#888888\">" +
             xml_escape(id) + "?</text>\n";
    }

    // Arrows: one per link; stubs for environment inputs and motor outputs.
    std::map<std::string, int> env_count, motor_count;
    for (const Edge& e : corpus.edges) {
        if (e.kind == EdgeKind::EnvIn) {
            auto it = pos.find(e.target);
            if (it == pos.end()) continue;
            const Box& b = it->second;
            double y = b.top + 6 + 8 * env_count[e.target]++;
            s += "<line class=\"env\" x1=\"" + px(b.left - 30) + "\" y1=\"" +
                 px(y) + "\" x2=\"" + px(b.left - 2) + "\" y2=\"" + px(y) +
                 "\" stroke=\"#2a7d2a\" marker-end=\"url(#arr-env)\"><title>" +
                 xml_escape(e.env_text) + "</title></line>\n";
            continue;
        }
        if (e.kind == EdgeKind::MotorOut) {
            auto it = pos.find(e.source);
            if (it == pos.end()) continue;
            const Box& b = it->second;
            double y = b.bottom() - 6 - 8 * motor_count[e.source]++;
            s += "<line class=\"motor\" x1=\"" + px(b.right() + 2) + "\" y1=\"" +
                 px(y) + "\" x2=\"" + px(b.right() + 30) + "\" y2=\"" + px(y) +
                 "\" stroke=\"#7d2a7d\" marker-end=\"url(#arr-mot)\"/>\n";
            continue;
        }
        auto si = pos.find(e.source);
        auto ti = pos.find(e.target);
        if (si == pos.end() || ti == pos.end()) continue;
        const Box& a = si->second;
        const Box& b = ti->second;
        double ax, bx;
        if (b.cx() > a.cx()) { ax = a.right(); bx = b.left; }
        else if (b.cx() < a.cx()) { ax = a.left; bx = b.right(); }
        else { ax = a.right(); bx = b.right(); }
        bool inhib = e.kind == EdgeKind::Inhibit;
        s += std::string("<line class=\"") + (inhib ? "inhibit" : "excite") +
             "\" x1=\"" + px(ax) + "\" y1=\"" + px(a.cy()) + "\" x2=\"" + px(bx) +
             "\" y2=\"" + px(b.cy()) + "\" stroke=\"" +
             (inhib ? "#cc3333" : "#333333") + "\" stroke-opacity=\"0.55\"" +
             (inhib ? " stroke-dasharray=\"5 3\"" : "") + " marker-end=\"url(#" +
             (inhib ? "arr-in" : "arr-ex") + ")\"/>\n";
    }
    s += "</svg>\n";
    return s;
}

// ─── Animation frames ────────────────────────────────────────────────────

FramesResult export_frames(const std::vector<CaTrace>& traces) {
    if (traces.empty()) return {std::string("[]\n"), ""};
    const CaTrace& ref = traces.front();
    for (const CaTrace& tr : traces) {
        if (tr.t0_micro != ref.t0_micro || tr.dt_micro != ref.dt_micro ||
            tr.n.size() != ref.n.size()) {
            return {std::nullopt,
                    "GridMismatch: trace " + tr.id + " has grid start " +
                        format_micro_minimal(tr.t0_micro) + " step " +
                        format_micro_minimal(tr.dt_micro) + " points " +
                        std::to_string(tr.n.size()) + ", expected start " +
                        format_micro_minimal(ref.t0_micro) + " step " +
                        format_micro_minimal(ref.dt_micro) + " points " +
                        std::to_string(ref.n.size())};
        }
    }
    std::string out = "[\n";
    for (std::size_t k = 0; k < ref.n.size(); ++k) {
        long long t = ref.t0_micro + static_cast<long long>(k) * ref.dt_micro;
        if (k) out += ",\n";
        out += "{\"t\": " + format_micro_minimal(t) + ", \"active\": [";
        bool any = false;
        for (const CaTrace& tr : traces) {
            if (!(tr.n[k] > 0.0)) continue;
            if (any) out += ", ";
            any = true;
            out += "{\"id\": \"" + tr.id + "\", \"n\": " + f3(tr.n[k]) +
                   ", \"state\": \"" + phase_name(tr.phase[k]) + "\"}";
        }
        out += "]}";
    }
    out += "\n]\n";
    return {out, ""};
}

} // namespace tacap
