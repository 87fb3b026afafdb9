// Command-line driver: argument handling and the five subcommands.
#include "tacap/cli.hpp"

#include <cstdio>
#include <cstdlib>
#include <ostream>

#include <CLI11.hpp>

#include "tacap/decimal.hpp"
#include "tacap/dsl.hpp"
#include "tacap/metrics.hpp"
#include "tacap/render.hpp"
#include "tacap/sim.hpp"
#include "tacap/util.hpp"
#include "tacap/validate.hpp"

namespace tacap {
namespace {

std::string fmt3(long long micro) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", static_cast<double>(micro) / 1e6);
    return buf;
}

// Reads and parses a corpus (.csv imports the parameter table, anything
// else parses corpus text). Diagnostics go to err prefixed with the path.
std::optional<Corpus> load_corpus(const std::string& path, std::ostream& err,
                                  int& rc) {
    auto text = read_text_file(path);
    if (!text) {
        err << "error: cannot read " << path << "\n";
        rc = kUsageError;
        return std::nullopt;
    }
    bool csv = path.size() >= 4 && path.compare(path.size() - 4, 4, ".csv") == 0;
    ParseResult pr = csv ? import_scam_csv(*text) : parse_corpus(*text);
    for (const Diag& d : pr.diags) err << path << ":" << format_diag(d) << "\n";
    if (!pr.ok()) {
        rc = kDataError;
        return std::nullopt;
    }
    rc = kOk;
    return std::move(pr.corpus);
}

// --config beats the TACAP_CONFIG environment variable; neither is fine.
bool load_config(const std::string& explicit_path, ValidateConfig& cfg,
                 std::ostream& err) {
    std::string path = explicit_path;
    if (path.empty()) {
        const char* env = std::getenv("TACAP_CONFIG");
        if (env && *env) path = env;
    }
    if (path.empty()) return true;
    auto text = read_text_file(path);
    if (!text) {
        err << "error: cannot read config " << path << "\n";
        return false;
    }
    ConfigParse cp = parse_validate_config(*text);
    if (!cp.config) {
        err << "error: " << path << ": " << cp.error << "\n";
        return false;
    }
    cfg = *cp.config;
    return true;
}

bool write_output(const std::string& path, const std::string& content,
                  std::ostream& err) {
    std::string werr;
    if (!write_text_file_atomic(path, content, &werr)) {
        err << "error: " << werr << "\n";
        return false;
    }
    return true;
}

int cmd_validate(const std::string& file, const std::string& config_path,
                 const std::string& format, std::ostream& out,
                 std::ostream& err) {
    ValidateConfig cfg;
    if (!load_config(config_path, cfg, err)) return kUsageError;
    int rc = kOk;
    auto corpus = load_corpus(file, err, rc);
    if (!corpus) return rc;
    ValidationReport report = validate_corpus(*corpus, cfg);
    if (format == "tsv") {
        out << findings_tsv(report.findings);
    } else {
        out << findings_text(report.findings);
        int ne = 0, nw = 0;
        for (const Finding& f : report.findings)
            (f.severity == Severity::Error ? ne : nw) += 1;
        out << ne << " error(s), " << nw << " warning(s)\n";
    }
    return report.has_error() ? kDataError : kOk;
}

int cmd_stats(const std::string& file, const std::string& table,
              const std::string& format, std::ostream& out, std::ostream& err) {
    int rc = kOk;
    auto corpus = load_corpus(file, err, rc);
    if (!corpus) return rc;
    bool full = format == "csv";
    TextTable t;
    if (table == "hist") {
        t = table_histogram(duration_histogram(*corpus));
    } else if (table == "7") {
        t = table_io_matrix(io_matrix(*corpus));
    } else {
        auto stats = type_means(*corpus);
        if (!stats) {
            err << "error: EMPTY_GROUP: the analysis subset has no members\n";
            return kDataError;
        }
        if (table == "3") t = table_type_means(*stats, full);
        else if (table == "4") t = table_normalized(*stats, full);
        else if (table == "5a") t = table_ratio(*stats, 0, full);
        else if (table == "5b") t = table_ratio(*stats, 1, full);
        else if (table == "5c") t = table_ratio(*stats, 2, full);
        else t = table_fatigue(*stats, full);
    }
    out << (full ? render_table_csv(t) : render_table_text(t));
    return kOk;
}

int cmd_simulate(const std::string& file, const std::string& dt_str,
                 const std::string& mode, const std::string& shape_str,
                 bool calibrate, const std::string& prefix, std::ostream& out,
                 std::ostream& err) {
    auto dt = parse_dec(dt_str);
    if (!dt || dt->micro <= 0) {
        err << "error: --dt must be a positive number of seconds\n";
        return kUsageError;
    }
    Shape shape;
    if (shape_str != "linear") {
        if (shape_str.rfind("power:", 0) == 0) {
            char* end = nullptr;
            const std::string exp_str = shape_str.substr(6);
            double e = std::strtod(exp_str.c_str(), &end);
            if (exp_str.empty() || end != exp_str.c_str() + exp_str.size() ||
                !(e > 0)) {
                err << "error: --shape power:<exponent> needs a positive number\n";
                return kUsageError;
            }
            shape.exponent = e;
        } else {
            err << "error: --shape must be linear or power:<exponent>\n";
            return kUsageError;
        }
    }
    if (calibrate && mode != "causal") {
        err << "error: --calibrate requires --mode causal\n";
        return kUsageError;
    }
    int rc = kOk;
    auto corpus = load_corpus(file, err, rc);
    if (!corpus) return rc;

    if (mode == "scripted") {
        ScriptedSim sim = simulate_scripted(*corpus, dt->micro, shape);
        if (!write_output(prefix + "_trace.csv", trace_csv(sim), err))
            return kUsageError;
        if (!write_output(prefix + "_events.csv", events_csv(sim), err))
            return kUsageError;
        out << "wrote " << prefix << "_trace.csv (" << sim.traces.size()
            << " assemblies, " << sim.points << " samples)\n";
        out << "wrote " << prefix << "_events.csv (" << sim.events.size()
            << " events)\n";
        return kOk;
    }
    CausalOptions opts;
    opts.calibrate = calibrate;
    CausalSim sim = simulate_causal(*corpus, dt->micro, opts);
    for (const CausalFinding& f : sim.findings)
        err << "warning: " << f.code << ": " << f.message << "\n";
    if (!write_output(prefix + "_residuals.csv", residuals_csv(sim), err))
        return kUsageError;
    long long worst = 0;
    int reached = 0;
    for (const CausalRow& r : sim.rows) {
        if (!r.predicted_micro) continue;
        ++reached;
        long long res = *r.predicted_micro - r.recorded_micro;
        worst = std::max(worst, res < 0 ? -res : res);
    }
    out << "wrote " << prefix << "_residuals.csv (" << sim.rows.size()
        << " assemblies, " << reached << " reached)\n";
    out << "max |residual| = " << fmt3(worst) << " s\n";
    return kOk;
}

int cmd_render(const std::string& file, const std::string& what,
               const std::string& ca_id, const std::string& means,
               bool show_dangling, const std::string& dt_str,
               const std::string& out_path, std::ostream& out,
               std::ostream& err) {
    int rc = kOk;
    auto corpus = load_corpus(file, err, rc);
    if (!corpus) return rc;

    std::string path, doc;
    if (what == "scam") {
        if (ca_id.empty() == means.empty()) {
            err << "error: render scam needs exactly one of --ca or --means\n";
            return kUsageError;
        }
        if (!ca_id.empty()) {
            const CellAssembly* ca = corpus->find(ca_id);
            if (!ca) {
                err << "error: unknown assembly id: " << ca_id << "\n";
                return kUsageError;
            }
            doc = render_scam_svg(scam_render_for_ca(*ca, corpus->end_time_micro()));
            path = "scam_" + ca_id + ".svg";
        } else {
            if (means != "All" && !type_from_name(means)) {
                err << "error: unknown group: " << means
                    << " (use All, Cognitive, Visual, Touch, Kinaesthetic, or "
                       "Motor)\n";
                return kUsageError;
            }
            auto stats = type_means(*corpus);
            const GroupStats* row = nullptr;
            if (stats)
                for (const GroupStats& g : *stats)
                    if (g.name == means) row = &g;
            if (!row) {
                err << "error: EMPTY_GROUP: group " << means
                    << " has no members in the analysis subset\n";
                return kDataError;
            }
            doc = render_scam_svg(scam_render_for_means(*row));
            path = "scam_" + means + ".svg";
        }
    } else if (what == "caar") {
        CaarOptions opts;
        opts.show_dangling = show_dangling;
        doc = render_caar_svg(*corpus, opts);
        path = "caar.svg";
    } else if (what == "frames") {
        auto dt = parse_dec(dt_str);
        if (dt_str.empty() || !dt || dt->micro <= 0) {
            err << "error: render frames needs --dt <seconds> (positive)\n";
            return kUsageError;
        }
        ScriptedSim sim = simulate_scripted(*corpus, dt->micro, {});
        FramesResult fr = export_frames(sim.traces);
        if (!fr.json) {
            err << "error: " << fr.error << "\n";
            return kInternalError;
        }
        doc = *fr.json;
        path = "frames.json";
    } else {
        err << "error: unknown render target: " << what
            << " (expected scam, caar, or frames)\n";
        return kUsageError;
    }
    if (!out_path.empty()) path = out_path;
    if (!write_output(path, doc, err)) return kUsageError;
    out << "wrote " << path << "\n";
    return kOk;
}

int cmd_report(const std::string& file, const std::string& out_path,
               std::ostream& out, std::ostream& err) {
    int rc = kOk;
    auto corpus = load_corpus(file, err, rc);
    if (!corpus) return rc;

    std::string md;
    const std::string* title = corpus->meta_value("title");
    md += "# Corpus report: " + (title ? *title : file) + "\n\n";

    Census c = census(*corpus);
    md += "- Assemblies: " + std::to_string(c.total) + " (";
    bool first = true;
    for (CaType t : {CaType::Cognitive, CaType::Visual, CaType::Touch,
                     CaType::Kinaesthetic, CaType::Motor}) {
        if (!first) md += ", ";
        first = false;
        md += std::to_string(c.by_type[static_cast<std::size_t>(t)]) + " " +
              type_name(t);
    }
    md += "); " + std::to_string(c.persistent) + " persistent\n";
    md += "- Links: " + std::to_string(c.excite) + " excitatory, " +
          std::to_string(c.inhibit) + " inhibitory, " +
          std::to_string(c.env_in) + " environment inputs, " +
          std::to_string(c.motor_out) + " motor outputs\n";
    md += "- Analysis horizon: " + format_micro_minimal(corpus->end_time_micro()) +
          " s; checkpoints: " + std::to_string(c.checkpoints) + "\n";

    auto subset = analysis_subset(*corpus);
    std::array<int, 5> sub_by_type{};
    for (const CellAssembly* ca : subset)
        ++sub_by_type[static_cast<std::size_t>(ca->type)];
    md += "- Analysis subset: " + std::to_string(subset.size()) + " (";
    first = true;
    for (CaType t : {CaType::Cognitive, CaType::Visual, CaType::Touch,
                     CaType::Kinaesthetic, CaType::Motor}) {
        int n = sub_by_type[static_cast<std::size_t>(t)];
        if (n == 0) continue;
        if (!first) md += ", ";
        first = false;
        md += std::to_string(n) + " " + type_name(t);
    }
    md += ")\n\n";

    auto stats = type_means(*corpus);
    if (stats) {
        md += render_table_markdown(table_type_means(*stats)) + "\n";
        md += render_table_markdown(table_normalized(*stats)) + "\n";
        md += render_table_markdown(table_ratio(*stats, 0)) + "\n";
        md += render_table_markdown(table_ratio(*stats, 1)) + "\n";
        md += render_table_markdown(table_ratio(*stats, 2)) + "\n";
        md += render_table_markdown(table_fatigue(*stats)) + "\n";
    } else {
        md += "_The analysis subset is empty; parameter tables omitted._\n\n";
    }
    md += render_table_markdown(table_histogram(duration_histogram(*corpus))) + "\n";
    md += render_table_markdown(table_io_matrix(io_matrix(*corpus)));

    if (!write_output(out_path, md, err)) return kUsageError;
    out << "wrote " << out_path << "\n";
    return kOk;
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
    CLI::App app{"Task-analysis cell-assembly corpus toolkit"};
    app.require_subcommand(1);

    auto* v = app.add_subcommand("validate", "Check a corpus against the rule set");
    std::string v_file, v_config, v_format = "text";
    v->add_option("file", v_file, "corpus file (.tacap text or .csv table)")
        ->required();
    v->add_option("--config", v_config,
                  "rule-severity config (overrides TACAP_CONFIG)");
    v->add_option("--format", v_format, "text or tsv")
        ->check(CLI::IsMember({"text", "tsv"}));

    auto* st = app.add_subcommand("stats", "Print a derived metric table");
    std::string s_file, s_table, s_format = "text";
    st->add_option("file", s_file, "corpus file")->required();
    st->add_option("--table", s_table, "3|4|5a|5b|5c|6|7|hist")
        ->required()
        ->check(CLI::IsMember({"3", "4", "5a", "5b", "5c", "6", "7", "hist"}));
    st->add_option("--format", s_format, "text or csv (csv is full precision)")
        ->check(CLI::IsMember({"text", "csv"}));

    auto* si = app.add_subcommand("simulate",
                                  "Play the corpus lifecycles on a time grid");
    std::string si_file, si_dt, si_mode, si_shape = "linear", si_prefix = "sim";
    bool si_cal = false;
    si->add_option("file", si_file, "corpus file")->required();
    si->add_option("--dt", si_dt, "grid step in seconds")->required();
    si->add_option("--mode", si_mode, "scripted or causal")
        ->required()
        ->check(CLI::IsMember({"scripted", "causal"}));
    si->add_option("--shape", si_shape, "linear or power:<exponent>");
    si->add_flag("--calibrate", si_cal,
                 "causal mode self-test: unconditional drive, no inhibition");
    si->add_option("-o,--output", si_prefix, "output file prefix (default sim)");

    auto* re = app.add_subcommand("render", "Produce SVG/JSON visualisations");
    std::string r_file, r_what, r_ca, r_means, r_dt, r_out;
    bool r_dangling = false;
    re->add_option("file", r_file, "corpus file")->required();
    re->add_option("what", r_what, "scam | caar | frames")->required();
    re->add_option("--ca", r_ca, "assembly id (scam)");
    re->add_option("--means", r_means, "group name (scam): All or a type name");
    re->add_flag("--show-dangling", r_dangling,
                 "draw placeholders for undefined link endpoints (caar)");
    re->add_option("--dt", r_dt, "frame step in seconds (frames)");
    re->add_option("-o,--output", r_out, "output path");

    auto* rp = app.add_subcommand("report", "Write the full Markdown report");
    std::string p_file, p_out;
    rp->add_option("file", p_file, "corpus file")->required();
    rp->add_option("-o,--output", p_out, "output Markdown path")->required();

    std::vector<const char*> argv;
    argv.reserve(args.size() + 1);
    argv.push_back("tacap");
    for (const std::string& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsageError;
    }

    try {
        if (v->parsed()) return cmd_validate(v_file, v_config, v_format, out, err);
        if (st->parsed()) return cmd_stats(s_file, s_table, s_format, out, err);
        if (si->parsed())
            return cmd_simulate(si_file, si_dt, si_mode, si_shape, si_cal,
                                si_prefix, out, err);
        if (re->parsed())
            return cmd_render(r_file, r_what, r_ca, r_means, r_dangling, r_dt,
                              r_out, out, err);
        if (rp->parsed()) return cmd_report(p_file, p_out, out, err);
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return kInternalError;
    }
    return kUsageError;
}

} // namespace tacap
