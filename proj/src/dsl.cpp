// Corpus text parser/serializer and CSV exchange.
//
// The text format is line oriented:
//   #meta key = value
//   [CA 01 CKEC Cognitive "COG Kitchen Entrance Check"]
//   SCAM: potn=10 thresh=2 igmax=7 igfat=6 p50=-1.0 igtig=0.0 igtex=0.4 d50=0.5
//   INPUTS: @env(at kitchen entrance). VKEG.
//   OUTPUTS: VKEG, CMC, CAHWA.
//   #checkpoint kettle_held MRHH 4.1 0.05
//
// I/O lists group terms with full stops; within a group terms are chained
// by & , ; or : (binding levels 0/1/2/3). A mirrored declaration (an
// OUTPUT at the source plus the matching INPUT at the target) merges into
// a single edge that remembers both declarations, so serialization can
// rebuild every list exactly as written.
#include "tacap/dsl.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <map>
#include <set>

namespace tacap {

const char* const kScamCsvHeader =
    "seq,id,potn,thresh,igmax,igfat,p50,igtig,igtex,d50,acronym";

namespace {

bool is_ws(char c) { return c == ' ' || c == '\t'; }
bool is_upper(char c) { return c >= 'A' && c <= 'Z'; }
bool is_digit(char c) { return c >= '0' && c <= '9'; }

std::string_view trim(std::string_view s) {
    while (!s.empty() && is_ws(s.front())) s.remove_prefix(1);
    while (!s.empty() && is_ws(s.back())) s.remove_suffix(1);
    return s;
}

// Split into lines, tolerating a trailing CR from CRLF input.
std::vector<std::string_view> split_lines(std::string_view text) {
    std::vector<std::string_view> lines;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t nl = text.find('\n', start);
        if (nl == std::string_view::npos) {
            if (start < text.size()) lines.push_back(text.substr(start));
            break;
        }
        std::string_view line = text.substr(start, nl - start);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        lines.push_back(line);
        start = nl + 1;
    }
    return lines;
}

// A whitespace-separated token plus its 1-based column.
struct Tok {
    std::string_view text;
    int col = 0;
};

std::vector<Tok> ws_tokens(std::string_view s, int col_base) {
    std::vector<Tok> toks;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && is_ws(s[i])) ++i;
        if (i >= s.size()) break;
        std::size_t start = i;
        while (i < s.size() && !is_ws(s[i])) ++i;
        toks.push_back({s.substr(start, i - start), col_base + static_cast<int>(start)});
    }
    return toks;
}

const char* const kScamKeys[8] = {"potn", "thresh", "igmax", "igfat",
                                  "p50",  "igtig",  "igtex", "d50"};

// ─── Parser ──────────────────────────────────────────────────────────────

struct Parser {
    std::vector<std::string_view> lines;
    std::vector<Diag> diags;
    Corpus corpus;
    bool any_error = false;
    std::map<std::string, std::size_t> edge_index;  // identity key -> edges idx
    std::set<std::string> seen_ids;
    int last_seq = 0;

    void error(int line, int col, std::string code, std::string msg) {
        diags.push_back({DiagSeverity::Error, std::move(code), line, col, std::move(msg)});
        any_error = true;
    }
    void warn(int line, int col, std::string code, std::string msg) {
        diags.push_back({DiagSeverity::Warning, std::move(code), line, col, std::move(msg)});
    }

    void run(std::string_view text) {
        lines = split_lines(text);
        std::size_t i = 0;
        while (i < lines.size()) {
            std::string_view line = lines[i];
            std::string_view body = trim(line);
            if (body.empty()) {
                ++i;
            } else if (body.rfind("#meta", 0) == 0 &&
                       (body.size() == 5 || is_ws(body[5]))) {
                parse_meta(static_cast<int>(i) + 1, line);
                ++i;
            } else if (body.rfind("#checkpoint", 0) == 0 &&
                       (body.size() == 11 || is_ws(body[11]))) {
                parse_checkpoint(static_cast<int>(i) + 1, line);
                ++i;
            } else if (body.front() == '#') {
                warn(static_cast<int>(i) + 1, 1, "UNKNOWN_DIRECTIVE",
                     "unrecognized directive line ignored: " +
                         std::string(body.substr(0, body.find_first_of(" \t"))));
                ++i;
            } else if (body.front() == '[') {
                i = parse_block(i);
            } else {
                error(static_cast<int>(i) + 1, 1, "BAD_LINE",
                      "expected a #meta, #checkpoint, or [CA ...] line");
                ++i;
            }
        }
        if (corpus.cas.empty() && !any_error)
            error(0, 0, "EMPTY_CORPUS", "no cell-assembly blocks found");
    }

    void parse_meta(int ln, std::string_view line) {
        std::string_view rest = trim(line).substr(5);
        std::size_t eq = rest.find('=');
        if (eq == std::string_view::npos) {
            error(ln, 1, "BAD_META", "#meta line needs the form: #meta key = value");
            return;
        }
        std::string key(trim(rest.substr(0, eq)));
        std::string value(trim(rest.substr(eq + 1)));
        if (key.empty()) {
            error(ln, 1, "BAD_META", "#meta key is empty");
            return;
        }
        corpus.meta.emplace_back(std::move(key), std::move(value));
    }

    void parse_checkpoint(int ln, std::string_view line) {
        std::string_view rest = trim(line).substr(11);
        auto toks = ws_tokens(rest, 1);
        if (toks.size() != 4) {
            error(ln, 1, "BAD_CHECKPOINT",
                  "#checkpoint needs: name assembly-id expected-time tolerance");
            return;
        }
        Checkpoint cp;
        cp.name = std::string(toks[0].text);
        cp.ca_id = std::string(toks[1].text);
        if (!std::all_of(cp.ca_id.begin(), cp.ca_id.end(), is_upper)) {
            error(ln, toks[1].col, "BAD_CHECKPOINT",
                  "checkpoint assembly id must be uppercase letters: " + cp.ca_id);
            return;
        }
        auto t = parse_dec(toks[2].text);
        auto tol = parse_dec(toks[3].text);
        if (!t || !tol) {
            error(ln, (!t ? toks[2] : toks[3]).col, "BAD_CHECKPOINT",
                  "checkpoint times must be decimal numbers");
            return;
        }
        if (tol->micro < 0) {
            error(ln, toks[3].col, "BAD_CHECKPOINT", "checkpoint tolerance is negative");
            return;
        }
        cp.expected_time = *t;
        cp.tolerance = *tol;
        corpus.checkpoints.push_back(std::move(cp));
    }

    // Parses the 4-line assembly block starting at line index i.
    // Returns the index of the first unconsumed line.
    std::size_t parse_block(std::size_t i) {
        int ln = static_cast<int>(i) + 1;
        CellAssembly ca;
        bool header_ok = parse_block_header(ln, lines[i], ca);
        ++i;

        bool scam_ok = false;
        if (i < lines.size() && trim(lines[i]).rfind("SCAM:", 0) == 0) {
            scam_ok = parse_scam_line(static_cast<int>(i) + 1, lines[i], ca);
            ++i;
        } else {
            error(ln, 1, "BLOCK_TRUNCATED", "assembly block is missing its SCAM: line");
        }
        for (IoSide side : {IoSide::Inputs, IoSide::Outputs}) {
            const char* kw = side == IoSide::Inputs ? "INPUTS:" : "OUTPUTS:";
            if (i < lines.size() && trim(lines[i]).rfind(kw, 0) == 0) {
                if (header_ok)
                    parse_io_line(static_cast<int>(i) + 1, lines[i], ca.id, side);
                ++i;
            } else {
                error(ln, 1, "BLOCK_TRUNCATED",
                      std::string("assembly block is missing its ") + kw + " line");
                return i;
            }
        }
        if (header_ok && scam_ok) corpus.cas.push_back(std::move(ca));
        return i;
    }

    bool parse_block_header(int ln, std::string_view line, CellAssembly& ca) {
        std::string_view s = line;
        auto fail = [&](int col, const std::string& msg) {
            error(ln, col, "BAD_BLOCK_HEADER", msg);
            return false;
        };
        std::size_t p = line.find('[');
        if (p == std::string_view::npos || trim(line.substr(0, p)) != std::string_view())
            return fail(1, "assembly header must start with '[CA'");
        s.remove_prefix(p + 1);
        if (s.rfind("CA", 0) != 0) return fail(static_cast<int>(p) + 2, "expected 'CA' after '['");
        s.remove_prefix(2);

        auto col_of = [&](std::string_view at) {
            return static_cast<int>(at.data() - line.data()) + 1;
        };
        auto skip_ws = [&] { while (!s.empty() && is_ws(s.front())) s.remove_prefix(1); };

        skip_ws();
        std::size_t n = 0;
        while (n < s.size() && is_digit(s[n])) ++n;
        if (n == 0) return fail(col_of(s), "expected a sequence number");
        int seq = 0;
        std::from_chars(s.data(), s.data() + n, seq);
        s.remove_prefix(n);

        skip_ws();
        n = 0;
        while (n < s.size() && is_upper(s[n])) ++n;
        if (n == 0) return fail(col_of(s), "expected an uppercase assembly id");
        std::string id(s.substr(0, n));
        int id_col = col_of(s);
        s.remove_prefix(n);

        skip_ws();
        n = 0;
        while (n < s.size() && !is_ws(s[n]) && s[n] != '"') ++n;
        auto type = type_from_name(s.substr(0, n));
        if (!type) {
            error(ln, col_of(s), "UNKNOWN_TYPE",
                  "unknown assembly type: " + std::string(s.substr(0, n)));
            return false;
        }
        s.remove_prefix(n);

        skip_ws();
        if (s.empty() || s.front() != '"') return fail(col_of(s), "expected a quoted name");
        int quote_col = col_of(s);
        s.remove_prefix(1);
        std::size_t endq = s.find('"');
        if (endq == std::string_view::npos) {
            error(ln, quote_col, "UNTERMINATED_NAME", "quoted name never closes");
            return false;
        }
        std::string acronym(s.substr(0, endq));
        s.remove_prefix(endq + 1);

        skip_ws();
        if (s.empty() || s.front() != ']') return fail(col_of(s), "expected ']'");
        s.remove_prefix(1);
        if (!trim(s).empty()) return fail(col_of(s), "unexpected text after ']'");

        if (seq <= 0) return fail(1, "sequence number must be positive");
        if (seq <= last_seq)
            error(ln, 1, "SEQ_ORDER",
                  "sequence numbers must increase: " + std::to_string(seq) +
                      " after " + std::to_string(last_seq));
        last_seq = seq;
        if (!seen_ids.insert(id).second) {
            error(ln, id_col, "DUPLICATE_ID", "assembly id already used: " + id);
            return false;
        }
        char want = type_prefix(*type);
        if (id.front() != want)
            error(ln, id_col, "TYPE_PREFIX_MISMATCH",
                  "id " + id + " must start with '" + want + "' for a " +
                      type_name(*type) + " assembly");

        if (acronym.empty()) warn(ln, quote_col, "MISSING_ACRONYM", "assembly name is empty");
        ca.seq = seq;
        ca.id = std::move(id);
        ca.type = *type;
        ca.acronym = std::move(acronym);
        return true;
    }

    bool parse_scam_line(int ln, std::string_view line, CellAssembly& ca) {
        std::string_view body = trim(line);
        std::string_view rest = body.substr(5);
        int col_base = static_cast<int>(body.data() - line.data()) + 5 + 1;
        auto toks = ws_tokens(rest, col_base);
        std::map<std::string, Dec> values;
        std::set<std::string> dashes;
        bool ok = true;
        for (const Tok& tok : toks) {
            std::size_t eq = tok.text.find('=');
            if (eq == std::string_view::npos) {
                error(ln, tok.col, "UNKNOWN_PARAM",
                      "expected key=value, got: " + std::string(tok.text));
                ok = false;
                continue;
            }
            std::string key(tok.text.substr(0, eq));
            std::string_view val = tok.text.substr(eq + 1);
            if (std::find(std::begin(kScamKeys), std::end(kScamKeys), key) ==
                std::end(kScamKeys)) {
                error(ln, tok.col, "UNKNOWN_PARAM", "unknown parameter: " + key);
                ok = false;
                continue;
            }
            if (values.count(key) || dashes.count(key)) {
                error(ln, tok.col, "DUPLICATE_PARAM", "parameter given twice: " + key);
                ok = false;
                continue;
            }
            if (val == "-") {
                if (key != "igtex" && key != "d50") {
                    error(ln, tok.col, "BAD_NUMBER",
                          "parameter " + key + " requires a numeric value");
                    ok = false;
                    continue;
                }
                dashes.insert(key);
                continue;
            }
            auto d = parse_dec(val);
            if (!d) {
                error(ln, tok.col, "BAD_NUMBER",
                      "cannot parse number for " + key + ": " + std::string(val));
                ok = false;
                continue;
            }
            values.emplace(std::move(key), *d);
        }
        for (const char* key : kScamKeys) {
            if (!values.count(key) && !dashes.count(key)) {
                error(ln, col_base, "COLUMN_COUNT_MISMATCH",
                      std::string("missing parameter: ") + key);
                ok = false;
            }
        }
        if (!ok) return false;
        ca.p.potn = values.at("potn");
        ca.p.thresh = values.at("thresh");
        ca.p.igmax = values.at("igmax");
        ca.p.igfat = values.at("igfat");
        ca.p.p50 = values.at("p50");
        ca.p.igtig = values.at("igtig");
        if (values.count("igtex")) ca.p.igtex = values.at("igtex");
        if (values.count("d50")) ca.p.d50 = values.at("d50");
        return true;
    }

    // One term scanned from an I/O list.
    struct Term {
        enum Kind { Id, InhibitId, Env, Motor } kind = Id;
        std::string text;  // id, or env stimulus text
        int col = 0;
    };

    void parse_io_line(int ln, std::string_view line, const std::string& owner,
                       IoSide side) {
        std::string_view body = trim(line);
        std::size_t kwlen = side == IoSide::Inputs ? 7 : 8;
        std::string_view s = body.substr(kwlen);
        int col_base = static_cast<int>(body.data() - line.data()) +
                       static_cast<int>(kwlen) + 1;
        auto col_at = [&](std::size_t pos) {
            return col_base + static_cast<int>(pos);
        };

        std::size_t pos = 0;
        std::optional<Sep> pending = Sep::Start;  // separator owed to the next term
        int order = 0;
        while (true) {
            while (pos < s.size() && is_ws(s[pos])) ++pos;
            if (pos >= s.size()) break;
            char c = s[pos];
            if (c == '&' || c == ',' || c == ';' || c == ':' || c == '.') {
                Sep sep = c == '&'   ? Sep::Amp
                          : c == ',' ? Sep::Comma
                          : c == ';' ? Sep::Semi
                          : c == ':' ? Sep::Colon
                                     : Sep::Stop;
                if (pending) {
                    if (*pending == Sep::Start || *pending == Sep::Stop)
                        error(ln, col_at(pos), "EMPTY_CLAUSE",
                              "group has no terms before this separator");
                    else
                        error(ln, col_at(pos), "TRAILING_SEP",
                              "separator is not followed by a term");
                }
                pending = sep;
                ++pos;
                continue;
            }
            Term term;
            if (!scan_term(ln, s, pos, col_at, term)) {
                // Recover: skip to the next separator or whitespace.
                while (pos < s.size() && !is_ws(s[pos]) && s[pos] != '&' &&
                       s[pos] != ',' && s[pos] != ';' && s[pos] != ':' &&
                       s[pos] != '.')
                    ++pos;
                pending.reset();
                ++order;
                continue;
            }
            if (!pending) {
                // recoverable: read the juxtaposition as a comma
                warn(ln, term.col, "MISSING_SEP",
                     "terms must be separated by & , ; : or .");
                pending = Sep::Comma;
            }
            add_term(ln, owner, side, *pending, order, term);
            pending.reset();
            ++order;
        }
        if (pending) {
            if (*pending == Sep::Start)
                error(ln, col_base, "EMPTY_CLAUSE",
                      (side == IoSide::Inputs ? std::string("INPUTS")
                                              : std::string("OUTPUTS")) +
                          " list is empty");
            else if (*pending != Sep::Stop)
                error(ln, col_at(s.size()), "TRAILING_SEP",
                      "list ends on a separator without a term");
            // A final Stop is the optional terminating full stop.
        }
    }

    template <class ColAt>
    bool scan_term(int ln, std::string_view s, std::size_t& pos, ColAt col_at,
                   Term& out) {
        out.col = col_at(pos);
        char c = s[pos];
        if (c == '~') {
            ++pos;
            std::size_t n = 0;
            while (pos + n < s.size() && is_upper(s[pos + n])) ++n;
            if (n == 0) {
                error(ln, out.col, "BAD_TERM", "'~' must be followed by an assembly id");
                return false;
            }
            out.kind = Term::InhibitId;
            out.text = std::string(s.substr(pos, n));
            pos += n;
            return true;
        }
        if (c == '@') {
            std::size_t n = 1;
            while (pos + n < s.size() && s[pos + n] >= 'a' && s[pos + n] <= 'z') ++n;
            std::string_view word = s.substr(pos, n);
            if (word == "@motor") {
                out.kind = Term::Motor;
                pos += n;
                return true;
            }
            if (word == "@env" && pos + n < s.size() && s[pos + n] == '(') {
                std::size_t close = s.find(')', pos + n + 1);
                if (close == std::string_view::npos) {
                    error(ln, out.col, "UNTERMINATED_ENV",
                          "@env( stimulus text never closes with ')'");
                    pos = s.size();
                    return false;
                }
                out.kind = Term::Env;
                out.text = std::string(s.substr(pos + n + 1, close - (pos + n + 1)));
                pos = close + 1;
                return true;
            }
            error(ln, out.col, "BAD_TERM",
                  "unknown pseudo-term (expected @env(...) or @motor): " +
                      std::string(word));
            return false;
        }
        if (is_upper(c)) {
            std::size_t n = 0;
            while (pos + n < s.size() && is_upper(s[pos + n])) ++n;
            out.kind = Term::Id;
            out.text = std::string(s.substr(pos, n));
            pos += n;
            return true;
        }
        error(ln, out.col, "BAD_TERM",
              std::string("unexpected character in list: '") + c + "'");
        return false;
    }

    void add_term(int ln, const std::string& owner, IoSide side, Sep sep,
                  int order, const Term& term) {
        EdgeDecl decl{owner, side, sep, order};
        switch (term.kind) {
            case Term::Id:
            case Term::InhibitId: {
                if (term.text == owner) {
                    error(ln, term.col, "SELF_EDGE",
                          "assembly cannot list itself: " + term.text);
                    return;
                }
                EdgeKind kind =
                    term.kind == Term::InhibitId ? EdgeKind::Inhibit : EdgeKind::Excite;
                if (side == IoSide::Inputs)
                    add_edge(term.text, owner, kind, "", decl);
                else
                    add_edge(owner, term.text, kind, "", decl);
                return;
            }
            case Term::Env:
                if (side == IoSide::Outputs) {
                    error(ln, term.col, "ENV_IN_OUTPUTS",
                          "@env(...) may appear only in INPUTS");
                    return;
                }
                add_edge("@env", owner, EdgeKind::EnvIn, term.text, decl);
                return;
            case Term::Motor:
                if (side == IoSide::Inputs) {
                    error(ln, term.col, "MOTOR_IN_INPUTS",
                          "@motor may appear only in OUTPUTS");
                    return;
                }
                add_edge(owner, "@motor", EdgeKind::MotorOut, "", decl);
                return;
        }
    }

    void add_edge(const std::string& source, const std::string& target,
                  EdgeKind kind, const std::string& env_text, const EdgeDecl& decl) {
        std::string key = source + '\x1f' + target + '\x1f' +
                          static_cast<char>('0' + static_cast<int>(kind)) + '\x1f' +
                          env_text;
        auto [it, inserted] = edge_index.try_emplace(key, corpus.edges.size());
        if (inserted) {
            Edge e;
            e.source = source;
            e.target = target;
            e.kind = kind;
            e.env_text = env_text;
            corpus.edges.push_back(std::move(e));
        }
        corpus.edges[it->second].decls.push_back(decl);
    }
};

// ─── Serialization helpers ───────────────────────────────────────────────

std::string sep_text(Sep s) {
    switch (s) {
        case Sep::Start: return " ";
        case Sep::Amp:   return " & ";
        case Sep::Comma: return ", ";
        case Sep::Semi:  return "; ";
        case Sep::Colon: return ": ";
        case Sep::Stop:  return ". ";
    }
    return " ";
}

std::string term_text(const Edge& e, IoSide side) {
    switch (e.kind) {
        case EdgeKind::Excite:
            return side == IoSide::Inputs ? e.source : e.target;
        case EdgeKind::Inhibit:
            return "~" + (side == IoSide::Inputs ? e.source : e.target);
        case EdgeKind::EnvIn:
            return "@env(" + e.env_text + ")";
        case EdgeKind::MotorOut:
            return "@motor";
    }
    return "";
}

std::string io_line(const Corpus& c, const std::string& id, IoSide side) {
    struct Ref {
        int order;
        Sep sep;
        std::string text;
    };
    std::vector<Ref> refs;
    for (const Edge& e : c.edges)
        for (const EdgeDecl& d : e.decls)
            if (d.ca_id == id && d.side == side)
                refs.push_back({d.order, d.sep, term_text(e, side)});
    std::sort(refs.begin(), refs.end(),
              [](const Ref& a, const Ref& b) { return a.order < b.order; });

    std::string line = side == IoSide::Inputs ? "INPUTS:" : "OUTPUTS:";
    for (std::size_t i = 0; i < refs.size(); ++i) {
        line += i == 0 ? " " : sep_text(refs[i].sep);
        line += refs[i].text;
    }
    if (!refs.empty()) line += ".";
    return line;
}

std::string scam_value(const std::optional<Dec>& d) {
    return d ? format_dec(*d) : "-";
}

// ─── CSV helpers ─────────────────────────────────────────────────────────

// RFC-4180-style field split of one record line.
bool split_csv_fields(std::string_view line, std::vector<std::string>& out) {
    out.clear();
    std::string field;
    bool quoted = false;
    std::size_t i = 0;
    while (i < line.size()) {
        char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    field += '"';
                    i += 2;
                } else {
                    quoted = false;
                    ++i;
                }
            } else {
                field += c;
                ++i;
            }
        } else if (c == '"' && field.empty()) {
            quoted = true;
            ++i;
        } else if (c == ',') {
            out.push_back(std::move(field));
            field.clear();
            ++i;
        } else {
            field += c;
            ++i;
        }
    }
    if (quoted) return false;
    out.push_back(std::move(field));
    return true;
}

std::string csv_quote(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) {
        if (c == '"') q += "\"\"";
        else q += c;
    }
    q += '"';
    return q;
}

} // namespace

// ─── Public API ──────────────────────────────────────────────────────────

ParseResult parse_corpus(std::string_view text) {
    Parser p;
    p.run(text);
    ParseResult r;
    r.diags = std::move(p.diags);
    if (!p.any_error) r.corpus = std::move(p.corpus);
    return r;
}

std::string serialize_corpus(const Corpus& c) {
    std::string out;
    for (const auto& [k, v] : c.meta) {
        out += "#meta " + k + " = " + v + "\n";
    }
    char seqbuf[16];
    for (const CellAssembly& ca : c.cas) {
        std::snprintf(seqbuf, sizeof seqbuf, "%02d", ca.seq);
        out += std::string("[CA ") + seqbuf + " " + ca.id + " " +
               type_name(ca.type) + " \"" + ca.acronym + "\"]\n";
        out += "SCAM: potn=" + format_dec(ca.p.potn) +
               " thresh=" + format_dec(ca.p.thresh) +
               " igmax=" + format_dec(ca.p.igmax) +
               " igfat=" + format_dec(ca.p.igfat) +
               " p50=" + format_dec(ca.p.p50) +
               " igtig=" + format_dec(ca.p.igtig) +
               " igtex=" + scam_value(ca.p.igtex) +
               " d50=" + scam_value(ca.p.d50) + "\n";
        out += io_line(c, ca.id, IoSide::Inputs) + "\n";
        out += io_line(c, ca.id, IoSide::Outputs) + "\n";
    }
    for (const Checkpoint& cp : c.checkpoints) {
        out += "#checkpoint " + cp.name + " " + cp.ca_id + " " +
               format_dec(cp.expected_time) + " " + format_dec(cp.tolerance) + "\n";
    }
    return out;
}

ParseResult import_scam_csv(std::string_view text) {
    ParseResult r;
    Corpus corpus;
    bool any_error = false;
    auto error = [&](int line, std::string code, std::string msg) {
        r.diags.push_back({DiagSeverity::Error, std::move(code), line, 0, std::move(msg)});
        any_error = true;
    };

    auto lines = split_lines(text);
    if (lines.empty() || trim(lines[0]) != kScamCsvHeader) {
        error(1, "CSV_HEADER",
              std::string("first line must be exactly: ") + kScamCsvHeader);
        return r;
    }
    std::set<std::string> seen_ids;
    int last_seq = 0;
    std::vector<std::string> f;
    for (std::size_t li = 1; li < lines.size(); ++li) {
        int ln = static_cast<int>(li) + 1;
        if (trim(lines[li]).empty()) continue;
        if (!split_csv_fields(lines[li], f)) {
            error(ln, "CSV_FIELD_COUNT", "unterminated quoted field");
            continue;
        }
        if (f.size() != 11) {
            error(ln, "CSV_FIELD_COUNT",
                  "expected 11 fields, got " + std::to_string(f.size()));
            continue;
        }
        CellAssembly ca;
        int seq = 0;
        auto [p, ec] = std::from_chars(f[0].data(), f[0].data() + f[0].size(), seq);
        if (ec != std::errc() || p != f[0].data() + f[0].size() || seq <= 0) {
            error(ln, "BAD_NUMBER", "bad sequence number: " + f[0]);
            continue;
        }
        if (seq <= last_seq)
            error(ln, "SEQ_ORDER",
                  "sequence numbers must increase: " + std::to_string(seq) +
                      " after " + std::to_string(last_seq));
        last_seq = seq;
        ca.seq = seq;
        ca.id = f[1];
        auto type = ca_type_from_id(ca.id);
        if (ca.id.empty() ||
            !std::all_of(ca.id.begin(), ca.id.end(), is_upper) || !type) {
            error(ln, "BAD_ID", "bad assembly id: " + f[1]);
            continue;
        }
        if (!seen_ids.insert(ca.id).second) {
            error(ln, "DUPLICATE_ID", "assembly id already used: " + ca.id);
            continue;
        }
        ca.type = *type;
        ca.acronym = f[10];

        const char* names[6] = {"potn", "thresh", "igmax", "igfat", "p50", "igtig"};
        Dec* slots[6] = {&ca.p.potn, &ca.p.thresh, &ca.p.igmax,
                         &ca.p.igfat, &ca.p.p50,   &ca.p.igtig};
        bool row_ok = true;
        for (int k = 0; k < 6; ++k) {
            auto d = parse_dec(f[2 + k]);
            if (!d) {
                error(ln, "BAD_NUMBER",
                      std::string("cannot parse ") + names[k] + ": " + f[2 + k]);
                row_ok = false;
            } else {
                *slots[k] = *d;
            }
        }
        for (int k = 0; k < 2; ++k) {
            const std::string& v = f[8 + k];
            if (v == "-" || trim(v).empty()) continue;
            auto d = parse_dec(v);
            if (!d) {
                error(ln, "BAD_NUMBER",
                      std::string("cannot parse ") + (k == 0 ? "igtex" : "d50") +
                          ": " + v);
                row_ok = false;
            } else if (k == 0) {
                ca.p.igtex = *d;
            } else {
                ca.p.d50 = *d;
            }
        }
        if (row_ok) corpus.cas.push_back(std::move(ca));
    }
    if (!any_error) r.corpus = std::move(corpus);
    return r;
}

std::string export_scam_csv(const Corpus& c) {
    std::string out = kScamCsvHeader;
    out += "\n";
    for (const CellAssembly& ca : c.cas) {
        out += std::to_string(ca.seq) + "," + ca.id + "," +
               format_dec(ca.p.potn) + "," + format_dec(ca.p.thresh) + "," +
               format_dec(ca.p.igmax) + "," + format_dec(ca.p.igfat) + "," +
               format_dec(ca.p.p50) + "," + format_dec(ca.p.igtig) + "," +
               scam_value(ca.p.igtex) + "," + scam_value(ca.p.d50) + "," +
               csv_quote(ca.acronym) + "\n";
    }
    return out;
}

std::string format_diag(const Diag& d) {
    std::string pos;
    if (d.line > 0) {
        pos = std::to_string(d.line);
        if (d.col > 0) pos += ":" + std::to_string(d.col);
        pos += ": ";
    }
    return pos + (d.severity == DiagSeverity::Error ? "error: " : "warning: ") +
           d.code + ": " + d.message;
}

} // namespace tacap
