// Corpus text format: parser with recovering diagnostics, canonical
// serializer (byte-stable round trip), and CSV parameter-table exchange.
#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tacap/model.hpp"

namespace tacap {

enum class DiagSeverity { Warning, Error };

// One parser diagnostic. `code` is a stable machine identifier such as
// "SELF_EDGE"; line/col are 1-based (0 = not tied to a position).
struct Diag {
    DiagSeverity severity = DiagSeverity::Error;
    std::string code;
    int line = 0;
    int col = 0;
    std::string message;
};

struct ParseResult {
    std::optional<Corpus> corpus;  // present iff there were no Error diagnostics
    std::vector<Diag> diags;       // document order
    bool ok() const { return corpus.has_value(); }
};

// Parse corpus text. Recovers after errors so one pass reports as many
// problems as possible; any Error diagnostic suppresses the corpus.
ParseResult parse_corpus(std::string_view text);

// Canonical text form. For text already in canonical form (such as the
// bundled corpus), serialize_corpus(parse_corpus(text)) reproduces the
// input byte for byte, including edge order and separator levels.
std::string serialize_corpus(const Corpus& corpus);

// Parameter-table CSV. The header is fixed; igtex/d50 hold "-" (or are
// empty on import) for persistent assemblies. Imported corpora carry no
// edges or checkpoints. A header-only file imports as an empty corpus.
extern const char* const kScamCsvHeader;
ParseResult import_scam_csv(std::string_view text);
std::string export_scam_csv(const Corpus& corpus);

// "12:5: error: SELF_EDGE: assembly cannot list itself"
std::string format_diag(const Diag& d);

} // namespace tacap
