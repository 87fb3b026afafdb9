// Immutable domain types: cell assemblies with their 8-parameter model,
// typed relationship edges, checkpoints, and the corpus container, plus
// per-assembly derived lifecycle quantities (all in exact micro-units).
#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "tacap/decimal.hpp"

namespace tacap {

// ─── Cell-assembly typing ────────────────────────────────────────────────

enum class CaType { Cognitive, Visual, Touch, Kinaesthetic, Motor };

bool is_perceptual(CaType t);                      // Visual/Touch/Kinaesthetic
char type_prefix(CaType t);                        // C V T K M
const char* type_name(CaType t);                   // "Cognitive" ...
std::optional<CaType> type_from_name(std::string_view name);
std::optional<CaType> ca_type_from_id(std::string_view id);  // by first letter

// ─── Parameters and assemblies ───────────────────────────────────────────

// Four kiloneuron levels and four times. igtex/d50 are absent together on a
// persistent assembly (still ignited at the analysis horizon).
struct ScamParams {
    Dec potn, thresh, igmax, igfat;   // kiloneurons, thresh<=igfat<=igmax<=potn
    Dec p50, igtig;                   // seconds; p50 may be negative
    std::optional<Dec> igtex, d50;    // seconds; absent together = persistent

    bool persistent() const { return !igtex.has_value() && !d50.has_value(); }
};

struct CellAssembly {
    int seq = 0;                 // table row number, unique, ascending
    std::string id;              // uppercase A-Z, first letter = type prefix
    CaType type = CaType::Cognitive;
    std::string acronym;         // human-readable expansion
    ScamParams p;
};

// ─── Relationship edges ──────────────────────────────────────────────────

enum class EdgeKind { Excite, Inhibit, EnvIn, MotorOut };
enum class IoSide { Inputs, Outputs };

// Separator written before a term in an I/O list. Start opens a list,
// Stop opens a new full-stop-delimited group.
enum class Sep { Start, Amp, Comma, Semi, Colon, Stop };
int sep_level(Sep s);            // Start/Amp/Stop -> 0, Comma 1, Semi 2, Colon 3

// One textual declaration of an edge: which assembly's list, which side,
// the preceding separator, and the position within that list.
struct EdgeDecl {
    std::string ca_id;
    IoSide side = IoSide::Inputs;
    Sep sep = Sep::Start;
    int order = 0;
};

// A directed relationship. Mirrored declarations (an OUTPUT at the source
// and the matching INPUT at the target) merge into one edge carrying both
// provenances, so serialization can rebuild both lists exactly.
struct Edge {
    std::string source;          // CA id, or "@env" for EnvIn
    std::string target;          // CA id, or "@motor" for MotorOut
    EdgeKind kind = EdgeKind::Excite;
    std::string env_text;        // EnvIn only: the stimulus description
    std::vector<EdgeDecl> decls; // 1..n declarations, in document order

    bool same_identity(const Edge& o) const {
        return source == o.source && target == o.target && kind == o.kind &&
               env_text == o.env_text;
    }
};

struct Checkpoint {
    std::string name;
    std::string ca_id;
    Dec expected_time;
    Dec tolerance;               // >= 0
};

// ─── Corpus ──────────────────────────────────────────────────────────────

struct Corpus {
    std::vector<std::pair<std::string, std::string>> meta;  // ordered key/value
    std::vector<CellAssembly> cas;
    std::vector<Edge> edges;
    std::vector<Checkpoint> checkpoints;

    const std::string* meta_value(std::string_view key) const;

    // Analysis horizon: the end_time meta when present, otherwise the
    // largest finite time recorded in any assembly.
    long long end_time_micro() const;

    // Ids listed in the known_missing meta (whitespace/comma separated):
    // dangling references to them are expected and downgraded to warnings.
    std::vector<std::string> known_missing_ids() const;

    const CellAssembly* find(std::string_view id) const;
    int seq_of(std::string_view id) const;       // 0 when unknown/pseudo

private:
    mutable std::unordered_map<std::string, std::size_t> index_;  // lazy id index
    void build_index() const;
};

// ─── Derived per-assembly quantities (linear lifecycle geometry) ─────────

// Priming covers [prime_start, igtig] with its half level at p50, so
// prime_start = igtig - 2*(igtig - p50). Exact in micro-units.
long long prime_start_micro(const CellAssembly& ca);

// Decay covers [igtex, decay_end] with its half level at d50; absent for
// persistent assemblies.
std::optional<long long> decay_end_micro(const CellAssembly& ca);

// igtex - igtig; nullopt marks a persistent assembly.
std::optional<long long> duration_micro(const CellAssembly& ca);

// igmax - igfat, always >= 0 on a valid assembly.
long long fatigue_micro(const CellAssembly& ca);

} // namespace tacap
