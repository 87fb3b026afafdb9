// Corpus validation: six configurable rule families producing ordered
// findings, plus the key=value rule-severity config file format.
#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tacap/model.hpp"

namespace tacap {

enum class Severity { Warning, Error };

// One validation finding. `rule` is r1..r6; `code` is a stable short
// identifier (DANGLING, NO_CAUSAL_OVERLAP, ...); `locus` is the assembly
// the finding is anchored to (the unknown id itself for bad checkpoints).
struct Finding {
    Severity severity = Severity::Warning;
    std::string rule;
    std::string locus;
    std::string code;
    std::string message;
};

// Per-rule severity override. Default keeps each finding's built-in
// severity; Off suppresses the rule entirely.
enum class RuleMode { Default, Off, Warning, Error };

struct ValidateConfig {
    std::array<RuleMode, 6> rules{};          // index 0 = r1
    long long r4_tolerance_micro = 300000;    // causal-overlap slack, 0.3 s

    RuleMode mode(int rule_1based) const { return rules[rule_1based - 1]; }
};

// Parses config text: blank lines and #-comment lines are skipped, other
// lines are `key = value` with keys r1..r6 (off|warning|error) or
// r4.tolerance_s (non-negative decimal seconds).
struct ConfigParse {
    std::optional<ValidateConfig> config;
    std::string error;                        // set when config is absent
};
ConfigParse parse_validate_config(std::string_view text);

struct ValidationReport {
    std::vector<Finding> findings;            // sorted by (locus seq, rule)
    bool has_error() const;
};

// Rules:
//   r1  level order and positivity  (error)
//   r2  time order and persistence pairing  (error)
//   r3  excitatory link closure: one-sided declarations (warning) and
//       dangling endpoints (error; warning when listed in known_missing)
//   r4  causal overlap: each excitatory link's source activity window
//       must touch the target's priming window +/- tolerance  (warning)
//   r5  checkpoints: unknown assembly, or ignition off by more than the
//       tolerance  (error)
//   r6  ignition times non-decreasing in table order; ties allowed  (warning)
ValidationReport validate_corpus(const Corpus& corpus,
                                 const ValidateConfig& config = {});

// Machine format, one finding per line:
//   severity<TAB>rule<TAB>locus<TAB>CODE: message
std::string findings_tsv(const std::vector<Finding>& findings);

// Human format:
//   error r3 CHWA: DANGLING: message
std::string findings_text(const std::vector<Finding>& findings);

} // namespace tacap
