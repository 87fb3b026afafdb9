// Lifecycle simulation: exact phase classification on a micro-second
// timeline, trajectory evaluation (linear or power-curved rise/fall),
// scripted whole-corpus playback, and the causal replay that re-derives
// ignition times from the link graph.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tacap/model.hpp"

namespace tacap {

enum class Phase { Quiescent, Priming, Ignited, Decaying };
const char* phase_name(Phase p);  // "quiescent", "priming", ...

// Rise (priming) and fall (decay) curve shape. exponent 1 is linear; any
// other positive exponent bends the curve while keeping the half-level
// anchors: n(p50) = thresh/2 and n(d50) = igfat/2. The ignited decline
// from IgMax to IgFat is linear regardless of shape.
struct Shape {
    double exponent = 1.0;
    bool linear() const { return exponent == 1.0; }
};

// Phase conventions (boundaries in exact micro-units):
//   - t == igtig is always Ignited (n = IgMax), even for degenerate spans.
//   - Priming covers [prime_start, igtig).
//   - Ignited covers [igtig, igtex]; persistent assemblies stay Ignited
//     from igtig on (declining linearly to IgFat at the horizon, then held).
//   - Decaying covers (igtex, decay_end], reaching n = 0 at decay_end.
//   - A zero-width decay (igtex == d50) collapses at igtex: the assembly
//     is Quiescent with n = 0 from igtex on.
Phase phase_at(const CellAssembly& ca, long long t_micro, long long end_time_micro);
double level_at(const CellAssembly& ca, long long t_micro, long long end_time_micro,
                const Shape& shape = {});

// ─── Scripted playback ───────────────────────────────────────────────────

struct CaTrace {
    std::string id;
    long long t0_micro = 0;
    long long dt_micro = 0;
    std::vector<double> n;        // one entry per grid point
    std::vector<Phase> phase;
};

struct SimEvent {
    long long t_micro = 0;
    int seq = 0;
    std::string ca;
    std::string event;            // prime_start | ignition | extinction | decay_end
};

struct ScriptedSim {
    long long t0_micro = 0;
    long long dt_micro = 0;
    int points = 0;               // grid points per trace
    std::vector<CaTrace> traces;  // corpus order
    std::vector<SimEvent> events; // sorted by (time, seq)
};

// Earliest prime_start across the corpus (0 for an empty corpus).
long long sim_grid_start(const Corpus& corpus);

// Plays every assembly's recorded lifecycle on the shared grid
// [grid start, horizon] with the given step. Events come from the
// recorded times and are independent of dt.
ScriptedSim simulate_scripted(const Corpus& corpus, long long dt_micro,
                              const Shape& shape = {});

// ─── Causal replay ───────────────────────────────────────────────────────

struct CausalOptions {
    // Calibration: every assembly is treated as environment-driven from the
    // start and inhibition is disabled, so predicted ignition times must
    // reproduce the recorded ones exactly on an aligned grid.
    bool calibrate = false;
    long long max_residual_micro = 300000;  // |predicted - recorded| alert level
};

struct CausalRow {
    std::string ca;
    std::optional<long long> predicted_micro;  // absent: never ignited
    long long recorded_micro = 0;
    std::optional<long long> extinction_micro; // causal extinction (absent: persistent)
};

struct CausalFinding {
    std::string code;   // UNREACHABLE_CA | HIGH_RESIDUAL
    std::string ca;
    std::string message;
};

struct CausalSim {
    std::vector<CausalRow> rows;  // corpus order
    std::vector<CausalFinding> findings;
};

// Re-derives ignition causally: an assembly accrues priming only while
// driven (an environment input, or an excitatory source currently Ignited
// or Decaying, evaluated against the previous grid state) and at or after
// its prime_start; it ignites once the accrued time reaches its recorded
// priming width (immediately when that width is zero). Extinction falls at
// the recorded igtex (or at ignition when that is later); an inhibitor
// igniting while the target is Ignited extinguishes the target then.
CausalSim simulate_causal(const Corpus& corpus, long long dt_micro,
                          const CausalOptions& opts = {});

// ─── CSV output ──────────────────────────────────────────────────────────

std::string trace_csv(const ScriptedSim& sim);       // t,<id1>,<id2>,...
std::string events_csv(const ScriptedSim& sim);      // t,ca,event
std::string residuals_csv(const CausalSim& sim);     // ca,predicted,...

} // namespace tacap
