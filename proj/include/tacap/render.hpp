// Visual output: lifecycle breakpoint polylines rendered to SVG, the
// whole-corpus assembly/link diagram, and animation frames as JSON.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tacap/metrics.hpp"
#include "tacap/model.hpp"
#include "tacap/sim.hpp"

namespace tacap {

// One lifecycle polyline vertex, exact micro-units (seconds, kiloneurons).
struct PointMicro {
    long long t = 0;
    long long n = 0;
};

// Recorded-lifecycle polyline:
//   (prime_start, 0) (igtig, thresh) (igtig, igmax) (igtex, igfat) (decay_end, 0)
// Persistent assemblies end at (horizon, igfat) instead (4 points).
std::vector<PointMicro> scam_breakpoints(const CellAssembly& ca,
                                         long long end_time_micro);

// Group-mean variant built from the displayed (rounded) means and the
// normalized lifecycle times:
//   (0, 0) (t1, Thresh) (t1, IgMax) (t2, IgFat) (t3, 0)
std::vector<PointMicro> scam_breakpoints_means(const GroupStats& stats);

// Everything one lifecycle plot needs: the polyline, dashed guide lines
// for the four levels and the recorded times, and a title.
struct ScamRender {
    std::string title;
    std::vector<PointMicro> points;
    std::vector<std::pair<std::string, long long>> level_guides;  // name, kn
    std::vector<std::pair<std::string, long long>> time_guides;   // name, s
};
ScamRender scam_render_for_ca(const CellAssembly& ca, long long end_time_micro);
ScamRender scam_render_for_means(const GroupStats& stats);

std::string render_scam_svg(const ScamRender& r);

struct CaarOptions {
    bool show_dangling = false;  // placeholder boxes for undefined link targets
};
std::string render_caar_svg(const Corpus& corpus, const CaarOptions& opts = {});

// Animation frames: a JSON array with one object per grid point,
//   {"t": ..., "active": [{"id": ..., "n": ..., "state": ...}, ...]}
// listing only assemblies with n > 0. All traces must share one grid.
struct FramesResult {
    std::optional<std::string> json;  // absent on grid mismatch
    std::string error;
};
FramesResult export_frames(const std::vector<CaTrace>& traces);

std::string xml_escape(std::string_view text);

} // namespace tacap
