#pragma once

#include <optional>
#include <string>

#include "rowmosaic/features.hpp"
#include "rowmosaic/geometry.hpp"
#include "rowmosaic/types.hpp"

namespace rowmosaic {

enum class RejectReason {
    none,
    too_few_prefilter,
    too_few_inliers,
    motion_violation,
    rms_too_high,
};

const char* to_string(RejectReason r);

// Outcome of the pairwise acceptance cascade. transform maps the later
// image's coordinates into the earlier image's frame.
struct PairVerdict {
    bool accepted = false;
    std::optional<Transform2D> transform;
    MatchSet matches;  // survivors of the last stage reached
    double rms_px = 0.0;
    RejectReason reject_reason = RejectReason::none;
    MotionSummary motion{};
    int inlier_count = 0;
};

// Keeps pairs whose point in the earlier image lies within
// edge_fraction * extent of its forward edge (toward camera motion) and
// whose point in the later image lies within the trailing band.
MatchSet filter_by_stitching_edge(const MatchSet& m, int wa, int ha, int wb, int hb,
                                  StitchAxis axis, int sign, double edge_fraction);

// The five-stage cascade: edge prefilter, RANSAC fit, motion constraint
// check, worst-reprojection pruning with a least-squares refit, and the
// final RMS threshold. Rejection is a result, not an error.
PairVerdict accept_pair(const ImageRecord& a, const ImageRecord& b, const MatchSet& raw,
                        const PipelineConfig& cfg);

// `a_id b_id verdict inliers rms t_along t_ortho scale rot_deg`
std::string verdict_log_line(const std::string& a_id, const std::string& b_id,
                             const PairVerdict& v);

}  // namespace rowmosaic
