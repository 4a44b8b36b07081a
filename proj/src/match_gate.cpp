#include "rowmosaic/match_gate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>

#include "rowmosaic/errors.hpp"

namespace rowmosaic {

namespace {

bool in_forward_band(double v, int extent, double edge_fraction, int sign) {
    if (sign > 0) return v >= double(extent) * (1.0 - edge_fraction);
    return v <= double(extent) * edge_fraction;
}

bool in_trailing_band(double v, int extent, double edge_fraction, int sign) {
    if (sign > 0) return v <= double(extent) * edge_fraction;
    return v >= double(extent) * (1.0 - edge_fraction);
}

MatchSet subset(const MatchSet& m, const std::vector<int>& keep) {
    MatchSet out;
    out.pairs.reserve(keep.size());
    out.points_a.reserve(keep.size());
    out.points_b.reserve(keep.size());
    for (int i : keep) {
        out.pairs.push_back(m.pairs[i]);
        out.points_a.push_back(m.points_a[i]);
        out.points_b.push_back(m.points_b[i]);
    }
    return out;
}

bool violates_motion(const MotionSummary& ms, const MotionConstraints& mc,
                     double min_advance) {
    if (ms.t_along < min_advance) return true;
    if (std::fabs(ms.t_ortho) > mc.max_ortho_ratio * ms.t_along) return true;
    if (ms.scale < mc.scale_bounds.min || ms.scale > mc.scale_bounds.max) return true;
    if (std::fabs(ms.rotation_deg) > mc.max_rotation_deg) return true;
    return false;
}

}  // namespace

const char* to_string(RejectReason r) {
    switch (r) {
        case RejectReason::none: return "accepted";
        case RejectReason::too_few_prefilter: return "too_few_prefilter";
        case RejectReason::too_few_inliers: return "too_few_inliers";
        case RejectReason::motion_violation: return "motion_violation";
        case RejectReason::rms_too_high: return "rms_too_high";
    }
    return "unknown";
}

MatchSet filter_by_stitching_edge(const MatchSet& m, int wa, int ha, int wb, int hb,
                                  StitchAxis axis, int sign, double edge_fraction) {
    const int extent_a = axis == StitchAxis::horizontal ? wa : ha;
    const int extent_b = axis == StitchAxis::horizontal ? wb : hb;
    std::vector<int> keep;
    for (std::size_t i = 0; i < m.size(); ++i) {
        const double va =
            axis == StitchAxis::horizontal ? m.points_a[i].x : m.points_a[i].y;
        const double vb =
            axis == StitchAxis::horizontal ? m.points_b[i].x : m.points_b[i].y;
        if (in_forward_band(va, extent_a, edge_fraction, sign) &&
            in_trailing_band(vb, extent_b, edge_fraction, sign))
            keep.push_back(int(i));
    }
    return subset(m, keep);
}

PairVerdict accept_pair(const ImageRecord& a, const ImageRecord& b, const MatchSet& raw,
                        const PipelineConfig& cfg) {
    const MotionConstraints& mc = cfg.motion;
    PairVerdict v;

    // Stage 1: keep matches near the stitching edges.
    v.matches = filter_by_stitching_edge(raw, a.width(), a.height(), b.width(), b.height(),
                                         mc.stitch_axis, mc.stitch_sign, cfg.edge_fraction);
    if (int(v.matches.size()) < cfg.min_prefilter_matches) {
        v.reject_reason = RejectReason::too_few_prefilter;
        return v;
    }

    // Stage 2: robust fit of the later->earlier transform.
    const TransformKind kind = cfg.warp_mode == WarpMode::perspective
                                   ? TransformKind::homography
                                   : TransformKind::partial_affine;
    FitResult fit;
    try {
        fit = ransac_fit(v.matches.points_b, v.matches.points_a, kind,
                         cfg.ransac_threshold_px, cfg.ransac_iterations, cfg.ransac_seed);
    } catch (const Error&) {
        v.reject_reason = RejectReason::too_few_inliers;
        return v;
    }
    v.inlier_count = fit.inlier_count();
    if (v.inlier_count < cfg.min_inliers) {
        v.reject_reason = RejectReason::too_few_inliers;
        return v;
    }

    // Stage 3: the fitted motion must look like forward travel along the row.
    const double extent_a =
        mc.stitch_axis == StitchAxis::horizontal ? a.width() : a.height();
    const double min_advance =
        mc.min_advance_px > 0 ? mc.min_advance_px : 0.05 * extent_a;
    MotionSummary motion =
        decompose_motion(fit.transform, b.width(), b.height(), mc.stitch_axis, mc.stitch_sign);
    v.motion = motion;
    if (violates_motion(motion, mc, min_advance)) {
        v.transform = fit.transform;
        v.reject_reason = RejectReason::motion_violation;
        return v;
    }

    // Stage 4: drop the worst-agreeing inliers once and refit by least squares.
    std::vector<int> inliers;
    for (std::size_t i = 0; i < fit.inlier_mask.size(); ++i)
        if (fit.inlier_mask[i]) inliers.push_back(int(i));
    MatchSet inlier_matches = subset(v.matches, inliers);

    const ReprojectionErrors stage3_err =
        reprojection_errors(fit.transform, inlier_matches.points_b, inlier_matches.points_a);
    const int n_inliers = int(inlier_matches.size());
    int drop = int(std::ceil(cfg.prune_fraction * n_inliers));
    drop = std::min(drop, n_inliers - minimal_sample_size(kind));
    drop = std::max(drop, 0);

    std::vector<int> order(inlier_matches.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int lhs, int rhs) {
        return stage3_err.per_pair[lhs] > stage3_err.per_pair[rhs];
    });
    std::vector<int> survivors(order.begin() + drop, order.end());
    std::sort(survivors.begin(), survivors.end());
    MatchSet refined_matches = subset(inlier_matches, survivors);

    Transform2D refined;
    try {
        refined = fit_least_squares(kind, refined_matches.points_b, refined_matches.points_a);
    } catch (const Error&) {
        refined = fit.transform;
    }
    if (!refined.invertible()) refined = fit.transform;

    // The refined transform must still satisfy the motion constraints.
    motion = decompose_motion(refined, b.width(), b.height(), mc.stitch_axis, mc.stitch_sign);
    v.motion = motion;
    v.transform = refined;
    v.matches = refined_matches;
    if (violates_motion(motion, mc, min_advance)) {
        v.reject_reason = RejectReason::motion_violation;
        return v;
    }

    // Stage 5: final reprojection threshold.
    const ReprojectionErrors final_err =
        reprojection_errors(refined, refined_matches.points_b, refined_matches.points_a);
    v.rms_px = final_err.rms_px;
    if (final_err.rms_px > cfg.max_rms_px) {
        v.reject_reason = RejectReason::rms_too_high;
        return v;
    }

    v.accepted = true;
    v.reject_reason = RejectReason::none;
    return v;
}

std::string verdict_log_line(const std::string& a_id, const std::string& b_id,
                             const PairVerdict& v) {
    char buf[256];
    std::snprintf(buf, sizeof(buf), "%s %s %s %d %.3f %.2f %.2f %.4f %.3f", a_id.c_str(),
                  b_id.c_str(), to_string(v.reject_reason), v.inlier_count, v.rms_px,
                  v.motion.t_along, v.motion.t_ortho, v.motion.scale, v.motion.rotation_deg);
    return buf;
}

}  // namespace rowmosaic
