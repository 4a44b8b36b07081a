#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "rowmosaic/types.hpp"

namespace rowmosaic {

struct FitResult {
    Transform2D transform;
    std::vector<bool> inlier_mask;  // parallel to the input pairs
    double rms_px = 0.0;            // over inliers only

    int inlier_count() const {
        int n = 0;
        for (bool b : inlier_mask) n += b;
        return n;
    }
};

// Motion of the camera between two frames, read off a pairwise transform:
// translation from the displacement of the image center, rotation and scale
// from the polar decomposition of the local 2x2 Jacobian at the center.
struct MotionSummary {
    double t_along = 0.0;
    double t_ortho = 0.0;
    double rotation_deg = 0.0;
    double scale = 1.0;
};

int minimal_sample_size(TransformKind kind);

// Normalized DLT (Hartley): points centered and isotropically scaled to mean
// distance sqrt(2) before solving. Throws too_few_points for n < 4 and
// degenerate_geometry for rank-deficient configurations.
Transform2D fit_homography_dlt(std::span<const Vec2> a, std::span<const Vec2> b);

// Least-squares similarity (uniform scale, rotation, translation) in closed
// form via centered cross-correlation.
Transform2D fit_partial_affine(std::span<const Vec2> a, std::span<const Vec2> b);

// Component-wise median of the displacement vectors.
Transform2D fit_translation(std::span<const Vec2> a, std::span<const Vec2> b);

// Plain least-squares fit of the given kind (translation refits use the
// mean displacement).
Transform2D fit_least_squares(TransformKind kind, std::span<const Vec2> a,
                              std::span<const Vec2> b);

// 0.5 * (|t(pa) - pb| + |t^-1(pb) - pa|)
double symmetric_transfer_error(const Transform2D& t, const Transform2D& t_inv, Vec2 pa,
                                Vec2 pb);

struct ReprojectionErrors {
    std::vector<double> per_pair;
    double rms_px = 0.0;
};

ReprojectionErrors reprojection_errors(const Transform2D& t, std::span<const Vec2> a,
                                       std::span<const Vec2> b);

// Deterministic RANSAC over the counter-based generator: minimal samples
// drawn without replacement, inliers counted by symmetric transfer error,
// ties broken by lower inlier RMS then earlier iteration. The final model is
// refit by least squares on the best inlier set and the returned mask
// reflects that refit model. Fixed iteration count unless early_exit is set
// (stops once the inlier fraction reaches 0.9).
FitResult ransac_fit(std::span<const Vec2> a, std::span<const Vec2> b, TransformKind kind,
                     double threshold_px, int iterations, std::uint64_t seed,
                     bool early_exit = false);

MotionSummary decompose_motion(const Transform2D& t, double width, double height,
                               StitchAxis axis, int sign);

}  // namespace rowmosaic
