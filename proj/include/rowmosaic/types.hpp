#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rowmosaic/errors.hpp"
#include "rowmosaic/image.hpp"

namespace rowmosaic {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
    Vec2 operator*(double s) const { return {x * s, y * s}; }
    double norm() const { return std::hypot(x, y); }
};

enum class StitchAxis { horizontal, vertical };
enum class WarpMode { perspective, partial_affine };
enum class TransformKind { translation, partial_affine, homography };

struct GeoRecord {
    double latitude = 0.0;
    double longitude = 0.0;
    std::optional<double> along_row_m;
};

// One captured frame. Images in a sequence are ordered by seq_index; sizes
// may differ between frames.
struct ImageRecord {
    std::string id;
    int seq_index = 0;
    Image8 pixels;
    std::optional<GeoRecord> geo;

    int width() const { return pixels.width; }
    int height() const { return pixels.height; }
};

// 3x3 planar projective transform, normalized so m[8] == 1 whenever that
// entry is nonzero. `kind` records the strongest structure the matrix is
// known to have.
//
// Convention used throughout the pipeline: a pairwise link transform maps
// the LATER image's pixel coordinates into the EARLIER image's frame, i.e.
// it equals the camera advance. Global placements compose these directly:
// G_later = G_earlier * link.
struct Transform2D {
    std::array<double, 9> m{1, 0, 0, 0, 1, 0, 0, 0, 1};
    TransformKind kind = TransformKind::translation;

    static Transform2D identity() { return {}; }

    static Transform2D translate(double dx, double dy) {
        Transform2D t;
        t.m = {1, 0, dx, 0, 1, dy, 0, 0, 1};
        t.kind = TransformKind::translation;
        return t;
    }

    // scale * R(theta) followed by translation.
    static Transform2D similarity(double scale, double theta, double tx, double ty) {
        Transform2D t;
        const double a = scale * std::cos(theta);
        const double b = scale * std::sin(theta);
        t.m = {a, -b, tx, b, a, ty, 0, 0, 1};
        t.kind = TransformKind::partial_affine;
        return t;
    }

    static Transform2D rotate_about(double theta, Vec2 c) {
        const double ca = std::cos(theta), sa = std::sin(theta);
        Transform2D t;
        t.m = {ca, -sa, c.x - ca * c.x + sa * c.y,
               sa, ca,  c.y - sa * c.x - ca * c.y,
               0,  0,   1};
        t.kind = TransformKind::partial_affine;
        return t;
    }

    static Transform2D scale_uniform(double s) {
        Transform2D t;
        t.m = {s, 0, 0, 0, s, 0, 0, 0, 1};
        t.kind = TransformKind::partial_affine;
        return t;
    }

    Vec2 apply(Vec2 p) const {
        const double w = m[6] * p.x + m[7] * p.y + m[8];
        return {(m[0] * p.x + m[1] * p.y + m[2]) / w,
                (m[3] * p.x + m[4] * p.y + m[5]) / w};
    }

    double det() const {
        return m[0] * (m[4] * m[8] - m[5] * m[7]) -
               m[1] * (m[3] * m[8] - m[5] * m[6]) +
               m[2] * (m[3] * m[7] - m[4] * m[6]);
    }

    double max_abs() const {
        double v = 0;
        for (double e : m) v = std::max(v, std::fabs(e));
        return v;
    }

    bool invertible() const {
        const double scale = max_abs();
        return scale > 0 && std::fabs(det()) > 1e-14 * scale * scale * scale;
    }

    Transform2D inverse() const {
        const double d = det();
        const double scale = max_abs();
        if (!(std::fabs(d) > 1e-14 * scale * scale * scale))
            throw Error(ErrorCode::degenerate_geometry, "transform is not invertible");
        Transform2D r;
        r.m = {(m[4] * m[8] - m[5] * m[7]) / d, (m[2] * m[7] - m[1] * m[8]) / d,
               (m[1] * m[5] - m[2] * m[4]) / d, (m[5] * m[6] - m[3] * m[8]) / d,
               (m[0] * m[8] - m[2] * m[6]) / d, (m[2] * m[3] - m[0] * m[5]) / d,
               (m[3] * m[7] - m[4] * m[6]) / d, (m[1] * m[6] - m[0] * m[7]) / d,
               (m[0] * m[4] - m[1] * m[3]) / d};
        r.kind = kind;
        return r.normalized();
    }

    Transform2D normalized() const {
        Transform2D r = *this;
        if (std::fabs(r.m[8]) > 1e-14 * r.max_abs()) {
            const double w = r.m[8];
            for (double& e : r.m) e /= w;
        }
        return r;
    }
};

// compose(a, b)(p) == a(b(p))
inline Transform2D compose(const Transform2D& a, const Transform2D& b) {
    Transform2D r;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            double v = 0;
            for (int k = 0; k < 3; ++k) v += a.m[3 * i + k] * b.m[3 * k + j];
            r.m[3 * i + j] = v;
        }
    r.kind = std::max(a.kind, b.kind);
    return r.normalized();
}

struct ScaleBounds {
    double min = 0.8;
    double max = 1.25;
};

// Assumptions about how the camera moves between neighboring frames.
// min_advance_px == 0 means "auto": 5% of the earlier image's extent along
// the stitch axis, resolved at gate time.
struct MotionConstraints {
    StitchAxis stitch_axis = StitchAxis::horizontal;
    int stitch_sign = +1;
    double min_advance_px = 0.0;
    double max_ortho_ratio = 0.5;
    ScaleBounds scale_bounds;
    double max_rotation_deg = 15.0;
};

struct PipelineConfig {
    int window = 5;
    int batch_size = 10;
    double edge_fraction = 0.25;
    int min_prefilter_matches = 50;
    double ransac_threshold_px = 3.0;
    int ransac_iterations = 2000;
    std::uint64_t ransac_seed = 1;
    int min_inliers = 15;
    double prune_fraction = 0.2;
    double max_rms_px = 3.0;
    WarpMode warp_mode = WarpMode::partial_affine;
    int blend_levels = 5;
    double straighten_tolerance_px = 5.0;
    MotionConstraints motion;
};

struct Footprint {
    std::string image_id;
    std::array<Vec2, 4> corners;  // TL, TR, BR, BL in mosaic frame
};

// Composited pixels plus validity mask. Canvas indices equal mosaic-frame
// coordinates shifted by origin_offset (zero for every canvas produced here).
struct MosaicCanvas {
    Image8 pixels;
    Mask8 mask;
    Vec2 origin_offset{};
    std::vector<Footprint> footprints;

    int width() const { return pixels.width; }
    int height() const { return pixels.height; }
};

inline const char* to_string(StitchAxis a) {
    return a == StitchAxis::horizontal ? "horizontal" : "vertical";
}
inline const char* to_string(WarpMode w) {
    return w == WarpMode::perspective ? "perspective" : "partial_affine";
}

}  // namespace rowmosaic
