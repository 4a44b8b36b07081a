#include "rowmosaic/geometry.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <numbers>

#include "rowmosaic/errors.hpp"
#include "rowmosaic/rng.hpp"

namespace rowmosaic {

namespace {

constexpr std::uint64_t kRansacStream = 0x52414E53'41433031ULL;

struct NormalizingTransform {
    double scale = 1.0;
    Vec2 center;

    Vec2 apply(Vec2 p) const { return {(p.x - center.x) * scale, (p.y - center.y) * scale}; }

    Transform2D matrix() const {
        Transform2D t;
        t.m = {scale, 0, -scale * center.x, 0, scale, -scale * center.y, 0, 0, 1};
        t.kind = TransformKind::partial_affine;
        return t;
    }

    Transform2D inverse_matrix() const {
        Transform2D t;
        t.m = {1.0 / scale, 0, center.x, 0, 1.0 / scale, center.y, 0, 0, 1};
        t.kind = TransformKind::partial_affine;
        return t;
    }
};

NormalizingTransform hartley_normalization(std::span<const Vec2> pts) {
    NormalizingTransform n;
    for (const Vec2& p : pts) {
        n.center.x += p.x;
        n.center.y += p.y;
    }
    n.center.x /= double(pts.size());
    n.center.y /= double(pts.size());
    double mean_dist = 0;
    for (const Vec2& p : pts) mean_dist += (p - n.center).norm();
    mean_dist /= double(pts.size());
    n.scale = mean_dist > 1e-12 ? std::numbers::sqrt2 / mean_dist : 1.0;
    return n;
}

double mean_displacement(std::span<const double> v) {
    double s = 0;
    for (double x : v) s += x;
    return s / double(v.size());
}

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

Transform2D fit_translation_mean(std::span<const Vec2> a, std::span<const Vec2> b) {
    std::vector<double> dx(a.size()), dy(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        dx[i] = b[i].x - a[i].x;
        dy[i] = b[i].y - a[i].y;
    }
    return Transform2D::translate(mean_displacement(dx), mean_displacement(dy));
}

}  // namespace

int minimal_sample_size(TransformKind kind) {
    switch (kind) {
        case TransformKind::homography: return 4;
        case TransformKind::partial_affine: return 2;
        case TransformKind::translation: return 1;
    }
    return 4;
}

Transform2D fit_homography_dlt(std::span<const Vec2> a, std::span<const Vec2> b) {
    if (a.size() != b.size())
        throw Error(ErrorCode::too_few_points, "point lists differ in length");
    const int n = int(a.size());
    if (n < 4)
        throw Error(ErrorCode::too_few_points,
                    "homography needs >= 4 point pairs, got " + std::to_string(n));

    const NormalizingTransform na = hartley_normalization(a);
    const NormalizingTransform nb = hartley_normalization(b);

    Eigen::MatrixXd A(2 * n, 9);
    for (int i = 0; i < n; ++i) {
        const Vec2 p = na.apply(a[i]);
        const Vec2 q = nb.apply(b[i]);
        A.row(2 * i) << -p.x, -p.y, -1, 0, 0, 0, q.x * p.x, q.x * p.y, q.x;
        A.row(2 * i + 1) << 0, 0, 0, -p.x, -p.y, -1, q.y * p.x, q.y * p.y, q.y;
    }

    Eigen::JacobiSVD<Eigen::MatrixXd> svd(A, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    const int rank_index = int(sv.size()) - 2;  // second-smallest singular value
    if (rank_index >= 0 && sv[rank_index] <= 1e-9 * std::max(sv[0], 1e-300))
        throw Error(ErrorCode::degenerate_geometry,
                    "degenerate point configuration for homography");

    Eigen::VectorXd h = svd.matrixV().col(8);
    Transform2D hn;
    for (int i = 0; i < 9; ++i) hn.m[i] = h[i];
    hn.kind = TransformKind::homography;

    Transform2D result = compose(nb.inverse_matrix(), compose(hn, na.matrix()));
    result.kind = TransformKind::homography;
    result = result.normalized();
    if (!result.invertible())
        throw Error(ErrorCode::degenerate_geometry, "homography estimate is singular");
    return result;
}

Transform2D fit_partial_affine(std::span<const Vec2> a, std::span<const Vec2> b) {
    if (a.size() != b.size())
        throw Error(ErrorCode::too_few_points, "point lists differ in length");
    const int n = int(a.size());
    if (n < 2)
        throw Error(ErrorCode::too_few_points,
                    "partial affine needs >= 2 point pairs, got " + std::to_string(n));

    Vec2 ca{}, cb{};
    for (int i = 0; i < n; ++i) {
        ca = ca + a[i];
        cb = cb + b[i];
    }
    ca = ca * (1.0 / n);
    cb = cb * (1.0 / n);

    double sxx = 0, cross = 0, dot = 0;
    for (int i = 0; i < n; ++i) {
        const Vec2 p = a[i] - ca;
        const Vec2 q = b[i] - cb;
        dot += p.x * q.x + p.y * q.y;
        cross += p.x * q.y - p.y * q.x;
        sxx += p.x * p.x + p.y * p.y;
    }
    if (sxx <= 1e-12)
        throw Error(ErrorCode::degenerate_geometry, "all source points coincident");

    const double theta = std::atan2(cross, dot);
    const double s = std::sqrt(dot * dot + cross * cross) / sxx;
    if (s <= 1e-12)
        throw Error(ErrorCode::degenerate_geometry, "degenerate partial affine (zero scale)");
    const double cosv = s * std::cos(theta), sinv = s * std::sin(theta);
    Transform2D t;
    t.m = {cosv, -sinv, cb.x - cosv * ca.x + sinv * ca.y,
           sinv, cosv,  cb.y - sinv * ca.x - cosv * ca.y,
           0,    0,     1};
    t.kind = TransformKind::partial_affine;
    return t;
}

Transform2D fit_translation(std::span<const Vec2> a, std::span<const Vec2> b) {
    if (a.empty() || a.size() != b.size())
        throw Error(ErrorCode::too_few_points, "translation needs >= 1 point pair");
    std::vector<double> dx(a.size()), dy(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        dx[i] = b[i].x - a[i].x;
        dy[i] = b[i].y - a[i].y;
    }
    return Transform2D::translate(median(std::move(dx)), median(std::move(dy)));
}

Transform2D fit_least_squares(TransformKind kind, std::span<const Vec2> a,
                              std::span<const Vec2> b) {
    switch (kind) {
        case TransformKind::homography: return fit_homography_dlt(a, b);
        case TransformKind::partial_affine: return fit_partial_affine(a, b);
        case TransformKind::translation: return fit_translation_mean(a, b);
    }
    throw Error(ErrorCode::internal, "unknown transform kind");
}

double symmetric_transfer_error(const Transform2D& t, const Transform2D& t_inv, Vec2 pa,
                                Vec2 pb) {
    return 0.5 * ((t.apply(pa) - pb).norm() + (t_inv.apply(pb) - pa).norm());
}

ReprojectionErrors reprojection_errors(const Transform2D& t, std::span<const Vec2> a,
                                       std::span<const Vec2> b) {
    const Transform2D inv = t.inverse();
    ReprojectionErrors r;
    r.per_pair.resize(a.size());
    double sq = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        r.per_pair[i] = symmetric_transfer_error(t, inv, a[i], b[i]);
        sq += r.per_pair[i] * r.per_pair[i];
    }
    r.rms_px = a.empty() ? 0.0 : std::sqrt(sq / double(a.size()));
    return r;
}

FitResult ransac_fit(std::span<const Vec2> a, std::span<const Vec2> b, TransformKind kind,
                     double threshold_px, int iterations, std::uint64_t seed,
                     bool early_exit) {
    if (threshold_px <= 0)
        throw Error(ErrorCode::internal, "ransac threshold must be positive");
    const int n = int(a.size());
    const int msize = minimal_sample_size(kind);
    if (n < msize || a.size() != b.size())
        throw Error(ErrorCode::too_few_points,
                    "ransac needs >= " + std::to_string(msize) + " pairs, got " +
                        std::to_string(n));

    const CounterRng rng{seed, kRansacStream};

    int best_count = 0;
    double best_rms = 0;
    std::vector<bool> best_mask;
    Transform2D best_model;

    std::vector<Vec2> sa(msize), sb(msize);
    std::vector<bool> mask(std::size_t(n), false);
    int sample[4];

    for (int it = 0; it < iterations; ++it) {
        // Counters stay disjoint per iteration (up to 64 rejection retries).
        const std::uint64_t base = std::uint64_t(it) * 64;
        int got = 0;
        for (std::uint64_t c = base; c < base + 64 && got < msize; ++c) {
            const int idx = int(rng.below(std::uint64_t(n), c));
            bool dup = false;
            for (int k = 0; k < got; ++k) dup |= (sample[k] == idx);
            if (!dup) sample[got++] = idx;
        }
        if (got < msize) continue;
        for (int k = 0; k < msize; ++k) {
            sa[k] = a[sample[k]];
            sb[k] = b[sample[k]];
        }

        Transform2D model;
        try {
            switch (kind) {
                case TransformKind::homography: model = fit_homography_dlt(sa, sb); break;
                case TransformKind::partial_affine: model = fit_partial_affine(sa, sb); break;
                case TransformKind::translation:
                    model = Transform2D::translate(sb[0].x - sa[0].x, sb[0].y - sa[0].y);
                    break;
            }
        } catch (const Error&) {
            continue;  // degenerate minimal sample
        }
        if (!model.invertible()) continue;
        const Transform2D inv = model.inverse();

        int count = 0;
        double sq = 0;
        for (int i = 0; i < n; ++i) {
            const double e = symmetric_transfer_error(model, inv, a[i], b[i]);
            mask[i] = e <= threshold_px;
            if (mask[i]) {
                ++count;
                sq += e * e;
            }
        }
        if (count < msize) continue;
        const double rms = std::sqrt(sq / count);
        if (count > best_count || (count == best_count && rms < best_rms)) {
            best_count = count;
            best_rms = rms;
            best_mask = mask;
            best_model = model;
        }
        if (early_exit && best_count >= int(0.9 * n)) break;
    }

    if (best_count < msize)
        throw Error(ErrorCode::degenerate_geometry,
                    "ransac found no model with a minimal inlier set");

    // Least-squares refit on the consensus set; the reported mask and RMS
    // reflect the refit model.
    std::vector<Vec2> ia, ib;
    ia.reserve(best_count);
    ib.reserve(best_count);
    for (int i = 0; i < n; ++i)
        if (best_mask[i]) {
            ia.push_back(a[i]);
            ib.push_back(b[i]);
        }

    FitResult result;
    Transform2D refit = best_model;
    try {
        refit = fit_least_squares(kind, ia, ib);
    } catch (const Error&) {
        refit = best_model;
    }
    if (!refit.invertible()) refit = best_model;

    const Transform2D inv = refit.inverse();
    result.inlier_mask.assign(std::size_t(n), false);
    int count = 0;
    double sq = 0;
    for (int i = 0; i < n; ++i) {
        const double e = symmetric_transfer_error(refit, inv, a[i], b[i]);
        if (e <= threshold_px) {
            result.inlier_mask[i] = true;
            ++count;
            sq += e * e;
        }
    }
    if (count < msize) {
        // Refit drifted off the consensus; keep the minimal-sample model.
        refit = best_model;
        const Transform2D binv = refit.inverse();
        count = 0;
        sq = 0;
        for (int i = 0; i < n; ++i) {
            const double e = symmetric_transfer_error(refit, binv, a[i], b[i]);
            result.inlier_mask[i] = e <= threshold_px;
            if (result.inlier_mask[i]) {
                ++count;
                sq += e * e;
            }
        }
    }
    result.transform = refit;
    result.rms_px = count > 0 ? std::sqrt(sq / count) : 0.0;
    return result;
}

MotionSummary decompose_motion(const Transform2D& t, double width, double height,
                               StitchAxis axis, int sign) {
    const Transform2D tn = t.normalized();
    if (!tn.invertible())
        throw Error(ErrorCode::degenerate_geometry, "cannot decompose a singular transform");
    const Vec2 c{width / 2.0, height / 2.0};
    const Vec2 d = tn.apply(c) - c;

    MotionSummary ms;
    if (axis == StitchAxis::horizontal) {
        ms.t_along = sign * d.x;
        ms.t_ortho = sign * d.y;
    } else {
        ms.t_along = sign * d.y;
        ms.t_ortho = sign * d.x;
    }

    // Local Jacobian of the projective map at the image center.
    const auto& m = tn.m;
    const double w = m[6] * c.x + m[7] * c.y + m[8];
    const double u = m[0] * c.x + m[1] * c.y + m[2];
    const double v = m[3] * c.x + m[4] * c.y + m[5];
    const double j00 = (m[0] * w - u * m[6]) / (w * w);
    const double j01 = (m[1] * w - u * m[7]) / (w * w);
    const double j10 = (m[3] * w - v * m[6]) / (w * w);
    const double j11 = (m[4] * w - v * m[7]) / (w * w);

    ms.rotation_deg = std::atan2(j10 - j01, j00 + j11) * 180.0 / std::numbers::pi;
    const double det = j00 * j11 - j01 * j10;
    ms.scale = det > 0 ? std::sqrt(det) : 0.0;
    return ms;
}

}  // namespace rowmosaic
