#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "rowmosaic/types.hpp"

namespace rowmosaic {

enum class SeamLabel : std::uint8_t { A = 0, B = 1, outside = 2 };

// Label buffer over an overlap window (local coordinates). The seam holds
// one pixel per row for a horizontal stitch axis (per column for vertical),
// with steps of at most one pixel sideways.
struct SeamLabeling {
    int width = 0;
    int height = 0;
    StitchAxis axis = StitchAxis::horizontal;
    bool a_on_low_side = true;  // a's content on the low-coordinate side of the seam
    std::vector<SeamLabel> labels;
    std::vector<std::pair<int, int>> seam;  // (x, y), one entry per row/column
    double seam_cost = 0.0;

    SeamLabel at(int x, int y) const { return labels[std::size_t(y) * width + x]; }
};

struct SeamPath {
    std::vector<int> pos;  // column per row (horizontal axis) or row per column
    double cost = 0.0;
};

// Minimum-cost monotone path through a raw cost field; exposed so tests can
// compare against exhaustive enumeration.
SeamPath seam_dp(const std::vector<double>& cost, int width, int height, StitchAxis axis);

// Dynamic-programming seam through the overlap of the two masks. Per-pixel
// cost: L1 color difference plus 0.5 * (|grad a| + |grad b|) of the rounded
// luma (forward differences). Pixels on the earlier side of the seam are
// labeled A; pixels valid in only one mask take that mask's label and pixels
// valid in neither are labeled outside.
SeamLabeling find_seam(const Image8& a, const Mask8& mask_a, const Image8& b,
                       const Mask8& mask_b, StitchAxis axis);

struct BlendResult {
    Image8 pixels;
    Mask8 written;  // where the output carries a valid value
};

// Laplacian-pyramid blend across the seam ([1,4,6,4,1]/16 kernel, label mask
// blurred per level). Blending is confined to a band around the seam of
// Chebyshev radius max(2, 2^(levels-1) - 1); outside it the labeled source
// is copied exactly. levels is reduced when the overlap is smaller than
// 2^levels in either dimension.
BlendResult multiband_blend(const Image8& a, const Mask8& mask_a, const Image8& b,
                            const Mask8& mask_b, const SeamLabeling& labeling, int levels);

int blend_band_radius(int levels);

}  // namespace rowmosaic
