#pragma once

#include <optional>
#include <vector>

#include "rowmosaic/types.hpp"

namespace rowmosaic {

// Per-column mask profile of a mosaic, smoothed by a centered moving average
// (the window shrinks symmetrically near the ends, so linear profiles stay
// exact). Raw bounds are kept for clamped sampling during rectification.
struct Midline {
    int x0 = 0;  // first valid column
    std::vector<double> y_top;
    std::vector<double> y_mid;
    std::vector<double> y_bottom;
    std::vector<double> raw_top;
    std::vector<double> raw_bottom;

    int columns() const { return int(y_mid.size()); }
};

Midline extract_midline(const MosaicCanvas& canvas, int smooth_window);

// Recursive endpoint-fit simplification of the midline; returns sample
// indices of the segment endpoints (always includes first and last).
std::vector<int> segment_midline(const Midline& m, double tolerance_px);

// Piecewise projective map from a wavy mosaic onto a constant-height
// rectangle; one 3x3 per slice, continuous across slice edges because
// adjacent quads share their vertical edge.
struct PiecewiseWarp {
    std::vector<double> src_x;               // slice boundaries in source columns, size k+1
    std::vector<double> dst_u;               // slice boundaries in output columns, size k+1
    std::vector<Transform2D> forward;        // source -> output, per slice
    std::vector<Transform2D> backward;       // output -> source, per slice

    int slice_of_src(double x) const;
    int slice_of_dst(double u) const;
    Vec2 apply(Vec2 p) const;
    Transform2D local(Vec2 p) const;  // forward matrix of the slice containing p
};

struct RectifyResult {
    MosaicCanvas canvas;
    PiecewiseWarp warp;
};

// Warps each quad between adjacent breakpoints onto [u_i, u_{i+1}] x [0, H),
// with target widths preserving the midline arc length of each quad.
// Destination pixels always sample a valid source (coordinates are clamped
// into the column's mask band), so the output mask is a full rectangle.
RectifyResult slice_and_rectify(const MosaicCanvas& canvas, const Midline& m,
                                const std::vector<int>& breakpoints, int target_height);

struct StraightenResult {
    MosaicCanvas canvas;
    PiecewiseWarp warp;
    int target_height = 0;
};

// extract -> segment -> rectify. Target height defaults to the median of the
// per-column mask heights. axis=vertical runs on the transposed canvas and
// conjugates the warp back.
StraightenResult straighten_canvas(const MosaicCanvas& canvas, double tolerance_px,
                                   int smooth_window, StitchAxis axis = StitchAxis::horizontal,
                                   std::optional<int> height_override = {});

// Uniform bilinear rescale so the canvas height equals target_edge_px.
MosaicCanvas rescale_to_height(const MosaicCanvas& canvas, int target_edge_px);

MosaicCanvas transpose(const MosaicCanvas& canvas);

constexpr int kDefaultSmoothWindow = 51;

}  // namespace rowmosaic
