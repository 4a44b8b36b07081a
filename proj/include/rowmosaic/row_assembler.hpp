#pragma once

#include <vector>

#include "rowmosaic/straightener.hpp"
#include "rowmosaic/types.hpp"

namespace rowmosaic {

struct EdgeMatch {
    Transform2D translation;  // batch_b coords -> batch_a frame (camera advance)
    int inliers = 0;
};

// Matches features between the trailing band of batch_a and the leading band
// of batch_b, fits a robust translation (RANSAC selection, median refit) and
// requires a positive along-axis advance. Throws Error(assembly) when the
// pair cannot be registered.
EdgeMatch match_batch_edges(const MosaicCanvas& a, const MosaicCanvas& b,
                            const PipelineConfig& cfg);

struct AssemblyResult {
    MosaicCanvas mosaic;
    std::vector<Vec2> batch_offsets;  // placement of each batch in the pre-straighten frame
    PiecewiseWarp final_warp;
    int final_height = 0;
};

// Places batches by cumulative edge translations, composites them in series
// (seam + blend in each overlap) and straightens the assembled row.
AssemblyResult assemble_row(const std::vector<MosaicCanvas>& batches,
                            const PipelineConfig& cfg, int threads = 1);

}  // namespace rowmosaic
