#pragma once

#include <array>
#include <string>
#include <vector>

#include "rowmosaic/features.hpp"
#include "rowmosaic/types.hpp"

namespace rowmosaic {

struct PlacedImage {
    std::string image_id;
    Transform2D global_transform;    // source pixels -> batch mosaic frame
    std::array<Vec2, 4> footprint;   // transformed image corners
};

std::array<Vec2, 4> footprint_of(const Transform2D& g, int width, int height);

// One accepted link inside a batch, with the surviving match points.
struct BatchLink {
    int from_pos = 0;  // positions within the batch
    int to_pos = 0;
    std::vector<Vec2> pts_from;  // in the earlier image
    std::vector<Vec2> pts_to;    // in the later image
    Transform2D to_prev;         // later-image coords -> earlier-image frame
};

struct BatchImages {
    std::vector<const ImageRecord*> images;
    std::vector<BatchLink> links;
};

// First image is the gauge (identity); image k is placed by composing the
// link transforms along the chain, then everything is shifted so the
// bounding box is non-negative.
std::vector<PlacedImage> chain_global_transforms(const BatchImages& batch);

struct RefineResult {
    std::vector<PlacedImage> placements;
    bool converged = true;
    double initial_cost = 0.0;
    double final_cost = 0.0;
    int iterations = 0;
};

// Joint least-squares refinement over per-image partial-affine parameters
// (first image fixed), minimizing the squared mosaic-frame disagreement of
// all surviving link matches via Levenberg-Marquardt (damping x10 on
// failure, x0.1 on success, max 50 iterations, stop at relative improvement
// < 1e-6). Only improving steps are accepted.
RefineResult refine_batch(const std::vector<PlacedImage>& placements, const BatchImages& batch,
                          const PipelineConfig& cfg);

// Rotates all placements about the first image center so the least-squares
// line through the transformed centers runs parallel to the stitch axis,
// then re-offsets the bounding box.
std::vector<PlacedImage> level_batch(const std::vector<PlacedImage>& placements,
                                     const BatchImages& batch, StitchAxis axis, int sign);

// Inverse-warps every image onto the batch canvas in chain order, merging
// each with a seam plus multiband blend in the overlap.
MosaicCanvas composite_batch(const BatchImages& batch,
                             const std::vector<PlacedImage>& placements,
                             const PipelineConfig& cfg);

// Shared with the row assembler: warp one source by g and merge it into the
// canvas (seam + blend over the overlap). The canvas must already have its
// final size. first = paint without merging.
void merge_warped(MosaicCanvas& canvas, const Image8& src, const Mask8* src_mask,
                  const Transform2D& g, const std::string& id, const PipelineConfig& cfg,
                  bool first);

}  // namespace rowmosaic
