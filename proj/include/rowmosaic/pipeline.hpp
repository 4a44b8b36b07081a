#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rowmosaic/georef.hpp"
#include "rowmosaic/sequencer.hpp"
#include "rowmosaic/types.hpp"

namespace rowmosaic {

struct RunOptions {
    bool strict = false;
    int threads = 0;  // 0 = auto, 1 = fully sequential
    std::string external_match_dir;
    bool collect_debug = false;
};

struct BatchDebug {
    MosaicCanvas raw_canvas;  // before straightening
    std::vector<std::pair<std::string, Transform2D>> placements;
};

struct PipelineResult {
    MosaicCanvas mosaic;
    StitchChain chain;
    std::vector<int> used;     // seq indices in chain order
    std::vector<int> skipped;  // everything else, ascending
    std::vector<ImagePlacementMap> image_maps;  // one per used image
    std::optional<RegressionReport> georef_report;
    int georef_skipped_no_geo = 0;
    std::vector<std::string> warnings;
    std::vector<BatchDebug> batch_debug;  // only with collect_debug
};

// Runs the full pipeline: feature detection, windowed chain selection, batch
// stitching, straightening and rescaling, row assembly, final straightening,
// and georeferencing when geo data is present.
PipelineResult run_pipeline(const std::vector<ImageRecord>& images, const PipelineConfig& cfg,
                            const RunOptions& opt = {});

// Loads the images of a directory in lexicographic filename order (or the
// order given by a manifest file listing one filename per line).
std::vector<ImageRecord> load_image_folder(const std::string& dir,
                                           const std::string& manifest_path = {});

// `id latitude longitude` per line, matched against ImageRecord ids.
void attach_geo_sidecar(std::vector<ImageRecord>& images, const std::string& path);

// `label x y [lat lon]` per line.
std::vector<ControlPoint> load_control_points(const std::string& path);

std::string transform_report_line(const std::string& id, const Transform2D& t);

}  // namespace rowmosaic
