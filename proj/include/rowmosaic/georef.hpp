#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "rowmosaic/composed_map.hpp"
#include "rowmosaic/types.hpp"

namespace rowmosaic {

struct ControlPoint {
    std::string label;
    Vec2 pixel;  // final mosaic frame
    std::optional<GeoRecord> world_geo;
    std::optional<double> world_m;  // along-row meters when already known
};

struct RegressionReport {
    double slope = 0.0;
    double intercept = 0.0;  // 0 when fitted without an intercept
    double r_squared = 0.0;
    double mae_px = 0.0;
    std::optional<double> mae_cm;
    int n = 0;

    std::string to_text() const;
};

struct ImagePlacementMap {
    std::string id;
    int seq_index = 0;
    Vec2 center;  // source-image center
    ComposedMap map;
};

struct CenterRegistration {
    std::vector<ControlPoint> points;
    int skipped_no_geo = 0;
};

// One control point per used image: the image center mapped through the full
// composed transform, paired with its geo record. Images without geo data
// are counted and skipped.
CenterRegistration register_image_centers(const std::vector<ImagePlacementMap>& maps,
                                          const std::vector<ImageRecord>& images);

// Reduces lat/lon to an along-row scalar in meters by projecting a local
// equirectangular approximation onto the principal axis of the point cloud.
// Points carrying along_row_m use it directly.
std::vector<double> along_row_meters(std::span<const ControlPoint> points);

// Ordinary least squares of pixel on world (through the origin when
// with_intercept is false). mae_px is the mean absolute residual; mae_cm
// converts it through world-range / pixel-range, scaled by cm_per_unit
// (default 100, i.e. world units are meters).
RegressionReport fit_axis_regression(std::span<const std::pair<double, double>> world_pixel,
                                     bool with_intercept,
                                     std::optional<double> cm_per_unit = {});

// Regression of run_b's along-axis pixel coordinate on run_a's through the
// origin over label-matched points; MAE of the pixel differences, in cm when
// a pixels-per-meter calibration is supplied.
RegressionReport compare_control_points(std::span<const ControlPoint> run_a,
                                        std::span<const ControlPoint> run_b,
                                        StitchAxis axis = StitchAxis::horizontal,
                                        std::optional<double> pixels_per_m = {});

}  // namespace rowmosaic
