#pragma once

#include <cstdint>
#include <vector>

#include "rowmosaic/types.hpp"

namespace rowmosaic {

enum class SceneTexture { blob_field, checker, noise_octaves };

struct SceneSpec {
    std::uint64_t seed = 1;
    int row_length_px = 4000;
    int row_height_px = 600;
    SceneTexture texture = SceneTexture::blob_field;
    double blob_density = 8.0;  // blobs per 10^4 px^2
};

struct JitterSpec {
    double lateral_sigma_px = 0.0;
    double step_sigma_px = 0.0;
    double roll_sigma_deg = 0.0;
    double scale_sigma = 0.0;
};

struct TrajectorySpec {
    std::uint64_t seed = 1;
    int n_frames = 10;
    double step_px = 100.0;
    JitterSpec jitter;
    int frame_w = 640;
    int frame_h = 480;
};

// Deterministic texture; blob_field is a flat background with seeded
// elliptical blobs and speckles, checker and noise_octaves exist for
// analytic tests. Same seed, same bytes.
Image8 generate_scene(const SceneSpec& spec);

struct FramePose {
    Transform2D frame_to_scene;
    double forward_px = 0.0;  // scene x of the frame center minus the start
    double roll_rad = 0.0;
    double scale = 1.0;
};

struct SynthSequence {
    std::vector<ImageRecord> frames;  // geo populated from the synthetic latitude map
    std::vector<Transform2D> links;   // links[k]: frame k+1 coords -> frame k frame
    std::vector<FramePose> poses;
};

// Samples each frame from the scene through a similarity pose with seeded
// per-frame jitter; emits exact frame-to-frame transforms and linearly
// spaced geo records (latitude = 38 + forward_px * 1e-7, fixed longitude).
// Throws when the trajectory leaves the scene bounds.
SynthSequence render_sequence(const Image8& scene, const TrajectorySpec& traj);

constexpr double kSynthLatitudeBase = 38.0;
constexpr double kSynthLatitudePerPx = 1e-7;
constexpr double kSynthLongitude = -121.75;

}  // namespace rowmosaic
