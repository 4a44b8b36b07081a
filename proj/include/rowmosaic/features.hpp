#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "rowmosaic/types.hpp"

namespace rowmosaic {

struct Keypoint {
    double x = 0.0;
    double y = 0.0;
    float response = 0.f;
    float angle = 0.f;  // radians
};

using Descriptor = std::array<std::uint64_t, 4>;  // 256-bit binary string

struct FeatureSet {
    std::string image_id;
    std::vector<Keypoint> keypoints;
    std::vector<Descriptor> descriptors;  // parallel to keypoints

    std::size_t size() const { return keypoints.size(); }
};

struct MatchPair {
    int index_a = 0;
    int index_b = 0;
    double score = 0.0;  // 1 - hamming/256
};

struct MatchSet {
    std::vector<MatchPair> pairs;
    std::vector<Vec2> points_a;  // parallel to pairs
    std::vector<Vec2> points_b;

    std::size_t size() const { return pairs.size(); }
};

int hamming_distance(const Descriptor& a, const Descriptor& b);

// Corner detection on box-smoothed luma: Harris responses, 3x3 non-maximum
// suppression, then at most max_per_cell strongest keypoints per grid cell.
// Each keypoint carries an intensity-centroid orientation and a 256-bit
// binary descriptor sampled from a fixed seeded comparison pattern rotated
// by that orientation. Throws when the descriptor patch does not fit
// (patch radius exceeds min dimension / 2).
FeatureSet detect_features(const Image8& pixels, const std::string& image_id,
                           int max_per_cell = 40, int grid = 8);
FeatureSet detect_features(const ImageRecord& image, int max_per_cell = 40, int grid = 8);

// Mutual nearest neighbors under Hamming distance, kept when the nearest
// distance is <= max_hamming and nearest/second-nearest <= ratio.
MatchSet match_features(const FeatureSet& a, const FeatureSet& b, int max_hamming = 64,
                        double ratio = 0.85);

// Reads a precomputed match file:
//   a=<id> b=<id> wa=<w> ha=<h> wb=<w> hb=<h>
//   xa ya xb yb score
// Coordinates are taken as stored; bounds and one-to-one use are checked.
MatchSet load_external_matches(const std::string& path, const std::string& a_id,
                               const std::string& b_id);

}  // namespace rowmosaic
