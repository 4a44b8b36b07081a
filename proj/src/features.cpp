#include "rowmosaic/features.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "rowmosaic/errors.hpp"
#include "rowmosaic/rng.hpp"

namespace rowmosaic {

namespace {

constexpr int kPatchRadius = 15;       // descriptor patch is 31 px
constexpr int kPairRadius = 13;        // comparison points stay inside under rotation
constexpr int kOrientationRadius = 7;
constexpr int kBorder = kPatchRadius;
constexpr float kHarrisK = 0.04f;
constexpr float kHarrisFloor = 1e5f;
constexpr std::uint64_t kPatternSeed = 0x524F574D4F534149ULL;

struct PairPattern {
    std::array<std::int8_t, 256> ax, ay, bx, by;
};

// Fixed pseudorandom comparison pattern: 256 point pairs drawn uniformly
// from the radius-13 disc, reproducible across builds.
const PairPattern& pattern() {
    static const PairPattern p = [] {
        PairPattern pat{};
        const CounterRng rng{kPatternSeed, 0};
        std::uint64_t ctr = 0;
        auto draw = [&](std::int8_t& x, std::int8_t& y) {
            for (;;) {
                const int dx = int(rng.below(2 * kPairRadius + 1, ctr++)) - kPairRadius;
                const int dy = int(rng.below(2 * kPairRadius + 1, ctr++)) - kPairRadius;
                if (dx * dx + dy * dy <= kPairRadius * kPairRadius) {
                    x = std::int8_t(dx);
                    y = std::int8_t(dy);
                    return;
                }
            }
        };
        for (int i = 0; i < 256; ++i) {
            draw(pat.ax[i], pat.ay[i]);
            draw(pat.bx[i], pat.by[i]);
        }
        return pat;
    }();
    return p;
}

ImageF harris_response(const ImageF& s) {
    const int w = s.width, h = s.height;
    ImageF ix(w, h), iy(w, h);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            const int xm = std::max(x - 1, 0), xp = std::min(x + 1, w - 1);
            const int ym = std::max(y - 1, 0), yp = std::min(y + 1, h - 1);
            ix.at(x, y) = 0.5f * (s.at(xp, y) - s.at(xm, y));
            iy.at(x, y) = 0.5f * (s.at(x, yp) - s.at(x, ym));
        }
    ImageF r(w, h);
    for (int y = 1; y < h - 1; ++y)
        for (int x = 1; x < w - 1; ++x) {
            float sxx = 0, syy = 0, sxy = 0;
            for (int dy = -1; dy <= 1; ++dy)
                for (int dx = -1; dx <= 1; ++dx) {
                    const float gx = ix.at(x + dx, y + dy);
                    const float gy = iy.at(x + dx, y + dy);
                    sxx += gx * gx;
                    syy += gy * gy;
                    sxy += gx * gy;
                }
            const float tr = sxx + syy;
            r.at(x, y) = sxx * syy - sxy * sxy - kHarrisK * tr * tr;
        }
    return r;
}

float orientation(const ImageF& s, int cx, int cy) {
    double m10 = 0, m01 = 0;
    for (int dy = -kOrientationRadius; dy <= kOrientationRadius; ++dy)
        for (int dx = -kOrientationRadius; dx <= kOrientationRadius; ++dx) {
            if (dx * dx + dy * dy > kOrientationRadius * kOrientationRadius) continue;
            const float v = s.at(cx + dx, cy + dy);
            m10 += dx * v;
            m01 += dy * v;
        }
    return float(std::atan2(m01, m10));
}

Descriptor describe(const ImageF& s, int cx, int cy, float angle) {
    const PairPattern& pat = pattern();
    const double ca = std::cos(double(angle)), sa = std::sin(double(angle));
    Descriptor d{};
    for (int i = 0; i < 256; ++i) {
        const long rax = std::lround(ca * pat.ax[i] - sa * pat.ay[i]);
        const long ray = std::lround(sa * pat.ax[i] + ca * pat.ay[i]);
        const long rbx = std::lround(ca * pat.bx[i] - sa * pat.by[i]);
        const long rby = std::lround(sa * pat.bx[i] + ca * pat.by[i]);
        const float va = s.at(cx + int(rax), cy + int(ray));
        const float vb = s.at(cx + int(rbx), cy + int(rby));
        if (va < vb) d[i / 64] |= (1ULL << (i % 64));
    }
    return d;
}

}  // namespace

int hamming_distance(const Descriptor& a, const Descriptor& b) {
    int d = 0;
    for (int i = 0; i < 4; ++i) d += std::popcount(a[i] ^ b[i]);
    return d;
}

FeatureSet detect_features(const Image8& pixels, const std::string& image_id,
                           int max_per_cell, int grid) {
    if (pixels.width <= 0 || pixels.height <= 0)
        throw Error(ErrorCode::empty_input, "cannot detect features on an empty image");
    if (std::min(pixels.width, pixels.height) / 2 < kPatchRadius)
        throw Error(ErrorCode::bounds,
                    "image too small for the descriptor patch: " + image_id);
    if (grid < 1 || max_per_cell < 1)
        throw Error(ErrorCode::internal, "grid and max_per_cell must be >= 1");

    const ImageF smooth = box3(to_luma(pixels));
    const ImageF resp = harris_response(smooth);
    const int w = pixels.width, h = pixels.height;

    struct Candidate {
        int x, y;
        float score;
    };
    std::vector<std::vector<Candidate>> cells(std::size_t(grid) * grid);

    for (int y = kBorder; y < h - kBorder; ++y)
        for (int x = kBorder; x < w - kBorder; ++x) {
            const float v = resp.at(x, y);
            if (v < kHarrisFloor) continue;
            // 3x3 non-max suppression; scan-order earlier neighbors win ties.
            bool is_max = v > resp.at(x + 1, y) && v > resp.at(x - 1, y + 1) &&
                          v > resp.at(x, y + 1) && v > resp.at(x + 1, y + 1) &&
                          v >= resp.at(x - 1, y) && v >= resp.at(x - 1, y - 1) &&
                          v >= resp.at(x, y - 1) && v >= resp.at(x + 1, y - 1);
            if (!is_max) continue;
            const int cx = std::min(int(std::int64_t(x) * grid / w), grid - 1);
            const int cy = std::min(int(std::int64_t(y) * grid / h), grid - 1);
            cells[std::size_t(cy) * grid + cx].push_back({x, y, v});
        }

    std::vector<Candidate> kept;
    for (auto& cell : cells) {
        std::stable_sort(cell.begin(), cell.end(), [](const Candidate& a, const Candidate& b) {
            if (a.score != b.score) return a.score > b.score;
            if (a.y != b.y) return a.y < b.y;
            return a.x < b.x;
        });
        if (int(cell.size()) > max_per_cell) cell.resize(std::size_t(max_per_cell));
        kept.insert(kept.end(), cell.begin(), cell.end());
    }
    std::sort(kept.begin(), kept.end(), [](const Candidate& a, const Candidate& b) {
        if (a.y != b.y) return a.y < b.y;
        return a.x < b.x;
    });

    FeatureSet fs;
    fs.image_id = image_id;
    fs.keypoints.reserve(kept.size());
    fs.descriptors.reserve(kept.size());
    for (const Candidate& c : kept) {
        const float ang = orientation(smooth, c.x, c.y);
        fs.keypoints.push_back({double(c.x), double(c.y), c.score, ang});
        fs.descriptors.push_back(describe(smooth, c.x, c.y, ang));
    }
    return fs;
}

FeatureSet detect_features(const ImageRecord& image, int max_per_cell, int grid) {
    return detect_features(image.pixels, image.id, max_per_cell, grid);
}

MatchSet match_features(const FeatureSet& a, const FeatureSet& b, int max_hamming,
                        double ratio) {
    MatchSet out;
    const int na = int(a.size()), nb = int(b.size());
    if (na == 0 || nb == 0)
        throw Error(ErrorCode::empty_input, "cannot match empty feature sets");

    // Nearest and second-nearest neighbor of each a-descriptor in b.
    std::vector<int> best_b(na, -1), best_d(na, 257), second_d(na, 257);
    for (int i = 0; i < na; ++i) {
        for (int j = 0; j < nb; ++j) {
            const int d = hamming_distance(a.descriptors[i], b.descriptors[j]);
            if (d < best_d[i]) {
                second_d[i] = best_d[i];
                best_d[i] = d;
                best_b[i] = j;
            } else if (d < second_d[i]) {
                second_d[i] = d;
            }
        }
    }
    std::vector<int> best_a(nb, -1), best_da(nb, 257);
    for (int j = 0; j < nb; ++j)
        for (int i = 0; i < na; ++i) {
            const int d = hamming_distance(a.descriptors[i], b.descriptors[j]);
            if (d < best_da[j]) {
                best_da[j] = d;
                best_a[j] = i;
            }
        }

    for (int i = 0; i < na; ++i) {
        const int j = best_b[i];
        if (j < 0 || best_a[j] != i) continue;  // mutual check
        if (best_d[i] > max_hamming) continue;
        if (double(best_d[i]) > ratio * double(second_d[i])) continue;
        out.pairs.push_back({i, j, 1.0 - double(best_d[i]) / 256.0});
        out.points_a.push_back({a.keypoints[i].x, a.keypoints[i].y});
        out.points_b.push_back({b.keypoints[j].x, b.keypoints[j].y});
    }
    return out;
}

MatchSet load_external_matches(const std::string& path, const std::string& a_id,
                               const std::string& b_id) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::io, "cannot open match file: " + path);

    std::string header;
    if (!std::getline(in, header))
        throw Error(ErrorCode::io, "empty match file: " + path);

    std::map<std::string, std::string> fields;
    {
        std::istringstream hs(header);
        std::string tok;
        while (hs >> tok) {
            const std::size_t eq = tok.find('=');
            if (eq == std::string::npos)
                throw Error(ErrorCode::io, path + ": malformed header token '" + tok + "'");
            fields[tok.substr(0, eq)] = tok.substr(eq + 1);
        }
    }
    for (const char* key : {"a", "b", "wa", "ha", "wb", "hb"})
        if (!fields.count(key))
            throw Error(ErrorCode::io, path + ": header missing field '" + std::string(key) + "'");
    if (fields["a"] != a_id || fields["b"] != b_id)
        throw Error(ErrorCode::io, path + ": header ids (" + fields["a"] + ", " + fields["b"] +
                                       ") do not match requested pair (" + a_id + ", " + b_id +
                                       ")");
    const double wa = std::stod(fields["wa"]), ha = std::stod(fields["ha"]);
    const double wb = std::stod(fields["wb"]), hb = std::stod(fields["hb"]);

    MatchSet out;
    std::set<std::pair<double, double>> seen_a, seen_b;
    std::string line;
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        std::istringstream ls(line);
        double xa, ya, xb, yb, score;
        if (!(ls >> xa >> ya >> xb >> yb >> score))
            throw Error(ErrorCode::io, path + ": malformed record at line " +
                                           std::to_string(line_no));
        std::string extra;
        if (ls >> extra)
            throw Error(ErrorCode::io, path + ": trailing data at line " +
                                           std::to_string(line_no));
        if (xa < 0 || ya < 0 || xa > wa - 1 || ya > ha - 1)
            throw Error(ErrorCode::bounds, path + ": point in image a out of bounds at line " +
                                               std::to_string(line_no));
        if (xb < 0 || yb < 0 || xb > wb - 1 || yb > hb - 1)
            throw Error(ErrorCode::bounds, path + ": point in image b out of bounds at line " +
                                               std::to_string(line_no));
        if (score < 0.0 || score > 1.0)
            throw Error(ErrorCode::io, path + ": score outside [0, 1] at line " +
                                           std::to_string(line_no));
        if (!seen_a.insert({xa, ya}).second)
            throw Error(ErrorCode::io, path + ": duplicate image-a point at line " +
                                           std::to_string(line_no) +
                                           " violates one-to-one matching");
        if (!seen_b.insert({xb, yb}).second)
            throw Error(ErrorCode::io, path + ": duplicate image-b point at line " +
                                           std::to_string(line_no) +
                                           " violates one-to-one matching");
        const int idx = int(out.pairs.size());
        out.pairs.push_back({idx, idx, score});
        out.points_a.push_back({xa, ya});
        out.points_b.push_back({xb, yb});
    }
    return out;
}

}  // namespace rowmosaic
