#include "rowmosaic/config.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

#include "rowmosaic/errors.hpp"

namespace rowmosaic {

namespace {

[[noreturn]] void fail(const std::string& field, const std::string& value,
                       const std::string& rule) {
    throw Error(ErrorCode::config, field + ": value " + value + " " + rule);
}

void check(bool ok, const std::string& field, double value, const std::string& rule) {
    if (!ok) fail(field, std::to_string(value), rule);
}

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

double parse_number(const std::string& key, const std::string& value) {
    try {
        std::size_t used = 0;
        double v = std::stod(value, &used);
        if (used != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw Error(ErrorCode::config, key + ": malformed value '" + value + "'");
    }
}

long long parse_int(const std::string& key, const std::string& value) {
    try {
        std::size_t used = 0;
        long long v = std::stoll(value, &used);
        if (used != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw Error(ErrorCode::config, key + ": malformed value '" + value + "'");
    }
}

std::uint64_t parse_u64(const std::string& key, const std::string& value) {
    try {
        std::size_t used = 0;
        std::uint64_t v = std::stoull(value, &used);
        if (used != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw Error(ErrorCode::config, key + ": malformed value '" + value + "'");
    }
}

}  // namespace

PipelineConfig validate_config(const PipelineConfig& raw) {
    const PipelineConfig& c = raw;
    check(c.window >= 1, "window", c.window, "must be >= 1");
    check(c.batch_size >= 3, "batch_size", c.batch_size, "must be >= 3");
    check(c.edge_fraction > 0 && c.edge_fraction <= 0.5, "edge_fraction", c.edge_fraction,
          "must be in (0, 0.5]");
    check(c.min_prefilter_matches >= 4, "min_prefilter_matches", c.min_prefilter_matches,
          "must be >= 4");
    check(c.ransac_threshold_px > 0, "ransac_threshold_px", c.ransac_threshold_px,
          "must be > 0");
    check(c.ransac_iterations >= 1, "ransac_iterations", c.ransac_iterations, "must be >= 1");
    check(c.min_inliers >= 4, "min_inliers", c.min_inliers, "must be >= 4");
    check(c.prune_fraction >= 0 && c.prune_fraction <= 0.5, "prune_fraction", c.prune_fraction,
          "must be in [0, 0.5]");
    check(c.max_rms_px > 0, "max_rms_px", c.max_rms_px, "must be > 0");
    check(c.blend_levels >= 1, "blend_levels", c.blend_levels, "must be >= 1");
    check(c.straighten_tolerance_px > 0, "straighten_tolerance_px", c.straighten_tolerance_px,
          "must be > 0");
    const MotionConstraints& m = c.motion;
    check(m.stitch_sign == 1 || m.stitch_sign == -1, "motion.stitch_sign", m.stitch_sign,
          "must be +1 or -1");
    check(m.min_advance_px >= 0, "motion.min_advance_px", m.min_advance_px,
          "must be > 0 (or 0 for auto)");
    check(m.max_ortho_ratio > 0, "motion.max_ortho_ratio", m.max_ortho_ratio, "must be > 0");
    check(m.scale_bounds.min > 0 && m.scale_bounds.min <= 1.0,
          "motion.scale_bounds.min", m.scale_bounds.min, "must be in (0, 1]");
    check(m.scale_bounds.max >= 1.0, "motion.scale_bounds.max", m.scale_bounds.max,
          "must be >= 1");
    check(m.max_rotation_deg > 0 && m.max_rotation_deg < 90, "motion.max_rotation_deg",
          m.max_rotation_deg, "must be in (0, 90)");
    return c;
}

PipelineConfig parse_config_text(const std::string& text) {
    PipelineConfig cfg;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const std::size_t colon = line.find(':');
        if (colon == std::string::npos)
            throw Error(ErrorCode::config,
                        "line " + std::to_string(line_no) + ": expected 'key: value'");
        const std::string key = trim(line.substr(0, colon));
        const std::string value = trim(line.substr(colon + 1));
        if (key.empty() || value.empty())
            throw Error(ErrorCode::config,
                        "line " + std::to_string(line_no) + ": expected 'key: value'");

        if (key == "window") cfg.window = int(parse_int(key, value));
        else if (key == "batch_size") cfg.batch_size = int(parse_int(key, value));
        else if (key == "edge_fraction") cfg.edge_fraction = parse_number(key, value);
        else if (key == "min_prefilter_matches")
            cfg.min_prefilter_matches = int(parse_int(key, value));
        else if (key == "ransac_threshold_px") cfg.ransac_threshold_px = parse_number(key, value);
        else if (key == "ransac_iterations") cfg.ransac_iterations = int(parse_int(key, value));
        else if (key == "ransac_seed") cfg.ransac_seed = parse_u64(key, value);
        else if (key == "min_inliers") cfg.min_inliers = int(parse_int(key, value));
        else if (key == "prune_fraction") cfg.prune_fraction = parse_number(key, value);
        else if (key == "max_rms_px") cfg.max_rms_px = parse_number(key, value);
        else if (key == "warp_mode") {
            if (value == "perspective") cfg.warp_mode = WarpMode::perspective;
            else if (value == "partial_affine") cfg.warp_mode = WarpMode::partial_affine;
            else throw Error(ErrorCode::config, "warp_mode: unknown value '" + value + "'");
        } else if (key == "blend_levels") cfg.blend_levels = int(parse_int(key, value));
        else if (key == "straighten_tolerance_px")
            cfg.straighten_tolerance_px = parse_number(key, value);
        else if (key == "motion.stitch_axis") {
            if (value == "horizontal") cfg.motion.stitch_axis = StitchAxis::horizontal;
            else if (value == "vertical") cfg.motion.stitch_axis = StitchAxis::vertical;
            else
                throw Error(ErrorCode::config,
                            "motion.stitch_axis: unknown value '" + value + "'");
        } else if (key == "motion.stitch_sign")
            cfg.motion.stitch_sign = int(parse_int(key, value));
        else if (key == "motion.min_advance_px")
            cfg.motion.min_advance_px = parse_number(key, value);
        else if (key == "motion.max_ortho_ratio")
            cfg.motion.max_ortho_ratio = parse_number(key, value);
        else if (key == "motion.scale_bounds.min")
            cfg.motion.scale_bounds.min = parse_number(key, value);
        else if (key == "motion.scale_bounds.max")
            cfg.motion.scale_bounds.max = parse_number(key, value);
        else if (key == "motion.max_rotation_deg")
            cfg.motion.max_rotation_deg = parse_number(key, value);
        else
            throw Error(ErrorCode::config, "unknown config key '" + key + "'");
    }
    return validate_config(cfg);
}

PipelineConfig parse_config_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::io, "cannot open config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str());
}

std::string config_to_text(const PipelineConfig& c) {
    std::ostringstream out;
    out << "window: " << c.window << "\n";
    out << "batch_size: " << c.batch_size << "\n";
    out << "edge_fraction: " << c.edge_fraction << "\n";
    out << "min_prefilter_matches: " << c.min_prefilter_matches << "\n";
    out << "ransac_threshold_px: " << c.ransac_threshold_px << "\n";
    out << "ransac_iterations: " << c.ransac_iterations << "\n";
    out << "ransac_seed: " << c.ransac_seed << "\n";
    out << "min_inliers: " << c.min_inliers << "\n";
    out << "prune_fraction: " << c.prune_fraction << "\n";
    out << "max_rms_px: " << c.max_rms_px << "\n";
    out << "warp_mode: " << to_string(c.warp_mode) << "\n";
    out << "blend_levels: " << c.blend_levels << "\n";
    out << "straighten_tolerance_px: " << c.straighten_tolerance_px << "\n";
    out << "motion.stitch_axis: " << to_string(c.motion.stitch_axis) << "\n";
    out << "motion.stitch_sign: " << c.motion.stitch_sign << "\n";
    out << "motion.min_advance_px: " << c.motion.min_advance_px << "\n";
    out << "motion.max_ortho_ratio: " << c.motion.max_ortho_ratio << "\n";
    out << "motion.scale_bounds.min: " << c.motion.scale_bounds.min << "\n";
    out << "motion.scale_bounds.max: " << c.motion.scale_bounds.max << "\n";
    out << "motion.max_rotation_deg: " << c.motion.max_rotation_deg << "\n";
    return out.str();
}

}  // namespace rowmosaic
