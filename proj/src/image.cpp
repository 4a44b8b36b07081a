#include "rowmosaic/image.hpp"

#include <algorithm>
#include <cmath>

#include "rowmosaic/errors.hpp"

namespace rowmosaic {

Image8 crop(const Image8& img, int x0, int y0, int w, int h) {
    if (x0 < 0 || y0 < 0 || w <= 0 || h <= 0 || x0 + w > img.width || y0 + h > img.height)
        throw Error(ErrorCode::bounds, "crop rectangle outside image");
    Image8 out(w, h);
    for (int y = 0; y < h; ++y)
        std::copy_n(img.px(x0, y0 + y), std::size_t(w) * 3, out.px(0, y));
    return out;
}

Mask8 crop(const Mask8& m, int x0, int y0, int w, int h) {
    if (x0 < 0 || y0 < 0 || w <= 0 || h <= 0 || x0 + w > m.width || y0 + h > m.height)
        throw Error(ErrorCode::bounds, "crop rectangle outside mask");
    Mask8 out(w, h);
    for (int y = 0; y < h; ++y)
        std::copy_n(m.data.data() + std::size_t(y0 + y) * m.width + x0, w,
                    out.data.data() + std::size_t(y) * w);
    return out;
}

Image8 transpose(const Image8& img) {
    Image8 out(img.height, img.width);
    for (int y = 0; y < img.height; ++y)
        for (int x = 0; x < img.width; ++x) {
            const std::uint8_t* s = img.px(x, y);
            std::uint8_t* d = out.px(y, x);
            d[0] = s[0];
            d[1] = s[1];
            d[2] = s[2];
        }
    return out;
}

Mask8 transpose(const Mask8& m) {
    Mask8 out(m.height, m.width);
    for (int y = 0; y < m.height; ++y)
        for (int x = 0; x < m.width; ++x)
            out.data[std::size_t(x) * m.height + y] = m.data[std::size_t(y) * m.width + x];
    return out;
}

ImageF to_luma(const Image8& img) {
    ImageF out(img.width, img.height);
    const std::uint8_t* p = img.data.data();
    for (std::size_t i = 0; i < out.data.size(); ++i, p += 3)
        out.data[i] = 0.299f * p[0] + 0.587f * p[1] + 0.114f * p[2];
    return out;
}

ImageF box3(const ImageF& src) {
    const int w = src.width, h = src.height;
    ImageF tmp(w, h), out(w, h);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            const int xm = std::max(x - 1, 0), xp = std::min(x + 1, w - 1);
            tmp.at(x, y) = (src.at(xm, y) + src.at(x, y) + src.at(xp, y)) / 3.f;
        }
    for (int y = 0; y < h; ++y) {
        const int ym = std::max(y - 1, 0), yp = std::min(y + 1, h - 1);
        for (int x = 0; x < w; ++x)
            out.at(x, y) = (tmp.at(x, ym) + tmp.at(x, y) + tmp.at(x, yp)) / 3.f;
    }
    return out;
}

bool sample_bilinear(const Image8& img, double x, double y, double out[3]) {
    if (x < 0 || y < 0 || x > img.width - 1 || y > img.height - 1) return false;
    const int x0 = int(std::floor(x)), y0 = int(std::floor(y));
    const int x1 = std::min(x0 + 1, img.width - 1), y1 = std::min(y0 + 1, img.height - 1);
    const double fx = x - x0, fy = y - y0;
    const std::uint8_t* p00 = img.px(x0, y0);
    const std::uint8_t* p10 = img.px(x1, y0);
    const std::uint8_t* p01 = img.px(x0, y1);
    const std::uint8_t* p11 = img.px(x1, y1);
    for (int c = 0; c < 3; ++c) {
        const double top = p00[c] + fx * (p10[c] - p00[c]);
        const double bot = p01[c] + fx * (p11[c] - p01[c]);
        out[c] = top + fy * (bot - top);
    }
    return true;
}

double sample_bilinear_masked(const Image8& img, const Mask8& mask, double x, double y,
                              double out[3]) {
    out[0] = out[1] = out[2] = 0.0;
    if (x < 0 || y < 0 || x > img.width - 1 || y > img.height - 1) return 0.0;
    const int x0 = int(std::floor(x)), y0 = int(std::floor(y));
    const int x1 = std::min(x0 + 1, img.width - 1), y1 = std::min(y0 + 1, img.height - 1);
    const double fx = x - x0, fy = y - y0;
    const int xs[4] = {x0, x1, x0, x1};
    const int ys[4] = {y0, y0, y1, y1};
    const double ws[4] = {(1 - fx) * (1 - fy), fx * (1 - fy), (1 - fx) * fy, fx * fy};
    double total = 0.0;
    double acc[3] = {0, 0, 0};
    for (int k = 0; k < 4; ++k) {
        if (ws[k] == 0.0 || !mask.at(xs[k], ys[k])) continue;
        const std::uint8_t* p = img.px(xs[k], ys[k]);
        for (int c = 0; c < 3; ++c) acc[c] += ws[k] * p[c];
        total += ws[k];
    }
    if (total > 0.0)
        for (int c = 0; c < 3; ++c) out[c] = acc[c] / total;
    return total;
}

}  // namespace rowmosaic
