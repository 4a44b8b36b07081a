#pragma once

#include <cstdint>
#include <vector>

namespace rowmosaic {

// Interleaved 8-bit RGB buffer. Pixel (x, y) starts at data[3 * (y * width + x)].
struct Image8 {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> data;

    Image8() = default;
    Image8(int w, int h) : width(w), height(h), data(std::size_t(w) * h * 3, 0) {}

    static Image8 filled(int w, int h, std::uint8_t r, std::uint8_t g, std::uint8_t b) {
        Image8 img(w, h);
        for (std::size_t i = 0; i < img.data.size(); i += 3) {
            img.data[i] = r;
            img.data[i + 1] = g;
            img.data[i + 2] = b;
        }
        return img;
    }

    bool empty() const { return width == 0 || height == 0; }

    std::uint8_t* px(int x, int y) { return data.data() + 3 * (std::size_t(y) * width + x); }
    const std::uint8_t* px(int x, int y) const {
        return data.data() + 3 * (std::size_t(y) * width + x);
    }
    std::uint8_t at(int x, int y, int c) const { return px(x, y)[c]; }

    bool operator==(const Image8&) const = default;
};

// Single-channel 8-bit mask; 0 means empty, anything else valid.
struct Mask8 {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> data;

    Mask8() = default;
    Mask8(int w, int h, std::uint8_t fill = 0)
        : width(w), height(h), data(std::size_t(w) * h, fill) {}

    bool at(int x, int y) const { return data[std::size_t(y) * width + x] != 0; }
    void set(int x, int y, bool v = true) { data[std::size_t(y) * width + x] = v ? 255 : 0; }

    std::size_t count() const {
        std::size_t n = 0;
        for (std::uint8_t v : data) n += (v != 0);
        return n;
    }

    bool operator==(const Mask8&) const = default;
};

// Single-channel float plane used for luma, responses, and pyramids.
struct ImageF {
    int width = 0;
    int height = 0;
    std::vector<float> data;

    ImageF() = default;
    ImageF(int w, int h, float fill = 0.f)
        : width(w), height(h), data(std::size_t(w) * h, fill) {}

    float at(int x, int y) const { return data[std::size_t(y) * width + x]; }
    float& at(int x, int y) { return data[std::size_t(y) * width + x]; }
};

Image8 crop(const Image8& img, int x0, int y0, int w, int h);
Mask8 crop(const Mask8& m, int x0, int y0, int w, int h);
Image8 transpose(const Image8& img);
Mask8 transpose(const Mask8& m);

// Rec.601 luma.
ImageF to_luma(const Image8& img);
// 3x3 box smoothing with replicate borders.
ImageF box3(const ImageF& src);

// Bilinear sample with clamped coordinates; returns false when (x, y) is
// outside [0, w-1] x [0, h-1].
bool sample_bilinear(const Image8& img, double x, double y, double out[3]);

// Mask-aware bilinear sample: invalid neighbors get zero weight and the
// result is renormalized. Returns the total valid weight in [0, 1].
double sample_bilinear_masked(const Image8& img, const Mask8& mask, double x, double y,
                              double out[3]);

}  // namespace rowmosaic
