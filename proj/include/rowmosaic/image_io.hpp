#pragma once

#include <string>

#include "rowmosaic/image.hpp"

namespace rowmosaic {

bool has_supported_image_extension(const std::string& path);

// Reads an 8-bit PNG or JPEG as RGB (gray and alpha inputs are converted).
// Other formats are rejected with a clear message.
Image8 read_image(const std::string& path);

void write_png(const std::string& path, const Image8& img);
void write_jpeg(const std::string& path, const Image8& img, int quality = 92);

}  // namespace rowmosaic
