#pragma once

#include <string>

#include "omnideblur/raster.hpp"

namespace omnideblur {

/// Reads a PGM (P5, 8/16-bit) or PNG (grayscale/RGB, 8/16-bit) file into
/// [0,1] intensities. Colour inputs are reduced to Rec.601 luminance
/// 0.299 R + 0.587 G + 0.114 B.
RasterImage load_image(const std::string& path);

/// Writes 8-bit grayscale; the format follows the extension (.pgm -> binary
/// P5, .png -> PNG). Values are clamped to [0,1] and scaled by 255.
void save_image(const RasterImage& image, const std::string& path);

/// Kernel text format: first line the side, then side rows of side
/// space-separated decimals. The reader renormalises to sum 1 and rejects
/// entries below -1e-9 (smaller negatives are clamped to zero).
BlurKernel load_kernel(const std::string& path);
void save_kernel(const BlurKernel& kernel, const std::string& path);

}  // namespace omnideblur
