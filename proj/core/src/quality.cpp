#include "omnideblur/quality.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace omnideblur {

double mse(const RasterImage& a, const RasterImage& b) {
  if (!a.same_size(b)) {
    throw DimensionError("mse: image dimensions differ");
  }
  double s = 0.0;
  for (std::size_t i = 0; i < a.data().size(); ++i) {
    const double d = a.data()[i] - b.data()[i];
    s += d * d;
  }
  return s / double(a.size());
}

double psnr(const RasterImage& a, const RasterImage& b, double max_i) {
  if (!(max_i > 0.0)) throw ConfigError("psnr: max_i must be positive");
  const double m = mse(a, b);
  if (m == 0.0) return std::numeric_limits<double>::infinity();
  return 10.0 * std::log10(max_i * max_i / m);
}

HaarSubbands haar_decompose(const RasterImage& img) {
  const int w = img.width();
  const int h = img.height();
  if (w < 2 || h < 2) {
    throw DimensionError("haar_decompose: needs at least 2x2 pixels");
  }
  const int ow = (w + 1) / 2;
  const int oh = (h + 1) / 2;
  HaarSubbands sb{RasterImage(ow, oh), RasterImage(ow, oh), RasterImage(ow, oh),
                  RasterImage(ow, oh)};
  for (int y = 0; y < oh; ++y) {
    const int y0 = 2 * y;
    const int y1 = std::min(2 * y + 1, h - 1);  // replicate last row
    for (int x = 0; x < ow; ++x) {
      const int x0 = 2 * x;
      const int x1 = std::min(2 * x + 1, w - 1);  // replicate last column
      const double a = img.at(x0, y0);
      const double b = img.at(x1, y0);
      const double c = img.at(x0, y1);
      const double d = img.at(x1, y1);
      sb.ll.at(x, y) = 0.5 * (a + b + c + d);
      sb.lh.at(x, y) = 0.5 * (a - b + c - d);
      sb.hl.at(x, y) = 0.5 * (a + b - c - d);
      sb.hh.at(x, y) = 0.5 * (a - b - c + d);
    }
  }
  return sb;
}

DefocusScore defocus_score(const RasterImage& img, double scale) {
  const HaarSubbands sb = haar_decompose(img);
  const std::vector<double>& hh = sb.hh.data();
  const double n = double(hh.size());
  double mean = 0.0;
  for (double v : hh) mean += v;
  mean /= n;
  double var = 0.0;
  for (double v : hh) {
    const double d = v - mean;
    var += d * d;
  }
  var /= n;  // population variance
  const double sigma_d = scale * std::sqrt(var);
  return {std::exp(-sigma_d), sigma_d};
}

}  // namespace omnideblur
