#include "omnideblur/image_io.hpp"

#include <png.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>
#include <vector>

namespace omnideblur {

namespace {

constexpr double kLumaR = 0.299, kLumaG = 0.587, kLumaB = 0.114;

int read_pnm_token(std::istream& in) {
  // Skips whitespace and '#' comments, then reads one unsigned integer.
  for (;;) {
    int c = in.peek();
    if (c == '#') {
      std::string line;
      std::getline(in, line);
    } else if (c != EOF && std::isspace((unsigned char)c)) {
      in.get();
    } else {
      break;
    }
  }
  int value = -1;
  in >> value;
  return value;
}

RasterImage load_pgm(std::ifstream& in, const std::string& path) {
  char magic[2] = {0, 0};
  in.read(magic, 2);
  if (magic[0] != 'P' || magic[1] != '5') {
    throw IoError("load_image: not a binary PGM: " + path);
  }
  const int w = read_pnm_token(in);
  const int h = read_pnm_token(in);
  const int maxval = read_pnm_token(in);
  if (w < 1 || h < 1 || maxval < 1 || maxval > 65535) {
    throw IoError("load_image: malformed PGM header: " + path);
  }
  in.get();  // single whitespace before the raster

  const std::size_t count = std::size_t(w) * h;
  RasterImage img(w, h);
  if (maxval < 256) {
    std::vector<unsigned char> raw(count);
    in.read(reinterpret_cast<char*>(raw.data()), std::streamsize(count));
    if (!in) throw IoError("load_image: truncated PGM raster: " + path);
    for (std::size_t i = 0; i < count; ++i) {
      img.data()[i] = raw[i] / double(maxval);
    }
  } else {
    std::vector<unsigned char> raw(count * 2);  // big-endian 16-bit
    in.read(reinterpret_cast<char*>(raw.data()), std::streamsize(raw.size()));
    if (!in) throw IoError("load_image: truncated PGM raster: " + path);
    for (std::size_t i = 0; i < count; ++i) {
      const unsigned v = unsigned(raw[2 * i]) << 8 | raw[2 * i + 1];
      img.data()[i] = v / double(maxval);
    }
  }
  return img;
}

struct PngReadCloser {
  png_structp png = nullptr;
  png_infop info = nullptr;
  FILE* fp = nullptr;
  ~PngReadCloser() {
    if (png) png_destroy_read_struct(&png, info ? &info : nullptr, nullptr);
    if (fp) std::fclose(fp);
  }
};

RasterImage load_png(const std::string& path) {
  PngReadCloser ctx;
  ctx.fp = std::fopen(path.c_str(), "rb");
  if (!ctx.fp) throw IoError("load_image: cannot open " + path);

  ctx.png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  if (!ctx.png) throw IoError("load_image: png init failed: " + path);
  ctx.info = png_create_info_struct(ctx.png);
  if (!ctx.info) throw IoError("load_image: png init failed: " + path);
  if (setjmp(png_jmpbuf(ctx.png))) {
    throw IoError("load_image: png decode error: " + path);
  }
  png_init_io(ctx.png, ctx.fp);
  png_read_info(ctx.png, ctx.info);

  const int w = int(png_get_image_width(ctx.png, ctx.info));
  const int h = int(png_get_image_height(ctx.png, ctx.info));
  const int color = png_get_color_type(ctx.png, ctx.info);
  int depth = png_get_bit_depth(ctx.png, ctx.info);

  if (color == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(ctx.png);
  if (color == PNG_COLOR_TYPE_GRAY && depth < 8) png_set_expand_gray_1_2_4_to_8(ctx.png);
  if (png_get_valid(ctx.png, ctx.info, PNG_INFO_tRNS)) png_set_tRNS_to_alpha(ctx.png);
  if (color & PNG_COLOR_MASK_ALPHA) png_set_strip_alpha(ctx.png);
  if (depth == 16) png_set_swap(ctx.png);  // little-endian reads below
  png_set_interlace_handling(ctx.png);
  png_read_update_info(ctx.png, ctx.info);

  depth = png_get_bit_depth(ctx.png, ctx.info);
  const int channels = png_get_channels(ctx.png, ctx.info);
  const std::size_t stride = png_get_rowbytes(ctx.png, ctx.info);

  std::vector<unsigned char> raster(stride * h);
  std::vector<png_bytep> rows(h);
  for (int y = 0; y < h; ++y) rows[y] = raster.data() + stride * y;
  png_read_image(ctx.png, rows.data());

  const double maxval = depth == 16 ? 65535.0 : 255.0;
  RasterImage img(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      double v;
      if (depth == 16) {
        const auto* px = reinterpret_cast<const unsigned short*>(rows[y]) +
                         std::size_t(x) * channels;
        v = channels >= 3 ? kLumaR * px[0] + kLumaG * px[1] + kLumaB * px[2]
                          : double(px[0]);
      } else {
        const unsigned char* px = rows[y] + std::size_t(x) * channels;
        v = channels >= 3 ? kLumaR * px[0] + kLumaG * px[1] + kLumaB * px[2]
                          : double(px[0]);
      }
      img.at(x, y) = v / maxval;
    }
  }
  return img;
}

void save_pgm(const RasterImage& image, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("save_image: cannot open " + path);
  out << "P5\n" << image.width() << " " << image.height() << "\n255\n";
  std::vector<unsigned char> raw(image.size());
  for (std::size_t i = 0; i < image.size(); ++i) {
    const double v = std::clamp(image.data()[i], 0.0, 1.0);
    raw[i] = (unsigned char)(std::lround(v * 255.0));
  }
  out.write(reinterpret_cast<const char*>(raw.data()), std::streamsize(raw.size()));
  if (!out) throw IoError("save_image: write failed: " + path);
}

struct PngWriteCloser {
  png_structp png = nullptr;
  png_infop info = nullptr;
  FILE* fp = nullptr;
  ~PngWriteCloser() {
    if (png) png_destroy_write_struct(&png, info ? &info : nullptr);
    if (fp) std::fclose(fp);
  }
};

void save_png(const RasterImage& image, const std::string& path) {
  PngWriteCloser ctx;
  ctx.fp = std::fopen(path.c_str(), "wb");
  if (!ctx.fp) throw IoError("save_image: cannot open " + path);
  ctx.png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  if (!ctx.png) throw IoError("save_image: png init failed: " + path);
  ctx.info = png_create_info_struct(ctx.png);
  if (!ctx.info) throw IoError("save_image: png init failed: " + path);
  if (setjmp(png_jmpbuf(ctx.png))) {
    throw IoError("save_image: png encode error: " + path);
  }
  png_init_io(ctx.png, ctx.fp);
  png_set_IHDR(ctx.png, ctx.info, image.width(), image.height(), 8,
               PNG_COLOR_TYPE_GRAY, PNG_INTERLACE_NONE,
               PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  png_write_info(ctx.png, ctx.info);

  std::vector<unsigned char> row(image.width());
  for (int y = 0; y < image.height(); ++y) {
    for (int x = 0; x < image.width(); ++x) {
      const double v = std::clamp(image.at(x, y), 0.0, 1.0);
      row[x] = (unsigned char)(std::lround(v * 255.0));
    }
    png_write_row(ctx.png, row.data());
  }
  png_write_end(ctx.png, nullptr);
}

bool has_suffix(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() &&
         s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

}  // namespace

RasterImage load_image(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("load_image: cannot open " + path);
  unsigned char magic[2] = {0, 0};
  in.read(reinterpret_cast<char*>(magic), 2);
  in.seekg(0);
  RasterImage img;
  if (magic[0] == 'P' && magic[1] == '5') {
    img = load_pgm(in, path);
  } else if (magic[0] == 0x89 && magic[1] == 'P') {
    in.close();
    img = load_png(path);
  } else {
    throw IoError("load_image: unsupported format (expected PGM or PNG): " + path);
  }
  if (!img.all_finite()) {
    throw IoError("load_image: non-finite pixel values: " + path);
  }
  return img;
}

void save_image(const RasterImage& image, const std::string& path) {
  if (has_suffix(path, ".png")) {
    save_png(image, path);
  } else if (has_suffix(path, ".pgm")) {
    save_pgm(image, path);
  } else {
    throw IoError("save_image: unsupported extension (use .pgm or .png): " + path);
  }
}

BlurKernel load_kernel(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("load_kernel: cannot open " + path);
  int side = 0;
  in >> side;
  if (!in || side < 1 || side % 2 == 0) {
    throw IoError("load_kernel: bad side in " + path);
  }
  std::vector<double> w(std::size_t(side) * side);
  for (double& v : w) {
    in >> v;
    if (!in) throw IoError("load_kernel: truncated kernel in " + path);
    if (!std::isfinite(v) || v < -1e-9) {
      throw IoError("load_kernel: negative or non-finite weight in " + path);
    }
    if (v < 0.0) v = 0.0;
  }
  BlurKernel k(side, std::move(w));
  k.project();
  return k;
}

void save_kernel(const BlurKernel& kernel, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("save_kernel: cannot open " + path);
  out << kernel.side() << "\n";
  char buf[32];
  for (int y = 0; y < kernel.side(); ++y) {
    for (int x = 0; x < kernel.side(); ++x) {
      std::snprintf(buf, sizeof buf, "%.17g", kernel.at(x, y));
      out << buf << (x + 1 == kernel.side() ? "\n" : " ");
    }
  }
  if (!out) throw IoError("save_kernel: write failed: " + path);
}

}  // namespace omnideblur
