#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <string>

#include "omnideblur/image_io.hpp"
#include "omnideblur/rng.hpp"

using namespace omnideblur;

namespace {

std::string tmp_path(const std::string& name) {
  return std::string("io_test_") + name;
}

struct FileCleanup {
  std::string path;
  ~FileCleanup() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("8-bit round trip stays within the quantisation bound") {
  SeededRng rng(21);
  RasterImage img(17, 13);
  for (double& v : img.data()) v = rng.uniform01();

  for (const char* ext : {".pgm", ".png"}) {
    const std::string path = tmp_path(std::string("rt") + ext);
    FileCleanup cleanup{path};
    save_image(img, path);
    RasterImage back = load_image(path);
    REQUIRE(back.width() == img.width());
    REQUIRE(back.height() == img.height());
    double max_diff = 0.0;
    for (std::size_t i = 0; i < img.data().size(); ++i) {
      max_diff = std::max(max_diff, std::abs(img.data()[i] - back.data()[i]));
    }
    CHECK(max_diff <= 1.0 / 510.0 + 1e-12);
  }
}

TEST_CASE("16-bit PGM values scale into [0,1]") {
  const std::string path = tmp_path("p16.pgm");
  FileCleanup cleanup{path};
  {
    std::ofstream out(path, std::ios::binary);
    out << "P5\n2 2\n65535\n";
    // big-endian: 0, 16384, 32768, 65535
    const unsigned char raw[] = {0x00, 0x00, 0x40, 0x00, 0x80, 0x00, 0xFF, 0xFF};
    out.write(reinterpret_cast<const char*>(raw), sizeof raw);
  }
  RasterImage img = load_image(path);
  CHECK(img.at(0, 0) == doctest::Approx(0.0));
  CHECK(img.at(1, 0) == doctest::Approx(16384.0 / 65535.0));
  CHECK(img.at(0, 1) == doctest::Approx(32768.0 / 65535.0));
  CHECK(img.at(1, 1) == doctest::Approx(1.0));
}

TEST_CASE("PGM comments and whitespace are tolerated") {
  const std::string path = tmp_path("comment.pgm");
  FileCleanup cleanup{path};
  {
    std::ofstream out(path, std::ios::binary);
    out << "P5\n# a comment\n 3 # widths\n1\n255\n";
    const unsigned char raw[] = {0, 128, 255};
    out.write(reinterpret_cast<const char*>(raw), sizeof raw);
  }
  RasterImage img = load_image(path);
  CHECK(img.width() == 3);
  CHECK(img.at(1, 0) == doctest::Approx(128.0 / 255.0));
}

TEST_CASE("missing and malformed files raise IoError with the path") {
  try {
    load_image("definitely_not_here.pgm");
    FAIL("expected IoError");
  } catch (const IoError& e) {
    CHECK(std::string(e.what()).find("definitely_not_here.pgm") != std::string::npos);
  }

  const std::string path = tmp_path("garbage.bin");
  FileCleanup cleanup{path};
  {
    std::ofstream out(path, std::ios::binary);
    out << "not an image at all";
  }
  CHECK_THROWS_AS(load_image(path), IoError);
}

TEST_CASE("kernel text round trip is exact") {
  BlurKernel k(3, std::vector<double>{0.05, 0.1, 0.05, 0.1, 0.4, 0.1, 0.05, 0.1, 0.05});
  const std::string path = tmp_path("k.txt");
  FileCleanup cleanup{path};
  save_kernel(k, path);
  BlurKernel back = load_kernel(path);
  REQUIRE(back.side() == 3);
  for (std::size_t i = 0; i < k.weights().size(); ++i) {
    CHECK(back.weights()[i] == k.weights()[i]);  // %.17g round-trips doubles
  }
}

TEST_CASE("kernel reader renormalises and rejects real negatives") {
  const std::string path = tmp_path("kneg.txt");
  FileCleanup cleanup{path};
  {
    std::ofstream out(path);
    out << "3\n0 2 0\n2 4 2\n0 2 0\n";  // sums to 12
  }
  BlurKernel k = load_kernel(path);
  CHECK(k.sum() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(k.at(1, 1) == doctest::Approx(4.0 / 12.0));

  {
    std::ofstream out(path);
    out << "3\n0 -0.5 0\n0 1 0\n0 0 0\n";
  }
  CHECK_THROWS_AS(load_kernel(path), IoError);

  {
    // a tiny negative within tolerance is clamped
    std::ofstream out(path);
    out << "3\n0 -1e-12 0\n0 1 0\n0 0 0\n";
  }
  BlurKernel k2 = load_kernel(path);
  CHECK(k2.min_weight() == 0.0);
  CHECK(k2.is_feasible());
}
