#include "omnideblur/nonblind.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "omnideblur/convolve.hpp"
#include "omnideblur/latent_solver.hpp"

namespace omnideblur {

namespace {

// Lightweight r2c/c2r transform pair for one fixed size. FFTW_ESTIMATE keeps
// planning deterministic.
class Fft2D {
 public:
  Fft2D(int width, int height)
      : w_(width), h_(height), cw_(width / 2 + 1),
        real_(fftw_alloc_real(std::size_t(w_) * h_)),
        cplx_(fftw_alloc_complex(std::size_t(cw_) * h_)) {
    fwd_ = fftw_plan_dft_r2c_2d(h_, w_, real_, cplx_, FFTW_ESTIMATE);
    bwd_ = fftw_plan_dft_c2r_2d(h_, w_, cplx_, real_, FFTW_ESTIMATE);
  }
  ~Fft2D() {
    fftw_destroy_plan(fwd_);
    fftw_destroy_plan(bwd_);
    fftw_free(real_);
    fftw_free(cplx_);
  }
  Fft2D(const Fft2D&) = delete;
  Fft2D& operator=(const Fft2D&) = delete;

  int spectrum_size() const { return cw_ * h_; }

  std::vector<std::complex<double>> forward(const std::vector<double>& data) {
    std::copy(data.begin(), data.end(), real_);
    fftw_execute(fwd_);
    std::vector<std::complex<double>> out(spectrum_size());
    for (int i = 0; i < spectrum_size(); ++i) {
      out[i] = {cplx_[i][0], cplx_[i][1]};
    }
    return out;
  }

  std::vector<double> inverse(const std::vector<std::complex<double>>& spec) {
    for (int i = 0; i < spectrum_size(); ++i) {
      cplx_[i][0] = spec[i].real();
      cplx_[i][1] = spec[i].imag();
    }
    fftw_execute(bwd_);
    std::vector<double> out(std::size_t(w_) * h_);
    const double norm = 1.0 / (double(w_) * h_);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = real_[i] * norm;
    return out;
  }

 private:
  int w_, h_, cw_;
  double* real_;
  fftw_complex* cplx_;
  fftw_plan fwd_, bwd_;
};

// Kernel embedded at the origin of a w x h frame with circular wrap, so that
// pointwise spectral products realise centre-aligned circular convolution.
std::vector<double> embed_kernel(const BlurKernel& k, int w, int h) {
  std::vector<double> out(std::size_t(w) * h, 0.0);
  const int r = k.radius();
  for (int ky = 0; ky < k.side(); ++ky) {
    for (int kx = 0; kx < k.side(); ++kx) {
      const int x = ((kx - r) % w + w) % w;
      const int y = ((ky - r) % h + h) % h;
      out[std::size_t(y) * w + x] += k.at(kx, ky);
    }
  }
  return out;
}

// |Dx|^2 + |Dy|^2 spectrum for periodic forward differences.
std::vector<double> laplacian_spectrum(int w, int h) {
  std::vector<double> out(std::size_t(w / 2 + 1) * h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x <= w / 2; ++x) {
      const double sx = std::sin(std::numbers::pi * x / double(w));
      const double sy = std::sin(std::numbers::pi * y / double(h));
      // |exp(i 2 pi f) - 1|^2 = 4 sin^2(pi f)
      out[std::size_t(y) * (w / 2 + 1) + x] = 4.0 * sx * sx + 4.0 * sy * sy;
    }
  }
  return out;
}

int next_smooth(int n) {
  // Smallest m >= n whose factors are 2, 3 and 5.
  for (int m = n;; ++m) {
    int v = m;
    for (int f : {2, 3, 5}) {
      while (v % f == 0) v /= f;
    }
    if (v == 1) return m;
  }
}

constexpr int kTaperWidth = 8;

// Replicate-pads to (pw, ph) with the original placed at (ox, oy), then
// blends the padded border toward the kernel-blurred content over an
// 8-pixel ramp so the periodic seam carries no hard edge.
RasterImage pad_and_taper(const RasterImage& y, const BlurKernel& k, int pw,
                          int ph, int ox, int oy) {
  RasterImage padded(pw, ph);
  for (int py = 0; py < ph; ++py) {
    const int sy = std::clamp(py - oy, 0, y.height() - 1);
    for (int px = 0; px < pw; ++px) {
      const int sx = std::clamp(px - ox, 0, y.width() - 1);
      padded.at(px, py) = y.at(sx, sy);
    }
  }
  RasterImage blurred = convolve2d(padded, k, BoundaryPolicy::ReplicateEdge);
  for (int py = 0; py < ph; ++py) {
    for (int px = 0; px < pw; ++px) {
      // Distance outward from the original image region.
      const int dx = px < ox ? ox - px : (px >= ox + y.width() ? px - (ox + y.width() - 1) : 0);
      const int dy = py < oy ? oy - py : (py >= oy + y.height() ? py - (oy + y.height() - 1) : 0);
      const int d = std::max(dx, dy);
      if (d == 0) continue;  // original pixels stay exact
      const double t = std::min(1.0, double(d) / kTaperWidth);
      padded.at(px, py) = (1.0 - t) * padded.at(px, py) + t * blurred.at(px, py);
    }
  }
  return padded;
}

RasterImage crop(const std::vector<double>& data, int pw, int w, int h, int ox,
                 int oy) {
  RasterImage out(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      out.at(x, y) = data[std::size_t(y + oy) * pw + (x + ox)];
    }
  }
  return out;
}

std::vector<double> tikhonov_periodic_raw(const std::vector<double>& y, int w,
                                          int h, const BlurKernel& k,
                                          double reg) {
  Fft2D fft(w, h);
  const auto K = fft.forward(embed_kernel(k, w, h));
  const auto Y = fft.forward(y);
  const auto L = laplacian_spectrum(w, h);
  std::vector<std::complex<double>> X(K.size());
  for (std::size_t i = 0; i < K.size(); ++i) {
    // The DC denominator is (sum k)^2 = 1 for feasible kernels; the floor
    // only guards degenerate non-normalised inputs against division by zero.
    const double denom = std::max(std::norm(K[i]) + reg * L[i], 1e-300);
    X[i] = std::conj(K[i]) * Y[i] / denom;
  }
  return fft.inverse(X);
}

}  // namespace

void NonblindConfig::validate() const {
  if (!(reg_weight > 0.0)) {
    throw ConfigError("nonblind: reg weight must be positive");
  }
  if (inner_iters < 1) {
    throw ConfigError("nonblind: inner iterations must be >= 1");
  }
}

NonblindMethod parse_nonblind_method(const std::string& name) {
  if (name == "tikhonov") return NonblindMethod::TikhonovFrequency;
  if (name == "sparse") return NonblindMethod::SparseGradient;
  throw ConfigError("nonblind: unknown method '" + name +
                    "' (expected tikhonov or sparse)");
}

std::string to_string(NonblindMethod method) {
  return method == NonblindMethod::TikhonovFrequency ? "tikhonov" : "sparse";
}

RasterImage tikhonov_solve_periodic(const RasterImage& y, const BlurKernel& k,
                                    double reg) {
  if (!(reg > 0.0)) throw ConfigError("tikhonov: reg must be positive");
  std::vector<double> x =
      tikhonov_periodic_raw(y.data(), y.width(), y.height(), k, reg);
  return RasterImage(y.width(), y.height(), std::move(x));
}

RasterImage sparse_gradient_solve_periodic(const RasterImage& y,
                                           const BlurKernel& k, double reg,
                                           int iters) {
  if (!(reg > 0.0)) throw ConfigError("sparse solve: reg must be positive");
  const int w = y.width();
  const int h = y.height();
  Fft2D fft(w, h);
  const auto K = fft.forward(embed_kernel(k, w, h));
  const auto Y = fft.forward(y.data());

  // Spectra of the periodic forward differences.
  const int cw = w / 2 + 1;
  std::vector<std::complex<double>> Dx(std::size_t(cw) * h), Dy(Dx.size());
  for (int yy = 0; yy < h; ++yy) {
    for (int xx = 0; xx < cw; ++xx) {
      const double ax = 2.0 * std::numbers::pi * xx / w;
      const double ay = 2.0 * std::numbers::pi * yy / h;
      Dx[std::size_t(yy) * cw + xx] = std::polar(1.0, ax) - 1.0;
      Dy[std::size_t(yy) * cw + xx] = std::polar(1.0, ay) - 1.0;
    }
  }

  auto grad_x = [&](const std::vector<double>& v, std::vector<double>& gx,
                    std::vector<double>& gy) {
    for (int yy = 0; yy < h; ++yy) {
      for (int xx = 0; xx < w; ++xx) {
        const std::size_t i = std::size_t(yy) * w + xx;
        gx[i] = v[std::size_t(yy) * w + (xx + 1) % w] - v[i];
        gy[i] = v[std::size_t((yy + 1) % h) * w + xx] - v[i];
      }
    }
  };

  std::vector<double> x = y.data();
  std::vector<double> gx(x.size()), gy(x.size()), wx(x.size()), wy(x.size());
  double beta = 2.0 * reg;
  for (int it = 0; it < iters; ++it, beta *= 2.0) {
    grad_x(x, gx, gy);
    const double thr = reg / beta;
    for (std::size_t i = 0; i < x.size(); ++i) {
      wx[i] = soft_shrink(gx[i], thr);
      wy[i] = soft_shrink(gy[i], thr);
    }
    // x-step: (K*K + beta (Dx*Dx + Dy*Dy)) x = K* y + beta (Dx* wx + Dy* wy)
    const auto Wx = fft.forward(wx);
    const auto Wy = fft.forward(wy);
    std::vector<std::complex<double>> X(K.size());
    for (std::size_t i = 0; i < K.size(); ++i) {
      const double denom = std::norm(K[i]) + beta * (std::norm(Dx[i]) + std::norm(Dy[i]));
      const std::complex<double> num =
          std::conj(K[i]) * Y[i] + beta * (std::conj(Dx[i]) * Wx[i] + std::conj(Dy[i]) * Wy[i]);
      X[i] = num / std::max(denom, 1e-12);
    }
    x = fft.inverse(X);
  }
  return RasterImage(w, h, std::move(x));
}

RasterImage deconvolve(const RasterImage& y, const BlurKernel& k,
                       const NonblindConfig& cfg) {
  cfg.validate();
  if (k.side() > y.width() || k.side() > y.height()) {
    throw DimensionError("deconvolve: kernel larger than image");
  }

  const int margin = std::max(k.side(), kTaperWidth);
  const int pw = next_smooth(y.width() + 2 * margin);
  const int ph = next_smooth(y.height() + 2 * margin);
  const int ox = (pw - y.width()) / 2;
  const int oy = (ph - y.height()) / 2;

  RasterImage padded = pad_and_taper(y, k, pw, ph, ox, oy);

  RasterImage solved =
      cfg.method == NonblindMethod::TikhonovFrequency
          ? tikhonov_solve_periodic(padded, k, cfg.reg_weight)
          : sparse_gradient_solve_periodic(padded, k, cfg.reg_weight,
                                           cfg.inner_iters);

  RasterImage out = crop(solved.data(), pw, y.width(), y.height(), ox, oy);
  for (double& v : out.data()) v = std::clamp(v, 0.0, 1.0);
  return out;
}

}  // namespace omnideblur
