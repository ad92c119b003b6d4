#include "core/panogeom.hpp"

#include <algorithm>
#include <cmath>

#include "core/common.hpp"

namespace omni {

double wrap_unit(double x) {
  double y = x - std::floor(x);
  return (y >= 1.0) ? y - 1.0 : y;
}

double wrap_delta(double a, double b) {
  const double d = wrap_unit(a) - wrap_unit(b);
  return wrap_unit(d + 0.5) - 0.5;
}

PanoBox PanoBox::make(double cu, double cv, double w, double h) {
  PanoBox b;
  b.cu = wrap_unit(cu);
  b.cv = std::clamp(cv, 0.0, 1.0);
  b.w = std::clamp(w, 1e-6, 1.0);
  b.h = std::clamp(h, 1e-6, 1.0);
  return b;
}

bool PanoBox::valid() const {
  return std::isfinite(cu) && std::isfinite(cv) && std::isfinite(w) && std::isfinite(h) &&
         cu >= 0.0 && cu < 1.0 && cv >= 0.0 && cv <= 1.0 && w > 0.0 && w <= 1.0 && h > 0.0 &&
         h <= 1.0;
}

namespace {

double linear_overlap(double a1, double a2, double b1, double b2) {
  return std::max(0.0, std::min(a2, b2) - std::max(a1, b1));
}

// Overlap length of two arcs on the unit circle. Shifting so arc a starts at
// 0; arc b then starts at offset d and a second copy at d-1 covers the wrap.
double arc_overlap(double cu_a, double wa, double cu_b, double wb) {
  const double d = wrap_unit((cu_b - wb / 2.0) - (cu_a - wa / 2.0));
  const double o = linear_overlap(0.0, wa, d, d + wb) + linear_overlap(0.0, wa, d - 1.0, d - 1.0 + wb);
  return std::min(o, std::min(wa, wb));
}

// The vertical axis clips to the [0,1] strip (a box may hang off the top or
// bottom edge). Extents and overlaps share the same endpoint arithmetic so
// identical boxes give intersection == union exactly.
double v_lo(const PanoBox& b) { return std::max(0.0, b.cv - b.h / 2.0); }
double v_hi(const PanoBox& b) { return std::min(1.0, b.cv + b.h / 2.0); }

double vertical_extent(const PanoBox& b) { return v_hi(b) - v_lo(b); }

double vertical_overlap(const PanoBox& a, const PanoBox& b) {
  return linear_overlap(v_lo(a), v_hi(a), v_lo(b), v_hi(b));
}

}  // namespace

double cyclic_iou(const PanoBox& a, const PanoBox& b) {
  const double inter = arc_overlap(a.cu, a.w, b.cu, b.w) * vertical_overlap(a, b);
  const double uni = a.w * vertical_extent(a) + b.w * vertical_extent(b) - inter;
  return uni > 0.0 ? inter / uni : 0.0;
}

double clamped_iou(const PanoBox& a, const PanoBox& b) {
  const double a1 = std::max(0.0, a.cu - a.w / 2.0), a2 = std::min(1.0, a.cu + a.w / 2.0);
  const double b1 = std::max(0.0, b.cu - b.w / 2.0), b2 = std::min(1.0, b.cu + b.w / 2.0);
  const double inter = linear_overlap(a1, a2, b1, b2) * vertical_overlap(a, b);
  const double area_a = (a2 - a1) * vertical_extent(a);
  const double area_b = (b2 - b1) * vertical_extent(b);
  const double uni = area_a + area_b - inter;
  return uni > 0.0 ? inter / uni : 0.0;
}

namespace {

constexpr int kDim = 8;
constexpr int kMeas = 4;

Mat transition() {
  Mat f = Mat::identity(kDim);
  for (int i = 0; i < kMeas; ++i) f(i, i + kMeas) = 1.0;
  return f;
}

void symmetrize(Mat& p) {
  for (int r = 0; r < p.rows(); ++r)
    for (int c = r + 1; c < p.cols(); ++c) {
      const double v = 0.5 * (p(r, c) + p(c, r));
      p(r, c) = v;
      p(c, r) = v;
    }
}

}  // namespace

CyclicKalmanState CyclicKalmanState::from_box(const PanoBox& b, double pos_var, double ext_var,
                                              double vel_var) {
  CyclicKalmanState s;
  s.mean = {b.cu, b.cv, b.w, b.h, 0.0, 0.0, 0.0, 0.0};
  s.cov = Mat(kDim, kDim);
  s.cov(0, 0) = pos_var;
  s.cov(1, 1) = pos_var;
  s.cov(2, 2) = ext_var;
  s.cov(3, 3) = ext_var;
  for (int i = kMeas; i < kDim; ++i) s.cov(i, i) = vel_var;
  return s;
}

PanoBox CyclicKalmanState::box() const {
  return PanoBox::make(mean[0], mean[1], mean[2], mean[3]);
}

CyclicKalmanState kalman_predict(const CyclicKalmanState& s, const ProcessNoise& q,
                                 bool wrap_azimuth) {
  const Mat f = transition();
  CyclicKalmanState out;
  out.mean = mat_vec(f, s.mean);
  out.mean[0] = wrap_azimuth ? wrap_unit(out.mean[0]) : std::clamp(out.mean[0], 0.0, 1.0 - 1e-9);
  out.cov = f * s.cov * f.transposed();
  out.cov(0, 0) += q.pos * q.pos;
  out.cov(1, 1) += q.pos * q.pos;
  out.cov(2, 2) += q.ext * q.ext;
  out.cov(3, 3) += q.ext * q.ext;
  for (int i = kMeas; i < kDim; ++i) out.cov(i, i) += q.vel * q.vel;
  symmetrize(out.cov);
  return out;
}

CyclicKalmanState kalman_update(const CyclicKalmanState& s, const PanoBox& z,
                                const MeasurementNoise& r, bool wrap_azimuth) {
  if (!(std::isfinite(z.cu) && std::isfinite(z.cv) && std::isfinite(z.w) && std::isfinite(z.h)))
    throw InputError("kalman_update: non-finite measurement");

  // Innovation; the azimuth residual is the wrapped displacement, never the
  // naive difference (except in the seam-naive ablation).
  Vec y = {wrap_azimuth ? wrap_delta(z.cu, s.mean[0]) : z.cu - s.mean[0], z.cv - s.mean[1],
           z.w - s.mean[2], z.h - s.mean[3]};

  Mat rm(kMeas, kMeas);
  rm(0, 0) = r.pos * r.pos;
  rm(1, 1) = r.pos * r.pos;
  rm(2, 2) = r.ext * r.ext;
  rm(3, 3) = r.ext * r.ext;

  // H = [I4 0], so HP and PH' are plain sub-blocks of the covariance.
  Mat pht(kDim, kMeas);
  for (int i = 0; i < kDim; ++i)
    for (int j = 0; j < kMeas; ++j) pht(i, j) = s.cov(i, j);
  Mat innov_cov(kMeas, kMeas);
  for (int i = 0; i < kMeas; ++i)
    for (int j = 0; j < kMeas; ++j) innov_cov(i, j) = s.cov(i, j) + rm(i, j);

  // Gain K = P H' S^-1, via S K' = (P H')'.
  const Mat gain = solve(innov_cov, pht.transposed()).transposed();

  CyclicKalmanState out;
  out.mean = s.mean;
  for (int i = 0; i < kDim; ++i) {
    double upd = 0.0;
    for (int j = 0; j < kMeas; ++j) upd += gain(i, j) * y[j];
    out.mean[i] += upd;
  }
  out.mean[0] = wrap_azimuth ? wrap_unit(out.mean[0]) : std::clamp(out.mean[0], 0.0, 1.0 - 1e-9);

  // Joseph form keeps the posterior symmetric positive-definite.
  Mat ikh = Mat::identity(kDim);
  for (int i = 0; i < kDim; ++i)
    for (int j = 0; j < kMeas; ++j) ikh(i, j) -= gain(i, j);
  out.cov = ikh * s.cov * ikh.transposed() + gain * rm * gain.transposed();
  symmetrize(out.cov);
  return out;
}

}  // namespace omni
