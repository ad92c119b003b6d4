#pragma once

#include "core/linalg.hpp"

namespace omni {

// Wraps x into [0, 1).
double wrap_unit(double x);

// Signed shortest azimuthal displacement from b to a, in [-0.5, 0.5).
// The antipodal tie (exactly half a turn) resolves to -0.5.
double wrap_delta(double a, double b);

// Axis-aligned box on the panoramic cylinder. The azimuth center cu lives on
// the unit circle (wraps at 1.0); cv is the linear vertical center. Extents
// are fractions of the full panorama, so w may reach 1 (a box wrapping the
// whole cylinder).
struct PanoBox {
  double cu = 0.0;
  double cv = 0.0;
  double w = 0.0;
  double h = 0.0;

  // Canonicalizes cu into [0,1) and clamps the rest into their valid ranges.
  static PanoBox make(double cu, double cv, double w, double h);

  bool valid() const;
  double area() const { return w * h; }
};

// Intersection-over-union on the cylinder: azimuthal intervals intersect
// modulo 1, vertical intervals are linear.
double cyclic_iou(const PanoBox& a, const PanoBox& b);

// Seam-blind variant: boxes are clipped to the unrolled [0,1] strip and
// overlapped linearly. Exists for ablations only; everything else in the
// project uses cyclic_iou.
double clamped_iou(const PanoBox& a, const PanoBox& b);

// Per-step standard deviations added by the constant-velocity model.
struct ProcessNoise {
  double pos = 2e-3;   // cu, cv
  double ext = 1e-3;   // w, h
  double vel = 1e-3;   // all four velocity components
};

// Measurement standard deviations for a detected box.
struct MeasurementNoise {
  double pos = 2e-3;
  double ext = 2e-3;
};

// Constant-velocity filter state over [cu, cv, w, h, d_cu, d_cv, d_w, d_h].
// mean[0] is kept canonical in [0,1); the azimuth innovation always goes
// through wrap_delta so tracks ride across the stitching seam.
struct CyclicKalmanState {
  Vec mean;  // length 8
  Mat cov;   // 8x8, symmetric positive-definite

  static CyclicKalmanState from_box(const PanoBox& b, double pos_var = 1e-4,
                                    double ext_var = 1e-4, double vel_var = 1e-4);
  PanoBox box() const;
};

// wrap_azimuth=false emulates a seam-naive tracker: the azimuth clamps to
// the unrolled strip instead of wrapping, and the innovation is the naive
// difference. Exists for the geometry ablation; normal operation wraps.
CyclicKalmanState kalman_predict(const CyclicKalmanState& s, const ProcessNoise& q = {},
                                 bool wrap_azimuth = true);

// Throws InputError on a non-finite measurement.
CyclicKalmanState kalman_update(const CyclicKalmanState& s, const PanoBox& z,
                                const MeasurementNoise& r = {}, bool wrap_azimuth = true);

}  // namespace omni
