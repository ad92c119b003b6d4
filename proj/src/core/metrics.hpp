#pragma once

#include "core/types.hpp"

namespace omni {

// All metrics run on the cylinder: every overlap goes through cyclic_iou, so
// a target straddling the stitching seam scores exactly like one in the
// middle of the panorama.

struct MotCounts {
  long long tp = 0;
  long long fp = 0;
  long long fn = 0;
  long long idsw = 0;
  long long gt_total = 0;
};

struct MotaResult {
  double mota = 1.0;
  MotCounts counts;
};

// CLEAR-MOT accuracy with match-continuity: a gt/pred pairing persists while
// both are present and still overlap above the threshold; identity switches
// are counted against a track's last known match. With no ground truth and
// some predictions the score is reported as -inf alongside the FP count.
MotaResult eval_mota(const Sequence& gt, const Sequence& pred, double iou_thresh = 0.5);

// Identity F1: one global gt-id/pred-id bijection maximizing the number of
// frame-wise overlapping pairs. Empty vs empty is 1 by convention.
double eval_idf1(const Sequence& gt, const Sequence& pred, double iou_thresh = 0.5);

struct HotaResult {
  double hota = 0.0;
  double deta = 0.0;
  double assa = 0.0;
  struct AlphaSlice {
    double alpha = 0.0;
    long long tp = 0, fp = 0, fn = 0;
    double deta = 0.0, assa = 0.0, hota = 0.0;
  };
  std::vector<AlphaSlice> per_alpha;  // the 19 grid points in order
};

// Higher-order accuracy averaged over the 19-point alpha grid 0.05..0.95.
// Per alpha, frames are matched one-to-one at IoU >= alpha (max matches,
// then max total IoU); HOTA_a = sqrt(DetA_a * AssA_a).
HotaResult eval_hota(const Sequence& gt, const Sequence& pred);

// Per-frame OSPA with base distance min(cutoff, 1 - iou) and the cardinality
// penalty at the cutoff, averaged over frames.
double eval_ospa(const Sequence& gt, const Sequence& pred, double cutoff = 1.0,
                 double order = 1.0);

struct MetricReport {
  double hota = 0.0;
  double deta = 0.0;
  double assa = 0.0;
  double mota = 0.0;
  double idf1 = 0.0;
  double ospa = 0.0;
  MotCounts counts;
};

MetricReport evaluate_all(const Sequence& gt, const Sequence& pred, double iou_thresh = 0.5,
                          double ospa_cutoff = 1.0, double ospa_order = 1.0);

}  // namespace omni
