#include "core/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>
#include <utility>

#include "core/common.hpp"
#include "core/hungarian.hpp"

namespace omni {

namespace {

void check_sequence(const Sequence& s, const char* what) {
  for (const auto& frame : s.frames) {
    std::set<long long> ids;
    for (const TrackedBox& b : frame)
      if (!ids.insert(b.id).second)
        throw InputError(std::string(what) + ": duplicate id within a frame");
  }
}

const std::vector<TrackedBox>& frame_of(const Sequence& s, int f) {
  static const std::vector<TrackedBox> kEmpty;
  return f < s.n_frames() ? s.frames[f] : kEmpty;
}

// One-to-one matching maximizing match count, then total IoU, over pairs
// with iou >= thresh. Returns pairs of indices into the two frame lists.
std::vector<std::pair<int, int>> match_frame(const std::vector<TrackedBox>& gts,
                                             const std::vector<TrackedBox>& prs, double thresh,
                                             const std::vector<char>* gt_locked = nullptr,
                                             const std::vector<char>* pr_locked = nullptr) {
  const int ng = static_cast<int>(gts.size());
  const int np = static_cast<int>(prs.size());
  std::vector<std::pair<int, int>> out;
  if (ng == 0 || np == 0) return out;
  Mat cost(ng, np);
  for (int i = 0; i < ng; ++i)
    for (int j = 0; j < np; ++j) {
      if ((gt_locked && (*gt_locked)[i]) || (pr_locked && (*pr_locked)[j])) {
        cost(i, j) = kForbiddenCost;
        continue;
      }
      const double iou = cyclic_iou(gts[i].box, prs[j].box);
      cost(i, j) = iou >= thresh ? 1.0 - iou : kForbiddenCost;
    }
  const std::vector<int> col4row = min_cost_assignment(cost);
  for (int i = 0; i < ng; ++i) {
    const int j = col4row[i];
    if (j >= 0 && cost(i, j) < kForbiddenCost) out.emplace_back(i, j);
  }
  return out;
}

}  // namespace

MotaResult eval_mota(const Sequence& gt, const Sequence& pred, double iou_thresh) {
  check_sequence(gt, "eval_mota gt");
  check_sequence(pred, "eval_mota pred");

  MotaResult res;
  std::map<long long, long long> last_match;  // gt id -> last matched pred id
  const int frames = std::max(gt.n_frames(), pred.n_frames());

  for (int f = 0; f < frames; ++f) {
    const auto& gts = frame_of(gt, f);
    const auto& prs = frame_of(pred, f);
    res.counts.gt_total += static_cast<long long>(gts.size());

    std::vector<char> gt_done(gts.size(), 0), pr_done(prs.size(), 0);
    int matches = 0;

    // Carry forward still-valid correspondences before matching the rest.
    for (std::size_t i = 0; i < gts.size(); ++i) {
      const auto it = last_match.find(gts[i].id);
      if (it == last_match.end()) continue;
      for (std::size_t j = 0; j < prs.size(); ++j) {
        if (pr_done[j] || prs[j].id != it->second) continue;
        if (cyclic_iou(gts[i].box, prs[j].box) >= iou_thresh) {
          gt_done[i] = 1;
          pr_done[j] = 1;
          ++matches;
        }
        break;
      }
    }

    for (const auto& [i, j] : match_frame(gts, prs, iou_thresh, &gt_done, &pr_done)) {
      const auto it = last_match.find(gts[i].id);
      if (it != last_match.end() && it->second != prs[j].id) ++res.counts.idsw;
      last_match[gts[i].id] = prs[j].id;
      ++matches;
    }

    res.counts.tp += matches;
    res.counts.fn += static_cast<long long>(gts.size()) - matches;
    res.counts.fp += static_cast<long long>(prs.size()) - matches;
  }

  if (res.counts.gt_total == 0) {
    res.mota = res.counts.fp > 0 ? -std::numeric_limits<double>::infinity() : 1.0;
  } else {
    res.mota = 1.0 - static_cast<double>(res.counts.fn + res.counts.fp + res.counts.idsw) /
                         static_cast<double>(res.counts.gt_total);
  }
  return res;
}

double eval_idf1(const Sequence& gt, const Sequence& pred, double iou_thresh) {
  check_sequence(gt, "eval_idf1 gt");
  check_sequence(pred, "eval_idf1 pred");

  std::map<long long, int> gt_ids, pred_ids;  // id -> dense index
  long long total_gt = 0, total_pred = 0;
  const int frames = std::max(gt.n_frames(), pred.n_frames());
  for (int f = 0; f < frames; ++f) {
    for (const TrackedBox& b : frame_of(gt, f)) {
      gt_ids.emplace(b.id, static_cast<int>(gt_ids.size()));
      ++total_gt;
    }
    for (const TrackedBox& b : frame_of(pred, f)) {
      pred_ids.emplace(b.id, static_cast<int>(pred_ids.size()));
      ++total_pred;
    }
  }
  if (total_gt == 0 && total_pred == 0) return 1.0;
  if (gt_ids.empty() || pred_ids.empty()) return 0.0;

  // overlap(g, p) = number of frames where both are present and overlap.
  Mat overlap(static_cast<int>(gt_ids.size()), static_cast<int>(pred_ids.size()));
  for (int f = 0; f < frames; ++f) {
    const auto& gts = frame_of(gt, f);
    const auto& prs = frame_of(pred, f);
    for (const TrackedBox& g : gts)
      for (const TrackedBox& p : prs)
        if (cyclic_iou(g.box, p.box) >= iou_thresh)
          overlap(gt_ids[g.id], pred_ids[p.id]) += 1.0;
  }

  Mat cost(overlap.rows(), overlap.cols());
  for (int i = 0; i < cost.rows(); ++i)
    for (int j = 0; j < cost.cols(); ++j) cost(i, j) = -overlap(i, j);
  const std::vector<int> col4row = min_cost_assignment(cost);
  double idtp = 0.0;
  for (int i = 0; i < cost.rows(); ++i)
    if (col4row[i] >= 0) idtp += overlap(i, col4row[i]);

  return 2.0 * idtp / static_cast<double>(total_gt + total_pred);
}

HotaResult eval_hota(const Sequence& gt, const Sequence& pred) {
  check_sequence(gt, "eval_hota gt");
  check_sequence(pred, "eval_hota pred");

  const int frames = std::max(gt.n_frames(), pred.n_frames());
  std::map<long long, long long> gt_frames, pred_frames;  // id -> presence count
  for (int f = 0; f < frames; ++f) {
    for (const TrackedBox& b : frame_of(gt, f)) ++gt_frames[b.id];
    for (const TrackedBox& b : frame_of(pred, f)) ++pred_frames[b.id];
  }

  HotaResult res;
  for (int a = 1; a <= 19; ++a) {
    const double alpha = 0.05 * a;
    long long tp = 0, fp = 0, fn = 0;
    std::map<std::pair<long long, long long>, long long> pair_count;
    for (int f = 0; f < frames; ++f) {
      const auto& gts = frame_of(gt, f);
      const auto& prs = frame_of(pred, f);
      const auto matches = match_frame(gts, prs, alpha);
      tp += static_cast<long long>(matches.size());
      fn += static_cast<long long>(gts.size()) - static_cast<long long>(matches.size());
      fp += static_cast<long long>(prs.size()) - static_cast<long long>(matches.size());
      for (const auto& [i, j] : matches) ++pair_count[{gts[i].id, prs[j].id}];
    }

    double deta = 1.0, assa = 1.0, hota = 1.0;
    if (tp + fn + fp > 0) {
      deta = static_cast<double>(tp) / static_cast<double>(tp + fn + fp);
      if (tp > 0) {
        double acc = 0.0;
        for (const auto& [pair, count] : pair_count) {
          const double uni = static_cast<double>(gt_frames[pair.first] +
                                                 pred_frames[pair.second] - count);
          acc += static_cast<double>(count) * (static_cast<double>(count) / uni);
        }
        assa = acc / static_cast<double>(tp);
      } else {
        assa = 0.0;
      }
      hota = std::sqrt(deta * assa);
    }
    res.per_alpha.push_back({alpha, tp, fp, fn, deta, assa, hota});
    res.deta += deta;
    res.assa += assa;
    res.hota += hota;
  }
  res.deta /= 19.0;
  res.assa /= 19.0;
  res.hota /= 19.0;
  return res;
}

double eval_ospa(const Sequence& gt, const Sequence& pred, double cutoff, double order) {
  check_sequence(gt, "eval_ospa gt");
  check_sequence(pred, "eval_ospa pred");
  if (cutoff <= 0.0) throw InputError("eval_ospa: cutoff must be positive");
  if (order <= 0.0) throw InputError("eval_ospa: order must be positive");

  const int frames = std::max(gt.n_frames(), pred.n_frames());
  if (frames == 0) return 0.0;

  double total = 0.0;
  for (int f = 0; f < frames; ++f) {
    const auto* small = &frame_of(gt, f);
    const auto* big = &frame_of(pred, f);
    if (small->size() > big->size()) std::swap(small, big);
    const int m = static_cast<int>(small->size());
    const int n = static_cast<int>(big->size());
    if (n == 0) continue;
    double sum = std::pow(cutoff, order) * static_cast<double>(n - m);
    if (m > 0) {
      Mat cost(m, n);
      for (int i = 0; i < m; ++i)
        for (int j = 0; j < n; ++j) {
          const double d = std::min(cutoff, 1.0 - cyclic_iou((*small)[i].box, (*big)[j].box));
          cost(i, j) = std::pow(d, order);
        }
      const std::vector<int> col4row = min_cost_assignment(cost);
      for (int i = 0; i < m; ++i) sum += cost(i, col4row[i]);
    }
    total += std::pow(sum / static_cast<double>(n), 1.0 / order);
  }
  return total / static_cast<double>(frames);
}

MetricReport evaluate_all(const Sequence& gt, const Sequence& pred, double iou_thresh,
                          double ospa_cutoff, double ospa_order) {
  MetricReport rep;
  const MotaResult mota = eval_mota(gt, pred, iou_thresh);
  rep.mota = mota.mota;
  rep.counts = mota.counts;
  rep.idf1 = eval_idf1(gt, pred, iou_thresh);
  const HotaResult hota = eval_hota(gt, pred);
  rep.hota = hota.hota;
  rep.deta = hota.deta;
  rep.assa = hota.assa;
  rep.ospa = eval_ospa(gt, pred, ospa_cutoff, ospa_order);
  return rep;
}

}  // namespace omni
