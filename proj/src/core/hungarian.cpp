#include "core/hungarian.hpp"

#include <algorithm>
#include <limits>
#include <utility>

namespace omni {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Shortest augmenting path LSAP for rows <= cols.
std::vector<int> lsap(const Mat& cost) {
  const int nr = cost.rows();
  const int nc = cost.cols();
  std::vector<double> u(nr, 0.0), v(nc, 0.0), shortest(nc);
  std::vector<int> col4row(nr, -1), row4col(nc, -1), pred(nc, -1);
  std::vector<char> scanned_row(nr, 0), scanned_col(nc, 0);

  for (int cur = 0; cur < nr; ++cur) {
    std::fill(shortest.begin(), shortest.end(), kInf);
    std::fill(scanned_row.begin(), scanned_row.end(), 0);
    std::fill(scanned_col.begin(), scanned_col.end(), 0);
    std::fill(pred.begin(), pred.end(), -1);

    int sink = -1;
    int i = cur;
    double min_val = 0.0;
    while (sink == -1) {
      scanned_row[i] = 1;
      double lowest = kInf;
      int j_low = -1;
      for (int j = 0; j < nc; ++j) {
        if (scanned_col[j]) continue;
        const double red = min_val + cost(i, j) - u[i] - v[j];
        if (red < shortest[j]) {
          shortest[j] = red;
          pred[j] = i;
        }
        // Prefer unassigned columns on ties so augmentation terminates.
        if (shortest[j] < lowest || (shortest[j] == lowest && row4col[j] == -1)) {
          lowest = shortest[j];
          j_low = j;
        }
      }
      min_val = lowest;
      if (j_low < 0) return {};  // unreachable with finite costs
      if (row4col[j_low] == -1) {
        sink = j_low;
      } else {
        scanned_col[j_low] = 1;
        i = row4col[j_low];
      }
    }

    u[cur] += min_val;
    for (int r = 0; r < nr; ++r)
      if (scanned_row[r] && r != cur) u[r] += min_val - shortest[col4row[r]];
    for (int j = 0; j < nc; ++j)
      if (scanned_col[j]) v[j] -= min_val - shortest[j];

    int j = sink;
    while (true) {
      const int r = pred[j];
      row4col[j] = r;
      std::swap(col4row[r], j);
      if (r == cur) break;
    }
  }
  return col4row;
}

}  // namespace

std::vector<int> min_cost_assignment(const Mat& cost) {
  if (cost.rows() == 0 || cost.cols() == 0) return std::vector<int>(cost.rows(), -1);
  if (cost.rows() <= cost.cols()) return lsap(cost);
  const std::vector<int> row4col = lsap(cost.transposed());
  std::vector<int> out(cost.rows(), -1);
  for (int c = 0; c < cost.cols(); ++c)
    if (row4col[c] >= 0) out[row4col[c]] = c;
  return out;
}

}  // namespace omni
