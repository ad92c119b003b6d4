#include "core/feedback.hpp"

#include <cmath>

#include "core/common.hpp"

namespace omni {

namespace {

constexpr double kMassTol = 1e-9;

void check_mass(double total, const char* what) {
  if (std::abs(total - 1.0) > kMassTol) throw InputError(std::string(what) + ": mass must be 1");
}

double plogp(double p) { return p > 0.0 ? p * std::log(p) : 0.0; }

}  // namespace

double entropy(const Vec& p) {
  double mass = 0.0;
  double h = 0.0;
  for (double v : p) {
    if (v < 0.0 || !std::isfinite(v)) throw InputError("entropy: negative or non-finite entry");
    mass += v;
    h -= plogp(v);
  }
  check_mass(mass, "entropy");
  return h;
}

Vec x_marginal(const Mat& joint) {
  Vec px(joint.rows(), 0.0);
  for (int i = 0; i < joint.rows(); ++i)
    for (int j = 0; j < joint.cols(); ++j) px[i] += joint(i, j);
  return px;
}

double conditional_entropy(const Mat& joint) {
  double mass = 0.0;
  Vec py(joint.cols(), 0.0);
  for (int i = 0; i < joint.rows(); ++i) {
    for (int j = 0; j < joint.cols(); ++j) {
      const double v = joint(i, j);
      if (v < 0.0 || !std::isfinite(v))
        throw InputError("conditional_entropy: negative or non-finite entry");
      mass += v;
      py[j] += v;
    }
  }
  check_mass(mass, "conditional_entropy");

  // H(x|y) = H(x,y) - H(y).
  double hxy = 0.0;
  for (int i = 0; i < joint.rows(); ++i)
    for (int j = 0; j < joint.cols(); ++j) hxy -= plogp(joint(i, j));
  double hy = 0.0;
  for (double v : py) hy -= plogp(v);
  return hxy - hy;
}

double feedback_gain(const std::vector<Mat>& joints) {
  if (joints.empty()) throw InputError("feedback_gain: empty sequence");
  double gain = 0.0;
  for (const Mat& joint : joints) gain += entropy(x_marginal(joint)) - conditional_entropy(joint);
  return gain;
}

}  // namespace omni
