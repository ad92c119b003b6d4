#include "core/linalg.hpp"

#include <cassert>
#include <cmath>
#include <utility>

#include "core/common.hpp"

namespace omni {

double dot(const Vec& a, const Vec& b) {
  assert(a.size() == b.size());
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm(const Vec& a) { return std::sqrt(dot(a, a)); }

double cosine(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) throw InputError("cosine: dimension mismatch");
  const double na = norm(a);
  const double nb = norm(b);
  if (na < 1e-12 || nb < 1e-12) return 0.0;
  return dot(a, b) / (na * nb);
}

Mat Mat::identity(int n) {
  Mat m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Mat Mat::transposed() const {
  Mat t(cols_, rows_);
  for (int r = 0; r < rows_; ++r)
    for (int c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

Mat& Mat::operator+=(const Mat& o) {
  assert(rows_ == o.rows_ && cols_ == o.cols_);
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
  return *this;
}

Mat& Mat::operator-=(const Mat& o) {
  assert(rows_ == o.rows_ && cols_ == o.cols_);
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
  return *this;
}

Mat& Mat::operator*=(double s) {
  for (double& v : data_) v *= s;
  return *this;
}

Mat operator*(const Mat& a, const Mat& b) {
  assert(a.cols() == b.rows());
  Mat r(a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i) {
    for (int k = 0; k < a.cols(); ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      for (int j = 0; j < b.cols(); ++j) r(i, j) += aik * b(k, j);
    }
  }
  return r;
}

Mat operator+(Mat a, const Mat& b) {
  a += b;
  return a;
}

Mat operator-(Mat a, const Mat& b) {
  a -= b;
  return a;
}

Vec mat_vec(const Mat& a, const Vec& x) {
  if (a.cols() != static_cast<int>(x.size())) throw InputError("mat_vec: dimension mismatch");
  Vec y(a.rows(), 0.0);
  for (int i = 0; i < a.rows(); ++i) {
    double s = 0.0;
    for (int j = 0; j < a.cols(); ++j) s += a(i, j) * x[j];
    y[i] = s;
  }
  return y;
}

Mat solve(Mat a, Mat b) {
  const int n = a.rows();
  if (a.cols() != n || b.rows() != n) throw InputError("solve: dimension mismatch");
  for (int col = 0; col < n; ++col) {
    int pivot = col;
    double best = std::abs(a(col, col));
    for (int r = col + 1; r < n; ++r) {
      if (std::abs(a(r, col)) > best) {
        best = std::abs(a(r, col));
        pivot = r;
      }
    }
    if (best < 1e-300) throw InputError("solve: singular matrix");
    if (pivot != col) {
      for (int c = 0; c < n; ++c) std::swap(a(col, c), a(pivot, c));
      for (int c = 0; c < b.cols(); ++c) std::swap(b(col, c), b(pivot, c));
    }
    const double inv = 1.0 / a(col, col);
    for (int r = col + 1; r < n; ++r) {
      const double f = a(r, col) * inv;
      if (f == 0.0) continue;
      for (int c = col; c < n; ++c) a(r, c) -= f * a(col, c);
      for (int c = 0; c < b.cols(); ++c) b(r, c) -= f * b(col, c);
    }
  }
  for (int col = n - 1; col >= 0; --col) {
    const double inv = 1.0 / a(col, col);
    for (int c = 0; c < b.cols(); ++c) {
      double s = b(col, c);
      for (int k = col + 1; k < n; ++k) s -= a(col, k) * b(k, c);
      b(col, c) = s * inv;
    }
  }
  return b;
}

}  // namespace omni
