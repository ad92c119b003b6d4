#pragma once

#include <cstddef>
#include <vector>

namespace omni {

using Vec = std::vector<double>;

double dot(const Vec& a, const Vec& b);
double norm(const Vec& a);
// Cosine similarity; returns 0 when either vector is (near) zero.
double cosine(const Vec& a, const Vec& b);

// Small dense row-major matrix. Everything in this project is tiny (8x8
// Kalman blocks, c_s x c_s expert maps), so clarity beats blocking.
class Mat {
 public:
  Mat() = default;
  Mat(int rows, int cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows) * cols, fill) {}

  static Mat identity(int n);

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  double& operator()(int r, int c) { return data_[static_cast<std::size_t>(r) * cols_ + c]; }
  double operator()(int r, int c) const { return data_[static_cast<std::size_t>(r) * cols_ + c]; }

  const std::vector<double>& data() const { return data_; }
  std::vector<double>& data() { return data_; }

  Mat transposed() const;
  Mat& operator+=(const Mat& o);
  Mat& operator-=(const Mat& o);
  Mat& operator*=(double s);

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<double> data_;
};

Mat operator*(const Mat& a, const Mat& b);
Mat operator+(Mat a, const Mat& b);
Mat operator-(Mat a, const Mat& b);
Vec mat_vec(const Mat& a, const Vec& x);

// Solves a * x = b by Gaussian elimination with partial pivoting.
// a must be square and nonsingular; b may hold multiple right-hand sides.
Mat solve(Mat a, Mat b);

}  // namespace omni
