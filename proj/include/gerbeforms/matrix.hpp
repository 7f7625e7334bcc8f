#pragma once

// Dense square/rectangular matrices over any of the exact rings used here
// (Rat, Poly, WeilElement). Matrix entries carry their own ring context
// (polynomial dimension, slot count), so constructors take an exemplar zero
// element rather than a global ring handle.

#include <gerbeforms/poly.hpp>
#include <gerbeforms/weil.hpp>

#include <type_traits>
#include <vector>

namespace gerbeforms {

inline Rat ring_zero(const Rat&) { return Rat(0); }
inline Rat ring_one(const Rat&) { return Rat(1); }
inline Poly ring_zero(const Poly& p) { return Poly::zero(p.dim()); }
inline Poly ring_one(const Poly& p) { return Poly::constant(p.dim(), Rat(1)); }
inline WeilElement ring_zero(const WeilElement& w) {
  return WeilElement::zero(w.slots(), w.dim());
}
inline WeilElement ring_one(const WeilElement& w) {
  return WeilElement::one(w.slots(), w.dim());
}

inline bool ring_is_zero(const Rat& c) { return rat_is_zero(c); }
inline bool ring_is_zero(const Poly& p) { return p.is_zero(); }
inline bool ring_is_zero(const WeilElement& w) { return w.is_zero(); }

template <typename T>
class Mat {
 public:
  Mat() : rows_(0), cols_(0) {}

  Mat(int rows, int cols, const T& zero)
      : rows_(rows), cols_(cols), data_(static_cast<size_t>(rows) * cols, zero) {
    if (rows < 1 || cols < 1) throw gf_error("matrix with empty shape");
  }

  static Mat identity(int n, const T& exemplar) {
    Mat m(n, n, ring_zero(exemplar));
    T one = ring_one(exemplar);
    for (int i = 0; i < n; ++i) m.at(i, i) = one;
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  T& at(int r, int c) { return data_[static_cast<size_t>(r) * cols_ + c]; }
  const T& at(int r, int c) const {
    return data_[static_cast<size_t>(r) * cols_ + c];
  }

  bool is_zero() const {
    for (const T& v : data_)
      if (!ring_is_zero(v)) return false;
    return true;
  }

  bool is_square() const { return rows_ == cols_; }

  friend Mat operator+(const Mat& a, const Mat& b) {
    check_same_shape(a, b);
    Mat r = a;
    for (size_t i = 0; i < r.data_.size(); ++i) r.data_[i] += b.data_[i];
    return r;
  }

  friend Mat operator-(const Mat& a, const Mat& b) {
    check_same_shape(a, b);
    Mat r = a;
    for (size_t i = 0; i < r.data_.size(); ++i) r.data_[i] -= b.data_[i];
    return r;
  }

  friend Mat operator-(const Mat& a) {
    Mat r = a;
    for (T& v : r.data_) v = -v;
    return r;
  }

  friend Mat operator*(const Mat& a, const Mat& b) {
    if (a.cols_ != b.rows_) throw gf_error("matrix product shape mismatch");
    Mat r(a.rows_, b.cols_, ring_zero(a.data_[0]));
    for (int i = 0; i < a.rows_; ++i)
      for (int k = 0; k < a.cols_; ++k) {
        const T& aik = a.at(i, k);
        if (ring_is_zero(aik)) continue;
        for (int j = 0; j < b.cols_; ++j) r.at(i, j) += aik * b.at(k, j);
      }
    return r;
  }

  template <typename S>
  friend Mat operator*(const S& s, const Mat& a) {
    Mat r = a;
    for (T& v : r.data_) v = s * v;
    return r;
  }

  Mat& operator+=(const Mat& b) { return *this = *this + b; }
  Mat& operator-=(const Mat& b) { return *this = *this - b; }

  friend bool operator==(const Mat& a, const Mat& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }
  friend bool operator!=(const Mat& a, const Mat& b) { return !(a == b); }

  // Entry-wise transform, possibly into a different ring.
  template <typename F>
  auto map(F f) const -> Mat<std::invoke_result_t<F, const T&>> {
    using U = std::invoke_result_t<F, const T&>;
    Mat<U> r(rows_, cols_, ring_zero(f(data_[0])));
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) r.at(i, j) = f(at(i, j));
    return r;
  }

 private:
  static void check_same_shape(const Mat& a, const Mat& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
      throw gf_error("matrix shape mismatch");
  }

  int rows_, cols_;
  std::vector<T> data_;
};

template <typename T>
Mat<T> commutator(const Mat<T>& a, const Mat<T>& b) {
  return a * b - b * a;
}

using PolyMat = Mat<Poly>;
using WeilMat = Mat<WeilElement>;

// Inverse of a Weil matrix of the form I + N with N of positive nilpotent
// degree in every entry: Neumann series I + N' + N'^2 + ... with N' = I - F.
// Rejects inputs whose deviation from I has a nonzero degree-0 part.
inline WeilMat weil_mat_inverse(const WeilMat& f) {
  if (!f.is_square()) throw gf_error("inverting a non-square matrix");
  WeilMat id = WeilMat::identity(f.rows(), f.at(0, 0));
  WeilMat n = id - f;
  for (int i = 0; i < n.rows(); ++i)
    for (int j = 0; j < n.cols(); ++j)
      if (!n.at(i, j).coefficient(0, 0).is_zero())
        throw gf_error("matrix is not unipotent over the infinitesimal algebra");
  WeilMat inv = id;
  WeilMat power = n;
  while (!power.is_zero()) {
    inv += power;
    power = power * n;
  }
  return inv;
}

}  // namespace gerbeforms
