#pragma once

// Dense complex matrices with value semantics. Everything in this library
// is desk scale (dimension well under 200), so storage is a flat row-major
// vector and operations are the naive triple loops.

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace hypdet {

using cd = std::complex<double>;
using CVec = std::vector<cd>;

class CMat {
public:
  CMat() = default;
  CMat(int rows, int cols) : r_(rows), c_(cols), a_(std::size_t(rows) * cols) {}

  static CMat eye(int n) {
    CMat m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }
  static CMat diag(const CVec& d) {
    CMat m(int(d.size()), int(d.size()));
    for (int i = 0; i < int(d.size()); ++i) m(i, i) = d[i];
    return m;
  }
  static CMat diag_real(const std::vector<double>& d) {
    CMat m(int(d.size()), int(d.size()));
    for (int i = 0; i < int(d.size()); ++i) m(i, i) = d[i];
    return m;
  }

  int rows() const { return r_; }
  int cols() const { return c_; }

  cd& operator()(int i, int j) { return a_[std::size_t(i) * c_ + j]; }
  const cd& operator()(int i, int j) const { return a_[std::size_t(i) * c_ + j]; }

  CMat block(int r0, int nr, int c0, int nc) const {
    CMat b(nr, nc);
    for (int i = 0; i < nr; ++i)
      for (int j = 0; j < nc; ++j) b(i, j) = (*this)(r0 + i, c0 + j);
    return b;
  }
  void set_block(int r0, int c0, const CMat& b) {
    for (int i = 0; i < b.rows(); ++i)
      for (int j = 0; j < b.cols(); ++j) (*this)(r0 + i, c0 + j) = b(i, j);
  }
  CVec column(int j) const {
    CVec v(r_);
    for (int i = 0; i < r_; ++i) v[i] = (*this)(i, j);
    return v;
  }
  void set_column(int j, const CVec& v) {
    for (int i = 0; i < r_; ++i) (*this)(i, j) = v[i];
  }

private:
  int r_ = 0, c_ = 0;
  std::vector<cd> a_;
};

inline CMat adjoint(const CMat& m) {
  CMat t(m.cols(), m.rows());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) t(j, i) = std::conj(m(i, j));
  return t;
}

inline CMat operator+(const CMat& x, const CMat& y) {
  if (x.rows() != y.rows() || x.cols() != y.cols())
    throw std::invalid_argument("matrix add: shape mismatch");
  CMat z(x.rows(), x.cols());
  for (int i = 0; i < x.rows(); ++i)
    for (int j = 0; j < x.cols(); ++j) z(i, j) = x(i, j) + y(i, j);
  return z;
}

inline CMat operator-(const CMat& x, const CMat& y) {
  if (x.rows() != y.rows() || x.cols() != y.cols())
    throw std::invalid_argument("matrix sub: shape mismatch");
  CMat z(x.rows(), x.cols());
  for (int i = 0; i < x.rows(); ++i)
    for (int j = 0; j < x.cols(); ++j) z(i, j) = x(i, j) - y(i, j);
  return z;
}

inline CMat operator*(const CMat& x, const CMat& y) {
  if (x.cols() != y.rows()) throw std::invalid_argument("matrix mul: shape mismatch");
  CMat z(x.rows(), y.cols());
  for (int i = 0; i < x.rows(); ++i)
    for (int k = 0; k < x.cols(); ++k) {
      cd xik = x(i, k);
      if (xik == cd(0.0)) continue;
      for (int j = 0; j < y.cols(); ++j) z(i, j) += xik * y(k, j);
    }
  return z;
}

inline CMat operator*(cd s, const CMat& x) {
  CMat z(x.rows(), x.cols());
  for (int i = 0; i < x.rows(); ++i)
    for (int j = 0; j < x.cols(); ++j) z(i, j) = s * x(i, j);
  return z;
}
inline CMat operator*(double s, const CMat& x) { return cd(s) * x; }

inline CVec operator*(const CMat& m, const CVec& v) {
  if (m.cols() != int(v.size())) throw std::invalid_argument("matvec: shape mismatch");
  CVec out(m.rows());
  for (int i = 0; i < m.rows(); ++i) {
    cd s = 0.0;
    for (int j = 0; j < m.cols(); ++j) s += m(i, j) * v[j];
    out[i] = s;
  }
  return out;
}

inline double max_abs(const CMat& m) {
  double mx = 0.0;
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) mx = std::max(mx, std::abs(m(i, j)));
  return mx;
}

inline double frob_norm(const CMat& m) {
  double s = 0.0;
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) s += std::norm(m(i, j));
  return std::sqrt(s);
}

inline double vec_norm(const CVec& v) {
  double s = 0.0;
  for (const cd& x : v) s += std::norm(x);
  return std::sqrt(s);
}

inline double max_abs(const CVec& v) {
  double mx = 0.0;
  for (const cd& x : v) mx = std::max(mx, std::abs(x));
  return mx;
}

// max |M - M*|, the hermiticity defect used by input validation.
inline double hermiticity_error(const CMat& m) {
  double mx = 0.0;
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j)
      mx = std::max(mx, std::abs(m(i, j) - std::conj(m(j, i))));
  return mx;
}

inline CMat from_columns(const std::vector<CVec>& cols, int dim) {
  CMat m(dim, int(cols.size()));
  for (int j = 0; j < int(cols.size()); ++j) {
    if (int(cols[j].size()) != dim)
      throw std::invalid_argument("from_columns: inconsistent vector length");
    m.set_column(j, cols[j]);
  }
  return m;
}

}  // namespace hypdet
