#pragma once

#include <complex>

#include "event.hpp"
#include "tolerance.hpp"

namespace conekit {

using cplx = std::complex<double>;

/// A 2x2 hermitian matrix: real diagonal, one off-diagonal complex entry.
/// Entry (2,1) is the conjugate of (1,2) and is never stored.
struct Herm2 {
  double d1 = 0.0;
  double d2 = 0.0;
  double off_re = 0.0;
  double off_im = 0.0;

  double det() const { return d1 * d2 - (off_re * off_re + off_im * off_im); }
  double trace() const { return d1 + d2; }
  double max_abs_entry() const {
    return std::max({std::abs(d1), std::abs(d2), std::abs(off_re), std::abs(off_im)});
  }

  friend Herm2 operator+(const Herm2& a, const Herm2& b) {
    return {a.d1 + b.d1, a.d2 + b.d2, a.off_re + b.off_re, a.off_im + b.off_im};
  }
  friend Herm2 operator-(const Herm2& a, const Herm2& b) {
    return {a.d1 - b.d1, a.d2 - b.d2, a.off_re - b.off_re, a.off_im - b.off_im};
  }
  friend Herm2 operator*(double s, const Herm2& a) {
    return {s * a.d1, s * a.d2, s * a.off_re, s * a.off_im};
  }
  bool operator==(const Herm2&) const = default;
};

/// A general complex 2x2 matrix, row major.
struct Complex2x2 {
  cplx e[2][2] = {{cplx(0.0), cplx(0.0)}, {cplx(0.0), cplx(0.0)}};

  static Complex2x2 identity() {
    Complex2x2 m;
    m.e[0][0] = m.e[1][1] = cplx(1.0);
    return m;
  }
  static Complex2x2 diagonal(cplx a, cplx b) {
    Complex2x2 m;
    m.e[0][0] = a;
    m.e[1][1] = b;
    return m;
  }

  cplx det() const { return e[0][0] * e[1][1] - e[0][1] * e[1][0]; }
};

/// (x, y, z, t) as the hermitian matrix [[t+z, x+iy], [x-iy, t-z]]. The
/// determinant equals the quadratic form, so this is an isometry.
Herm2 event_to_herm(const Event& r);

/// Inverse of event_to_herm; total on Herm2.
Event herm_to_event(const Herm2& a);

/// Rank of a hermitian 2x2 matrix under the tolerance policy: 0 when all
/// entries are negligible, 2 when the determinant clears the quadratic band
/// of the corresponding event, 1 otherwise.
int rank2(const Herm2& a, const Tolerance& tol = {});

/// The congruence preserver A -> c T A T* + S, optionally transposing A
/// first. T must be invertible.
Herm2 standard_preserver(int c, const Complex2x2& t, const Herm2& s, bool transpose,
                         const Herm2& a, const Tolerance& tol = {});

/// The trace map A -> trace(A) R + S for a rank-one projection R.
Herm2 trace_degenerate_preserver(const Herm2& r, const Herm2& s, const Herm2& a,
                                 const Tolerance& tol = {});

/// Rank-one projection u u* from a spinor, normalized internally.
Herm2 rank_one_projection(cplx u1, cplx u2);

}  // namespace conekit
