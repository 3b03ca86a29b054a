#include "hermitian.hpp"

#include <algorithm>

namespace conekit {

Herm2 event_to_herm(const Event& r) {
  if (r.dim() != 4) {
    fail(Errc::unsupported_dimension, "hermitian model is available in dimension 4 only");
  }
  const double x = r[0], y = r[1], z = r[2], t = r[3];
  return {t + z, t - z, x, y};
}

Event herm_to_event(const Herm2& a) {
  return Event{a.off_re, a.off_im, 0.5 * (a.d1 - a.d2), 0.5 * (a.d1 + a.d2)};
}

int rank2(const Herm2& a, const Tolerance& tol) {
  if (a.max_abs_entry() <= tol.tau_rel) return 0;
  if (std::abs(a.det()) > tol.scale(herm_to_event(a))) return 2;
  return 1;
}

namespace {

Complex2x2 mul(const Complex2x2& a, const Complex2x2& b) {
  Complex2x2 r;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      r.e[i][j] = a.e[i][0] * b.e[0][j] + a.e[i][1] * b.e[1][j];
    }
  }
  return r;
}

Complex2x2 to_complex(const Herm2& a) {
  Complex2x2 r;
  r.e[0][0] = cplx(a.d1);
  r.e[1][1] = cplx(a.d2);
  r.e[0][1] = cplx(a.off_re, a.off_im);
  r.e[1][0] = cplx(a.off_re, -a.off_im);
  return r;
}

// Symmetrizes a numerically-hermitian product back into Herm2 form.
Herm2 to_herm(const Complex2x2& m) {
  const cplx off = 0.5 * (m.e[0][1] + std::conj(m.e[1][0]));
  return {m.e[0][0].real(), m.e[1][1].real(), off.real(), off.imag()};
}

}  // namespace

Herm2 standard_preserver(int c, const Complex2x2& t, const Herm2& s, bool transpose,
                         const Herm2& a, const Tolerance& tol) {
  if (c != 1 && c != -1) {
    fail(Errc::invalid_argument, "sign factor must be +1 or -1");
  }
  double t_scale = 0.0;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) t_scale = std::max(t_scale, std::abs(t.e[i][j]));
  }
  if (std::abs(t.det()) <= tol.tau_rel * (1.0 + t_scale * t_scale)) {
    fail(Errc::singular_matrix, "congruence matrix must be invertible");
  }
  Herm2 arg = a;
  // The transpose of a hermitian matrix conjugates the off-diagonal entry.
  if (transpose) arg.off_im = -arg.off_im;
  Complex2x2 t_star;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) t_star.e[i][j] = std::conj(t.e[j][i]);
  }
  const Herm2 core = to_herm(mul(mul(t, to_complex(arg)), t_star));
  return static_cast<double>(c) * core + s;
}

Herm2 trace_degenerate_preserver(const Herm2& r, const Herm2& s, const Herm2& a,
                                 const Tolerance& tol) {
  const Herm2 r2 = to_herm(mul(to_complex(r), to_complex(r)));
  const Herm2 gap = r2 - r;
  const double band = tol.tau_rel * (1.0 + r.max_abs_entry() * r.max_abs_entry());
  if (gap.max_abs_entry() > band || rank2(r, tol) != 1) {
    fail(Errc::not_projection, "map requires a rank-one hermitian projection");
  }
  return a.trace() * r + s;
}

Herm2 rank_one_projection(cplx u1, cplx u2) {
  const double n2 = std::norm(u1) + std::norm(u2);
  if (n2 <= 0.0) {
    fail(Errc::invalid_argument, "projection spinor must be nonzero");
  }
  const cplx off = u1 * std::conj(u2) / n2;
  return {std::norm(u1) / n2, std::norm(u2) / n2, off.real(), off.imag()};
}

}  // namespace conekit
