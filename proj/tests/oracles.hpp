#pragma once

// Independent reference implementations used only by the tests. Nothing here
// calls into the solver code it is meant to check.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <numbers>

#include <Eigen/Dense>
#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace oracle {

using cd = std::complex<double>;
using Mat5 = Eigen::Matrix<cd, 5, 5>;
using Mat25 = Eigen::Matrix<cd, 25, 25>;
using Vec25 = Eigen::Matrix<cd, 25, 1>;

struct FiveLevel {
  double op = 0, oa = 0, oc1 = 0, oc2 = 0;
  double d12 = 0, d13 = 0, d14 = 0, d15 = 0;
  double g31 = 0, g32 = 0, g41 = 0, g42 = 0, g53 = 0, g54 = 0;
  double gl = 0, g21 = 0;
};

inline Mat5 hamiltonian(const FiveLevel& p) {
  Mat5 m = Mat5::Zero();
  m(0, 2) = m(2, 0) = p.op;
  m(1, 3) = m(3, 1) = p.oc1;
  m(2, 4) = m(4, 2) = p.oa;
  m(3, 4) = m(4, 3) = p.oc2;
  m(1, 1) = p.d12;
  m(2, 2) = p.d13;
  m(3, 3) = p.d14;
  m(4, 4) = p.d15;
  return -m;
}

// Pure dephasing added on top of the decay-induced one.
inline double extra_dephasing(const FiveLevel& p, int m, int n) {
  if (m == n) return 0.0;
  const int a = std::max(m, n), b = std::min(m, n);
  if (a == 1 && b == 0) return p.g21;
  if (a == 3 && b == 2) return 0.0;
  return p.gl;
}

struct Jump {
  int from, to;
  double rate;
};

inline std::array<Jump, 6> jumps(const FiveLevel& p) {
  return {{{2, 0, p.g31}, {2, 1, p.g32}, {3, 0, p.g41}, {3, 1, p.g42}, {4, 2, p.g53}, {4, 3, p.g54}}};
}

// Column-major vec: vec(A X B) = (B^T kron A) vec(X).
inline Mat25 kron(const Mat5& a, const Mat5& b) {
  Mat25 k;
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) k.block<5, 5>(5 * i, 5 * j) = a(i, j) * b;
  return k;
}

inline Mat25 superoperator(const FiveLevel& p) {
  const Mat5 id = Mat5::Identity();
  const Mat5 h = hamiltonian(p);
  const cd i{0.0, 1.0};
  Mat25 s = -i * (kron(id, h) - kron(h.transpose(), id));
  for (const auto& j : jumps(p)) {
    Mat5 l = Mat5::Zero();
    l(j.to, j.from) = std::sqrt(j.rate);
    const Mat5 ll = l.adjoint() * l;
    s += kron(l.conjugate(), l) - 0.5 * kron(id, ll) - 0.5 * kron(ll.transpose(), id);
  }
  for (int n = 0; n < 5; ++n)
    for (int m = 0; m < 5; ++m) s(m + 5 * n, m + 5 * n) -= extra_dephasing(p, m, n);
  return s;
}

inline Mat5 unvec(const Vec25& v) {
  Mat5 r;
  for (int n = 0; n < 5; ++n)
    for (int m = 0; m < 5; ++m) r(m, n) = v(m + 5 * n);
  return r;
}

// Right singular vector of the smallest singular value, trace-normalized.
inline Mat5 null_vector_steady_state(const FiveLevel& p) {
  Eigen::JacobiSVD<Mat25> svd(superoperator(p), Eigen::ComputeFullV);
  Mat5 rho = unvec(svd.matrixV().col(24));
  return rho / rho.trace();
}

inline Mat5 rhs(const FiveLevel& p, const Mat5& rho) {
  const Mat5 h = hamiltonian(p);
  const cd i{0.0, 1.0};
  Mat5 d = -i * (h * rho - rho * h);
  for (const auto& j : jumps(p)) {
    d(j.to, j.to) += j.rate * rho(j.from, j.from);
    d(j.from, j.from) -= j.rate * rho(j.from, j.from);
    for (int k = 0; k < 5; ++k) {
      if (k == j.from) continue;
      d(j.from, k) -= 0.5 * j.rate * rho(j.from, k);
      d(k, j.from) -= 0.5 * j.rate * rho(k, j.from);
    }
  }
  for (int m = 0; m < 5; ++m)
    for (int n = 0; n < 5; ++n) d(m, n) -= extra_dephasing(p, m, n) * rho(m, n);
  return d;
}

template <class State, class F>
State rk4(State y, F&& f, double t_end, double dt) {
  const auto steps = static_cast<long>(std::ceil(t_end / dt));
  for (long s = 0; s < steps; ++s) {
    const State k1 = f(y);
    const State k2 = f(State(y + 0.5 * dt * k1));
    const State k3 = f(State(y + 0.5 * dt * k2));
    const State k4 = f(State(y + dt * k3));
    y = y + dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return y;
}

inline Mat5 evolve_five_level(const FiveLevel& p, double t_end, double dt) {
  Mat5 rho = Mat5::Zero();
  rho(0, 0) = 0.5;
  rho(1, 1) = 0.5;
  return rk4(rho, [&](const Mat5& r) { return rhs(p, r); }, t_end, dt);
}

// Reduced Lambda system, transcribed term by term. State vector:
// rho11, rho22, rho51, rho52, rho21; rho55 follows from the constraint.
struct Reduced {
  double ope = 0, oce = 0;
  double d12e = 0, d15e = 0;
  double g51r = 0, g52r = 0, g21r = 0;  // real parts of the decoherence rates
  double G51 = 0, G52 = 0;
  double eta = 0;  // eta53 + eta54
};

using Vec5 = Eigen::Matrix<cd, 5, 1>;

inline cd rho55_of(const Reduced& p, const Vec5& y) {
  return (1.0 - y(0) - y(1)) / (1.0 + p.eta);
}

inline Vec5 reduced_rhs(const Reduced& p, const Vec5& y) {
  const cd i{0.0, 1.0};
  const cd r11 = y(0), r22 = y(1), r51 = y(2), r52 = y(3), r21 = y(4);
  const cd r55 = rho55_of(p, y);
  const cd r15 = std::conj(r51), r25 = std::conj(r52), r12 = std::conj(r21);
  const cd g52{p.g52r, p.d15e - p.d12e};
  const cd g51{p.g51r, -p.d15e};
  const cd g21{p.g21r, -p.d12e};
  Vec5 d;
  d(1) = p.G52 * r55 + i * p.oce * r52 - i * p.oce * r25;
  d(0) = p.G51 * r55 + i * p.ope * r51 - i * p.ope * r15;
  d(3) = -g52 * r52 + i * p.ope * r12 + i * p.oce * (r22 - r55);
  d(2) = -g51 * r51 + i * p.oce * r21 + i * p.ope * (r11 - r55);
  d(4) = -g21 * r21 + i * p.oce * r51 - i * p.ope * r25;
  return d;
}

inline Vec5 evolve_reduced(const Reduced& p, double t_end, double dt) {
  Vec5 y = Vec5::Zero();
  y(0) = 1.0;
  return rk4(y, [&](const Vec5& s) { return reduced_rhs(p, s); }, t_end, dt);
}

// Maxwell-averaged closed-form rho55, written out from the formulas with
// its own shift table, integrated with adaptive Gauss-Kronrod on panels.
struct DopplerCase {
  double op, oa, oc1, oc2, dp, da, dc1, dc2;
  double gamma_decay, gamma_l;
  double lp, la, lc1, lc2;
  double theta_deg;
  bool forward;
  double vp;
};

inline double closed_form_at(const DopplerCase& c, double v) {
  const double proj = std::cos((180.0 - c.theta_deg) * std::numbers::pi / 180.0);
  const double s = c.forward ? 1.0 : -1.0;
  const double dp = c.dp + s * v / c.lp;
  const double da = c.da - s * proj * v / c.la;
  const double dc1 = c.dc1 + v / c.lc1;
  const double dc2 = c.dc2 - proj * v / c.lc2;
  const double ope = -c.op * c.oa / dp;
  const double oce = -c.oc1 * c.oc2 / dc2;
  const double d12e = dp + da - dc1 - dc2 - c.oc1 * c.oc1 / dc1;
  const double d15e = dp + da + c.oa * c.oa / da + c.oc2 * c.oc2 / dc2;
  const double G = c.gamma_decay;
  const double g = G + c.gamma_l;
  const double den = std::pow(oce, 4) - 2 * oce * oce * d12e * d15e + (G * G + d15e * d15e) * d12e * d12e;
  return 2 * g * ope * ope * d12e * d12e / G / den;
}

inline double maxwell(double v, double vp) {
  return std::exp(-(v * v) / (vp * vp)) / (vp * std::sqrt(std::numbers::pi));
}

inline double doppler_average(const DopplerCase& c, double lo, double hi, int panels = 2000) {
  double total = 0.0;
  const double w = (hi - lo) / panels;
  for (int k = 0; k < panels; ++k) {
    const double a = lo + k * w;
    total += boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
        [&](double v) { return maxwell(v, c.vp) * closed_form_at(c, v); }, a, a + w, 12, 1e-12);
  }
  return total;
}

}  // namespace oracle
