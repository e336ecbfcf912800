// Copyright (C) 2026 The fdcran authors
// SPDX-License-Identifier: Apache-2.0

#include "beamforming.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <utility>
#include <vector>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <boost/math/tools/toms748_solve.hpp>

namespace fdcran {

namespace {

using RVec = Eigen::Matrix<double, Eigen::Dynamic, 1, Eigen::ColMajor, kMaxAntennas, 1>;

CVec normalized(const CVec& v, const char* what) {
  const double n = v.norm();
  if (!(n > 0.0) || !std::isfinite(n)) throw DegenerateChannelError(what);
  return v / n;
}

/// Any unit vector orthogonal to c (M >= 2).
CVec orthogonal_to(const CVec& c) {
  Eigen::Index k = 0;
  c.cwiseAbs().minCoeff(&k);
  CVec e = CVec::Zero(c.size());
  e[k] = 1.0;
  e -= c * (c.dot(e) / c.squaredNorm());
  return e.normalized();
}

/// Top eigenpair of diag(d) + b b^H restricted to the spectral data the dual needs.
struct TopEigen {
  double lambda = 0.0;
  CVec y;          // unit top eigenvector, in the eigenbasis of B
  double D = 0.0;  // y^H Gamma y, the sign of -d/ds lambda_max
};

/// Everything about one (h, g, H, a3) instance that does not depend on alpha.
class AlphaProblem {
 public:
  AlphaProblem(const CVec& h, const CVec& g, const CMat& H, double a3)
      : h_(h), a3_(a3), M_(static_cast<int>(h.size())) {
    c_ = H.adjoint() * g;
    decoupled_ = !(a3 > 0.0) || c_.squaredNorm() == 0.0;
    Q_ = CMat::Identity(M_, M_) + a3 * (H.adjoint() * H);
    w_mrt_ = mrt(h);
    if (decoupled_) return;
    const CVec x = Q_.llt().solve(c_);
    alpha_max_ = a3_ * std::real(c_.dot(x));
    w_max_ = x.normalized();
    alpha_mrt_ = alpha_of(w_mrt_);
  }

  bool decoupled() const { return decoupled_; }
  double alpha_max() const { return alpha_max_; }
  double alpha_mrt() const { return alpha_mrt_; }
  const CVec& w_mrt() const { return w_mrt_; }

  double alpha_of(const CVec& w) const {
    return a3_ * std::norm(c_.dot(w)) / std::real(w.dot(Q_ * w));
  }

  FAlpha solve(double alpha) const {
    const double scale = std::max(alpha_max_, std::numeric_limits<double>::min());
    if (decoupled_) {
      if (std::abs(alpha) > 1e-12) throw InfeasibleError("alpha must be 0 when the UL sees no interference");
      return result(w_mrt_);
    }
    if (alpha < -1e-12 * scale || alpha > alpha_max_ * (1.0 + 1e-10) || !std::isfinite(alpha)) {
      throw InfeasibleError("alpha outside [0, alpha_max]");
    }
    if (M_ == 1) {
      if (std::abs(alpha - alpha_max_) > 1e-10 * scale) {
        throw InfeasibleError("with one antenna only alpha_max is attainable");
      }
      return result(w_max_);
    }
    if (alpha >= alpha_max_ * (1.0 - 1e-12)) return result(w_max_);
    if (std::abs(alpha - alpha_mrt_) <= 1e-13 * scale) return result(w_mrt_);
    if (alpha <= 1e-14 * scale) return result(null_solution());
    return dual_solution(alpha);
  }

 private:
  FAlpha result(const CVec& w) const { return {std::norm(h_.dot(w)), w}; }

  CVec null_solution() const {
    CVec w = h_ - c_ * (c_.dot(h_) / c_.squaredNorm());
    if (w.norm() <= 1e-14 * h_.norm()) return orthogonal_to(c_);
    return w.normalized();
  }

  // f(alpha) = min_s lambda_max(h h^H - s B), B = a3 c c^H - alpha Q. The minimizing
  // s makes the top eigenvector satisfy w^H B w = 0, which is the constraint.
  FAlpha dual_solution(double alpha) const {
    CMat B = a3_ * (c_ * c_.adjoint()) - alpha * Q_;
    const double bscale = B.cwiseAbs().maxCoeff();
    B /= bscale;
    Eigen::SelfAdjointEigenSolver<CMat> es(B);
    const RVec gamma = es.eigenvalues();
    const CMat& V = es.eigenvectors();
    const CVec ht = V.adjoint() * h_;
    RVec beta(M_);
    for (int k = 0; k < M_; ++k) beta[k] = std::norm(ht[k]);
    const double beta_floor = 1e-300 + 1e-30 * beta.sum();

    auto top = [&](double s) {
      TopEigen out;
      int kstar = -1;
      double dstar = -std::numeric_limits<double>::infinity();
      for (int k = 0; k < M_; ++k) {
        if (beta[k] > beta_floor && -s * gamma[k] > dstar) {
          dstar = -s * gamma[k];
          kstar = k;
        }
      }
      // Secular equation sum beta_k / (lambda - d_k) = 1. It is convex and decreasing
      // right of d*, so Newton from the left converges monotonically.
      double lambda = dstar + beta[kstar];
      for (int it = 0; it < 100; ++it) {
        double f = -1.0, fp = 0.0;
        for (int k = 0; k < M_; ++k) {
          if (beta[k] <= beta_floor) continue;
          const double inv = 1.0 / (lambda + s * gamma[k]);
          f += beta[k] * inv;
          fp += beta[k] * inv * inv;
        }
        const double step = f / fp;
        lambda += step;
        if (!(step > 1e-15 * (std::abs(lambda) + beta[kstar]))) break;
      }
      out.y = CVec::Zero(M_);
      int zero_top = -1;
      for (int k = 0; k < M_; ++k) {
        if (beta[k] <= beta_floor && -s * gamma[k] > lambda) {
          lambda = -s * gamma[k];
          zero_top = k;
        }
      }
      if (zero_top >= 0) {
        out.y[zero_top] = 1.0;
      } else {
        for (int k = 0; k < M_; ++k) {
          if (beta[k] > beta_floor) out.y[k] = ht[k] / (lambda + s * gamma[k]);
        }
        out.y.normalize();
      }
      out.lambda = lambda;
      out.D = 0.0;
      for (int k = 0; k < M_; ++k) out.D += gamma[k] * std::norm(out.y[k]);
      return out;
    };

    const TopEigen at0 = top(0.0);
    if (at0.D == 0.0) return result(w_mrt_);
    const double dir = at0.D > 0.0 ? 1.0 : -1.0;
    double t = std::max(1.0, beta.sum());
    double s_far = 0.0;
    TopEigen far;
    bool bracketed = false;
    for (int it = 0; it < 250; ++it, t *= 4.0) {
      s_far = dir * t;
      far = top(s_far);
      if ((far.D > 0.0) != (at0.D > 0.0)) {
        bracketed = true;
        break;
      }
    }
    if (!bracketed) {
      // The constraint is only met in the limit; take the nearer endpoint solution.
      return result(alpha < 0.5 * alpha_max_ ? null_solution() : w_max_);
    }

    double a = 0.0, b = s_far, fa = at0.D, fb = far.D;
    if (a > b) {
      std::swap(a, b);
      std::swap(fa, fb);
    }
    auto D = [&](double s) { return top(s).D; };
    boost::math::tools::eps_tolerance<double> tol(50);
    std::uintmax_t max_iter = 200;
    const auto [lo, hi] = boost::math::tools::toms748_solve(D, a, b, fa, fb, tol, max_iter);
    TopEigen mid = top(0.5 * (lo + hi));
    CVec y = mid.y;
    if (std::abs(mid.D) > 1e-12) {
      // Top eigenvalue is (nearly) double at s*: mix the eigenvectors on either side
      // so the constraint holds exactly.
      TopEigen e_lo = top(lo), e_hi = top(hi);
      if (e_lo.D < 0.0) std::swap(e_lo, e_hi);
      const double b_lo = e_lo.D, b_hi = e_hi.D;
      if (b_lo > 0.0 && b_hi < 0.0) {
        cd x = 0.0;
        for (int k = 0; k < M_; ++k) x += std::conj(e_lo.y[k]) * gamma[k] * e_hi.y[k];
        const cd phase = std::abs(x) > 0.0 ? cd(0.0, 1.0) * std::conj(x) / std::abs(x) : cd(1.0, 0.0);
        const double theta = std::atan(std::sqrt(b_lo / -b_hi));
        y = std::cos(theta) * e_lo.y + phase * std::sin(theta) * e_hi.y;
        y.normalize();
      }
    }
    return result((V * y).normalized());
  }

  CVec h_;
  CVec c_;
  CMat Q_;
  double a3_;
  int M_;
  bool decoupled_ = true;
  double alpha_max_ = 0.0;
  double alpha_mrt_ = 0.0;
  CVec w_max_;
  CVec w_mrt_;
};

double golden_section_max(const auto& J, double lo, double hi, double tol, double& best_x, int& evals) {
  constexpr double kInvPhi = 0.6180339887498949;
  double x1 = hi - kInvPhi * (hi - lo), x2 = lo + kInvPhi * (hi - lo);
  double f1 = J(x1), f2 = J(x2);
  evals += 2;
  for (int it = 0; it < 200 && hi - lo > tol; ++it) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + kInvPhi * (hi - lo);
      f2 = J(x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - kInvPhi * (hi - lo);
      f1 = J(x1);
    }
    ++evals;
  }
  best_x = f1 >= f2 ? x1 : x2;
  return std::max(f1, f2);
}

}  // namespace

CVec mrt(const CVec& h) { return normalized(h, "MRT of a zero channel"); }

CVec mrc(const CVec& g) { return normalized(g, "MRC of a zero channel"); }

CVec zf_receive(const CVec& g, const CMat& H, const CVec& h) {
  if (g.size() < 2) throw InfeasibleError("zero-forcing receive needs at least two antennas");
  const CVec v = H * h;
  const double vv = v.squaredNorm();
  if (!(vv > 0.0)) throw DegenerateChannelError("zero interference direction");
  CVec w = g - v * (v.dot(g) / vv);
  w -= v * (v.dot(w) / vv);  // second pass cleans up cancellation error
  return normalized(w, "UL channel parallel to the interference direction");
}

CVec mmse_receive(const CVec& g, const CMat& H, const CVec& w_t, double a3) {
  const CVec u = H * w_t;
  const CVec w = g - u * (a3 * u.dot(g) / (1.0 + a3 * u.squaredNorm()));
  return normalized(w, "MMSE receive of a zero channel");
}

double suppressed_interference(const CVec& w, const CVec& g, const CMat& H, double a3) {
  const CVec u = H * w;
  return a3 * std::norm(g.dot(u)) / (w.squaredNorm() + a3 * u.squaredNorm());
}

double alpha_max(const CVec& g, const CMat& H, double a3) {
  const CVec h = CVec::Ones(g.size());
  return AlphaProblem(h, g, H, a3).alpha_max();
}

FAlpha solve_f_alpha(double alpha, const CVec& h, const CVec& g, const CMat& H, double a3) {
  return AlphaProblem(h, g, H, a3).solve(alpha);
}

double pair_sum_rate(const BeamformerPair& pair, const CVec& h, const CVec& g, const CMat& H, double a1,
                     double a2, double a3) {
  const double dl = a1 * std::norm(h.dot(pair.w_t));
  const double ul = a2 * std::norm(pair.w_r.dot(g)) / (a3 * std::norm(pair.w_r.dot(H * pair.w_t)) + 1.0);
  return std::log1p(dl) + std::log1p(ul);
}

OptimalSolveReport solve_optimal_pair(const CVec& h, const CVec& g, const CMat& H, double a1, double a2,
                                      double a3) {
  OptimalSolveReport report;
  const AlphaProblem problem(h, g, H, a3);
  auto finish = [&](const CVec& w_t, double alpha) {
    report.pair = {w_t, mmse_receive(g, H, w_t, a3)};
    report.alpha_star = alpha;
    report.sum_rate = pair_sum_rate(report.pair, h, g, H, a1, a2, a3);
  };
  if (problem.decoupled()) {
    report.pair = {mrt(h), mrc(g)};
    report.sum_rate = pair_sum_rate(report.pair, h, g, H, a1, a2, a3);
    return report;
  }
  if (h.size() == 1) {
    finish(mrt(h), problem.alpha_max());
    return report;
  }

  // Past alpha_mrt both f and the UL term decrease, so the optimum lies in [0, alpha_mrt].
  const double g2 = g.squaredNorm();
  const double top = std::min({problem.alpha_mrt(), problem.alpha_max(), g2});
  auto J = [&](double alpha) {
    const double f = problem.solve(alpha).value;
    return std::log1p(a1 * f) + std::log1p(a2 * std::max(g2 - alpha, 0.0));
  };

  constexpr int kGrid = 64;
  std::vector<double> xs(kGrid), js(kGrid);
  for (int i = 0; i < kGrid; ++i) {
    xs[i] = top * static_cast<double>(i) / (kGrid - 1);
    js[i] = J(xs[i]);
  }
  report.iterations = kGrid;

  // Refine around the two best local maxima of the grid.
  std::vector<int> peaks;
  for (int i = 0; i < kGrid; ++i) {
    const bool left_ok = i == 0 || js[i] >= js[i - 1];
    const bool right_ok = i == kGrid - 1 || js[i] >= js[i + 1];
    if (left_ok && right_ok) peaks.push_back(i);
  }
  std::sort(peaks.begin(), peaks.end(), [&](int a, int b) { return js[a] > js[b]; });
  if (peaks.size() > 2) peaks.resize(2);

  double best_alpha = xs[peaks.front()];
  double best_j = js[peaks.front()];
  const double tol = std::max(1e-6, 1e-12 * top);
  for (int i : peaks) {
    const double lo = xs[std::max(i - 1, 0)], hi = xs[std::min(i + 1, kGrid - 1)];
    double x = 0.0;
    const double jx = golden_section_max(J, lo, hi, tol, x, report.iterations);
    if (jx > best_j) {
      best_j = jx;
      best_alpha = x;
    }
  }

  finish(problem.solve(best_alpha).w_t, best_alpha);
  // The MRT end of the interval is exact; keep it if the refined point lost to rounding.
  const BeamformerPair mrt_pair{problem.w_mrt(), mmse_receive(g, H, problem.w_mrt(), a3)};
  const double mrt_rate = pair_sum_rate(mrt_pair, h, g, H, a1, a2, a3);
  if (mrt_rate > report.sum_rate) {
    report.pair = mrt_pair;
    report.sum_rate = mrt_rate;
    report.alpha_star = problem.alpha_mrt();
  }
  return report;
}

BruteForceResult brute_force_pair(const CVec& h, const CVec& g, const CMat& H, double a1, double a2,
                                  double a3, int grid_density) {
  if (h.size() != 2 || g.size() != 2 || H.rows() != 2 || H.cols() != 2) {
    throw UnsupportedError("brute_force_pair supports M == 2 only");
  }
  if (grid_density < 1) throw std::invalid_argument("grid_density must be >= 1");
  std::vector<CVec> sphere;
  for (int i = 0; i <= grid_density; ++i) {
    const double t = 0.5 * std::numbers::pi * i / grid_density;
    for (int j = 0; j < grid_density; ++j) {
      if (i == 0 && j > 0) break;  // theta = 0 is a single point
      const double p = 2.0 * std::numbers::pi * j / grid_density;
      CVec w(2);
      w << std::cos(t), std::polar(std::sin(t), p);
      sphere.push_back(w);
    }
  }
  std::vector<double> ul_signal(sphere.size());
  for (std::size_t r = 0; r < sphere.size(); ++r) ul_signal[r] = a2 * std::norm(sphere[r].dot(g));

  BruteForceResult best;
  best.sum_rate = -std::numeric_limits<double>::infinity();
  for (const CVec& wt : sphere) {
    const double dl = std::log1p(a1 * std::norm(h.dot(wt)));
    const CVec u = H * wt;
    for (std::size_t r = 0; r < sphere.size(); ++r) {
      const double rate = dl + std::log1p(ul_signal[r] / (a3 * std::norm(sphere[r].dot(u)) + 1.0));
      if (rate > best.sum_rate) {
        best.sum_rate = rate;
        best.pair = {wt, sphere[r]};
      }
    }
  }
  return best;
}

}  // namespace fdcran
