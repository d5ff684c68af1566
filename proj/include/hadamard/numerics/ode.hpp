#pragma once

// Adaptive Dormand-Prince 5(4) integration with a stored continuous extension.
//
// The state is an Eigen column vector templated on scalar type and dimension.
// Every accepted step keeps the coefficients of the quartic dense-output
// polynomial, so the solution and its derivative can be evaluated anywhere in
// the integrated range after the fact.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <vector>

namespace hadamard::numerics {

template <typename Scalar, int Dim>
using OdeState = Eigen::Matrix<Scalar, Dim, 1>;

enum class OdeStatus { finished, stopped, step_underflow, max_steps };

template <typename Scalar>
struct OdeOptions {
  Scalar rtol = Scalar(1e-10);
  Scalar atol = Scalar(1e-12);
  Scalar initial_step = Scalar(0);  // 0 selects a step automatically
  Scalar max_step = std::numeric_limits<Scalar>::infinity();
  Scalar min_step = Scalar(1e-15);  // relative to |t|
  long max_steps = 2'000'000;
  bool dense = true;
};

template <typename Scalar, int Dim>
class DenseSolution {
 public:
  using State = OdeState<Scalar, Dim>;

  struct Segment {
    Scalar t0;
    Scalar h;
    State y0;
    State c1, c2, c3, c4;
  };

  bool empty() const { return segments_.empty(); }
  Scalar t_begin() const { return segments_.front().t0; }
  Scalar t_end() const { return segments_.back().t0 + segments_.back().h; }
  std::size_t size() const { return segments_.size(); }

  State operator()(Scalar t) const {
    const Segment& s = locate(t);
    const Scalar th = (t - s.t0) / s.h;
    return s.y0 + th * (s.c1 + th * (s.c2 + th * (s.c3 + th * s.c4)));
  }

  State derivative(Scalar t) const {
    const Segment& s = locate(t);
    const Scalar th = (t - s.t0) / s.h;
    return (s.c1 + th * (Scalar(2) * s.c2 + th * (Scalar(3) * s.c3 + th * Scalar(4) * s.c4))) / s.h;
  }

  void push(Segment s) { segments_.push_back(std::move(s)); }
  const Segment& back() const { return segments_.back(); }

 private:
  const Segment& locate(Scalar t) const {
    auto it = std::upper_bound(segments_.begin(), segments_.end(), t,
                               [](Scalar v, const Segment& s) { return v < s.t0; });
    if (it == segments_.begin()) return segments_.front();
    return *std::prev(it);
  }

  std::vector<Segment> segments_;
};

template <typename Scalar, int Dim>
struct OdeResult {
  OdeStatus status = OdeStatus::finished;
  Scalar t = Scalar(0);
  OdeState<Scalar, Dim> y;
  long accepted = 0;
  long rejected = 0;
  DenseSolution<Scalar, Dim> solution;
};

namespace detail {

// Dormand-Prince tableau and the dense-output matrix of Shampine (as in
// Hairer & Wanner's DOPRI5).
template <typename Scalar>
struct DormandPrince {
  static constexpr Scalar c2 = Scalar(1) / 5, c3 = Scalar(3) / 10, c4 = Scalar(4) / 5,
                          c5 = Scalar(8) / 9;
  static constexpr Scalar a21 = Scalar(1) / 5;
  static constexpr Scalar a31 = Scalar(3) / 40, a32 = Scalar(9) / 40;
  static constexpr Scalar a41 = Scalar(44) / 45, a42 = Scalar(-56) / 15, a43 = Scalar(32) / 9;
  static constexpr Scalar a51 = Scalar(19372) / 6561, a52 = Scalar(-25360) / 2187,
                          a53 = Scalar(64448) / 6561, a54 = Scalar(-212) / 729;
  static constexpr Scalar a61 = Scalar(9017) / 3168, a62 = Scalar(-355) / 33,
                          a63 = Scalar(46732) / 5247, a64 = Scalar(49) / 176,
                          a65 = Scalar(-5103) / 18656;
  static constexpr Scalar b1 = Scalar(35) / 384, b3 = Scalar(500) / 1113, b4 = Scalar(125) / 192,
                          b5 = Scalar(-2187) / 6784, b6 = Scalar(11) / 84;
  static constexpr Scalar e1 = Scalar(71) / 57600, e3 = Scalar(-71) / 16695,
                          e4 = Scalar(71) / 1920, e5 = Scalar(-17253) / 339200,
                          e6 = Scalar(22) / 525, e7 = Scalar(-1) / 40;
  // P[i][j]: coefficient of theta^(j+1) for stage i.
  static constexpr Scalar P[7][4] = {
      {Scalar(1), Scalar(-8048581381.0L / 2820520608.0L), Scalar(8663915743.0L / 2820520608.0L),
       Scalar(-12715105075.0L / 11282082432.0L)},
      {0, 0, 0, 0},
      {0, Scalar(131558114200.0L / 32700410799.0L), Scalar(-68118460800.0L / 10900136933.0L),
       Scalar(87487479700.0L / 32700410799.0L)},
      {0, Scalar(-1754552775.0L / 470086768.0L), Scalar(14199869525.0L / 1410260304.0L),
       Scalar(-10690763975.0L / 1880347072.0L)},
      {0, Scalar(127303824393.0L / 49829197408.0L), Scalar(-318862633887.0L / 49829197408.0L),
       Scalar(701980252875.0L / 199316789632.0L)},
      {0, Scalar(-282668133.0L / 205662961.0L), Scalar(2019193451.0L / 616988883.0L),
       Scalar(-1453857185.0L / 822651844.0L)},
      {0, Scalar(40617522.0L / 29380423.0L), Scalar(-110615467.0L / 29380423.0L),
       Scalar(69997945.0L / 29380423.0L)}};
};

template <typename Scalar, int Dim>
Scalar error_norm(const OdeState<Scalar, Dim>& err, const OdeState<Scalar, Dim>& y0,
                  const OdeState<Scalar, Dim>& y1, const OdeOptions<Scalar>& opt) {
  const auto scale = (opt.atol + opt.rtol * y0.cwiseAbs().cwiseMax(y1.cwiseAbs()).array());
  const Scalar n = std::sqrt((err.array() / scale).square().mean());
  return std::isfinite(n) ? n : std::numeric_limits<Scalar>::infinity();
}

}  // namespace detail

/// Integrates y' = rhs(t, y) from t0 to t1 (t1 > t0).
///
/// `stop(t, y)` is consulted after each accepted step; returning true ends the
/// integration with status `stopped`. A right-hand side that returns non-finite
/// values rejects the trial step, which lets callers encode domain boundaries.
template <typename Scalar, int Dim, typename Rhs, typename Stop>
OdeResult<Scalar, Dim> integrate(Rhs&& rhs, Scalar t0, const OdeState<Scalar, Dim>& y0, Scalar t1,
                                 const OdeOptions<Scalar>& opt, Stop&& stop) {
  using State = OdeState<Scalar, Dim>;
  using T = detail::DormandPrince<Scalar>;

  OdeResult<Scalar, Dim> res;
  State y = y0;
  Scalar t = t0;
  State k1 = rhs(t, y);
  const Scalar span = t1 - t0;

  Scalar h = opt.initial_step;
  if (h <= Scalar(0)) {
    const auto sc = (opt.atol + opt.rtol * y.cwiseAbs().array());
    const Scalar d0 = std::sqrt((y.array() / sc).square().mean());
    const Scalar d1 = std::sqrt((k1.array() / sc).square().mean());
    Scalar h0 = (d0 < Scalar(1e-5) || d1 < Scalar(1e-5)) ? Scalar(1e-6) * std::max(span, Scalar(1))
                                                         : Scalar(0.01) * d0 / d1;
    h0 = std::min(h0, span);
    const State k2 = rhs(t + h0, State(y + h0 * k1));
    const Scalar d2 = std::sqrt(((k2 - k1).array() / sc).square().mean()) / h0;
    const Scalar dm = std::max(d1, d2);
    const Scalar h1 = std::isfinite(dm) && dm > Scalar(1e-15)
                          ? std::pow(Scalar(0.01) / dm, Scalar(0.2))
                          : std::max(Scalar(1e-6), h0 * Scalar(1e-3));
    h = std::min(Scalar(100) * h0, h1);
  }
  h = std::min({h, span, opt.max_step});

  Scalar err_prev = Scalar(1e-4);
  while (t < t1) {
    if (res.accepted >= opt.max_steps) {
      res.status = OdeStatus::max_steps;
      break;
    }
    const Scalar h_floor = opt.min_step * std::max(Scalar(1), std::abs(t));
    if (h < h_floor) {
      res.status = OdeStatus::step_underflow;
      break;
    }
    bool last = false;
    if (t + h >= t1) {
      h = t1 - t;
      last = true;
    }

    const State k2 = rhs(t + T::c2 * h, State(y + h * T::a21 * k1));
    const State k3 = rhs(t + T::c3 * h, State(y + h * (T::a31 * k1 + T::a32 * k2)));
    const State k4 = rhs(t + T::c4 * h, State(y + h * (T::a41 * k1 + T::a42 * k2 + T::a43 * k3)));
    const State k5 = rhs(t + T::c5 * h,
                         State(y + h * (T::a51 * k1 + T::a52 * k2 + T::a53 * k3 + T::a54 * k4)));
    const State k6 = rhs(t + h, State(y + h * (T::a61 * k1 + T::a62 * k2 + T::a63 * k3 +
                                                T::a64 * k4 + T::a65 * k5)));
    const State y1 =
        y + h * (T::b1 * k1 + T::b3 * k3 + T::b4 * k4 + T::b5 * k5 + T::b6 * k6);
    const State k7 = rhs(t + h, y1);
    const State err =
        h * (T::e1 * k1 + T::e3 * k3 + T::e4 * k4 + T::e5 * k5 + T::e6 * k6 + T::e7 * k7);
    const Scalar en = y1.allFinite() && k7.allFinite() ? detail::error_norm(err, y, y1, opt)
                                                       : std::numeric_limits<Scalar>::infinity();

    if (en <= Scalar(1)) {
      if (opt.dense) {
        typename DenseSolution<Scalar, Dim>::Segment s;
        s.t0 = t;
        s.h = h;
        s.y0 = y;
        const State* ks[7] = {&k1, nullptr, &k3, &k4, &k5, &k6, &k7};
        State c[4];
        for (int j = 0; j < 4; ++j) {
          c[j] = State::Zero(y.size());
          for (int i = 0; i < 7; ++i)
            if (ks[i]) c[j] += T::P[i][j] * (*ks[i]);
          c[j] *= h;
        }
        s.c1 = c[0];
        s.c2 = c[1];
        s.c3 = c[2];
        s.c4 = c[3];
        res.solution.push(std::move(s));
      }
      t = last ? t1 : t + h;
      y = y1;
      k1 = k7;
      ++res.accepted;
      if (stop(t, y)) {
        res.status = OdeStatus::stopped;
        break;
      }
      // PI step-size controller.
      const Scalar enc = std::max(en, Scalar(1e-10));
      Scalar fac = Scalar(0.9) * std::pow(enc, Scalar(-0.7) / 5) * std::pow(err_prev, Scalar(0.4) / 5);
      fac = std::clamp(fac, Scalar(0.2), Scalar(10));
      err_prev = enc;
      h = std::min(h * fac, opt.max_step);
    } else {
      ++res.rejected;
      const Scalar fac = std::isfinite(en) ? std::max(Scalar(0.2), Scalar(0.9) * std::pow(en, Scalar(-0.2)))
                                           : Scalar(0.2);
      h *= fac;
    }
  }
  res.t = t;
  res.y = y;
  return res;
}

template <typename Scalar, int Dim, typename Rhs>
OdeResult<Scalar, Dim> integrate(Rhs&& rhs, Scalar t0, const OdeState<Scalar, Dim>& y0, Scalar t1,
                                 const OdeOptions<Scalar>& opt = {}) {
  return integrate<Scalar, Dim>(std::forward<Rhs>(rhs), t0, y0, t1, opt,
                                [](Scalar, const OdeState<Scalar, Dim>&) { return false; });
}

}  // namespace hadamard::numerics
