#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <functional>

#include "systolica/errors.hpp"

namespace systolica { namespace num {

template <std::size_t N>
using State = std::array<double, N>;

/// Adaptive explicit Runge-Kutta integrator, Dormand-Prince 5(4) pair with
/// step-size control on the embedded error estimate. The right-hand side is
/// any callable (double t, const State&) -> State.
template <std::size_t N>
class RungeKutta {
public:
    using Rhs = std::function<State<N>(double, const State<N>&)>;

    RungeKutta(Rhs rhs, double rtol = 1e-10, double atol = 1e-12)
        : rhs_(std::move(rhs)), rtol_(rtol), atol_(atol) {}

    /// Integrates from (t0, y0) to t1 > t0 and returns y(t1).
    State<N> propagate(double t0, State<N> y, double t1) const {
        double t = t0;
        double h = initial_step(t1 - t0);
        while (t < t1) {
            if (t + h > t1) h = t1 - t;
            step_result r = try_step(t, y, h);
            if (r.accepted) {
                t = r.t_new;
                y = r.y_new;
            }
            h = r.h_next;
            if (h < 1e-15 * (std::abs(t) + 1.0))
                throw IntegrationError("step size underflow");
        }
        return y;
    }

    struct EventResult {
        double t;
        State<N> y;
    };

    /// Advances the solution until `event(t, y)` crosses zero with the requested
    /// direction (+1 negative->positive, -1 positive->negative, 0 either). The
    /// crossing time is isolated by bisection to absolute tolerance time_tol.
    EventResult integrate_to_event(double t0, const State<N>& y0,
                                   const std::function<double(double, const State<N>&)>& event,
                                   int direction, double t_max,
                                   double time_tol = 1e-12) const {
        double t = t0;
        State<N> y = y0;
        double g = event(t, y);
        double h = initial_step(t_max - t0);
        while (t < t_max) {
            if (t + h > t_max) h = t_max - t;
            step_result r = try_step(t, y, h);
            if (!r.accepted) {
                h = r.h_next;
                if (h < 1e-15 * (std::abs(t) + 1.0))
                    throw IntegrationError("step size underflow before event");
                continue;
            }
            const double g_new = event(r.t_new, r.y_new);
            if (crossed(g, g_new, direction)) {
                // Bisection on the step offset; each probe re-propagates from (t, y).
                double lo = 0.0, hi = r.t_new - t;
                State<N> y_hi = r.y_new;
                for (int it = 0; it < 200 && (hi - lo) > time_tol; ++it) {
                    const double mid = 0.5 * (lo + hi);
                    State<N> y_mid = propagate(t, y, t + mid);
                    const double g_mid = event(t + mid, y_mid);
                    if (crossed(g, g_mid, direction)) {
                        hi = mid;
                        y_hi = y_mid;
                    } else {
                        lo = mid;
                    }
                }
                return {t + hi, y_hi};
            }
            t = r.t_new;
            y = r.y_new;
            g = g_new;
            h = r.h_next;
        }
        throw IntegrationError("event not reached before t_max");
    }

private:
    struct step_result {
        bool accepted;
        double t_new;
        State<N> y_new;
        double h_next;
    };

    static bool crossed(double g_old, double g_new, int direction) {
        if (direction >= 0 && g_old < 0.0 && g_new >= 0.0) return true;
        if (direction <= 0 && g_old > 0.0 && g_new <= 0.0) return true;
        return false;
    }

    double initial_step(double span) const {
        return std::max(1e-10, 1e-3 * span);
    }

    step_result try_step(double t, const State<N>& y, double h) const {
        // Dormand-Prince coefficients.
        static constexpr double a21 = 1.0 / 5.0;
        static constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
        static constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
        static constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0,
                                a53 = 64448.0 / 6561.0, a54 = -212.0 / 729.0;
        static constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0,
                                a63 = 46732.0 / 5247.0, a64 = 49.0 / 176.0,
                                a65 = -5103.0 / 18656.0;
        static constexpr double b1 = 35.0 / 384.0, b3 = 500.0 / 1113.0, b4 = 125.0 / 192.0,
                                b5 = -2187.0 / 6784.0, b6 = 11.0 / 84.0;
        static constexpr double e1 = 35.0 / 384.0 - 5179.0 / 57600.0,
                                e3 = 500.0 / 1113.0 - 7571.0 / 16695.0,
                                e4 = 125.0 / 192.0 - 393.0 / 640.0,
                                e5 = -2187.0 / 6784.0 + 92097.0 / 339200.0,
                                e6 = 11.0 / 84.0 - 187.0 / 2100.0,
                                e7 = -1.0 / 40.0;

        const State<N> k1 = rhs_(t, y);
        const State<N> k2 = rhs_(t + h / 5.0, axpy<1>(y, h, {a21}, {&k1}));
        const State<N> k3 = rhs_(t + 3.0 * h / 10.0, axpy<2>(y, h, {a31, a32}, {&k1, &k2}));
        const State<N> k4 = rhs_(t + 4.0 * h / 5.0,
                                 axpy<3>(y, h, {a41, a42, a43}, {&k1, &k2, &k3}));
        const State<N> k5 = rhs_(t + 8.0 * h / 9.0,
                                 axpy<4>(y, h, {a51, a52, a53, a54}, {&k1, &k2, &k3, &k4}));
        const State<N> k6 = rhs_(t + h,
                                 axpy<5>(y, h, {a61, a62, a63, a64, a65},
                                         {&k1, &k2, &k3, &k4, &k5}));
        const State<N> y5 = axpy<6>(y, h, {b1, 0.0, b3, b4, b5, b6},
                                    {&k1, &k2, &k3, &k4, &k5, &k6});
        const State<N> k7 = rhs_(t + h, y5);

        double err = 0.0;
        for (std::size_t i = 0; i < N; ++i) {
            const double ei = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i]
                                   + e6 * k6[i] + e7 * k7[i]);
            const double scale = atol_ + rtol_ * std::max(std::abs(y[i]), std::abs(y5[i]));
            err = std::max(err, std::abs(ei) / scale);
        }

        step_result r;
        r.accepted = err <= 1.0;
        r.t_new = t + h;
        r.y_new = y5;
        const double factor = (err > 0.0) ? 0.9 * std::pow(err, -0.2) : 5.0;
        r.h_next = h * std::min(5.0, std::max(0.2, factor));
        return r;
    }

    template <std::size_t M>
    static State<N> axpy(const State<N>& y, double h, const std::array<double, M>& coef,
                         const std::array<const State<N>*, M>& ks) {
        State<N> out = y;
        for (std::size_t j = 0; j < M; ++j) {
            if (coef[j] == 0.0) continue;
            for (std::size_t i = 0; i < N; ++i) out[i] += h * coef[j] * (*ks[j])[i];
        }
        return out;
    }

    Rhs rhs_;
    double rtol_, atol_;
};

}} // namespace systolica::num
