// Globally adaptive Gauss-Kronrod 7-15 quadrature on finite intervals.
// The worst segment (largest error estimate) is bisected until the summed
// error meets max(abs_tol, rel_tol * |integral|) or the subdivision budget
// is exhausted, in which case a QuadratureError carrying the best estimate
// is thrown.
#pragma once

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace beamplan {

struct QuadratureSettings {
    double relative_tolerance = 1e-6;
    double absolute_tolerance = 1e-10;
    int max_subdivisions = 200;
    /// Truncation threshold for semi-infinite integrals: the analytic tail
    /// envelope beyond the chosen cutoff point is kept below this mass.
    double tail_mass_cutoff = 1e-9;

    /// Tolerance budget for one nesting level down (a tenth of this level).
    QuadratureSettings inner() const {
        QuadratureSettings s = *this;
        s.relative_tolerance /= 10.0;
        s.absolute_tolerance /= 10.0;
        return s;
    }
};

struct QuadratureResult {
    double value = 0.0;
    double error_estimate = 0.0;
    int subdivisions = 0;
};

class QuadratureError : public std::runtime_error {
  public:
    QuadratureError(const std::string& what, double estimate, double error_estimate)
        : std::runtime_error(what), estimate_(estimate), error_estimate_(error_estimate) {}
    /// Best value reached before giving up.
    double estimate() const { return estimate_; }
    /// Error estimate attached to that value.
    double error_estimate() const { return error_estimate_; }

  private:
    double estimate_;
    double error_estimate_;
};

namespace detail {

// QUADPACK dqk15 abscissae/weights on [-1, 1].
inline constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120813, 0.949107912342759, 0.864864423359769, 0.741531185599394,
    0.586087235467691, 0.405845151377397, 0.207784955007898, 0.0};
inline constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728};
inline constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168870, 0.279705391489277, 0.381830050505119, 0.417959183673469};

struct Segment {
    double a, b, value, error;
};

template <class F>
Segment evaluate_segment(F&& f, double a, double b) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);

    std::array<double, 15> fv{};
    for (int i = 0; i < 7; ++i) {
        fv[i] = f(center - half * kKronrodNodes[i]);
        fv[14 - i] = f(center + half * kKronrodNodes[i]);
    }
    fv[7] = f(center);

    double resk = kKronrodWeights[7] * fv[7];
    double resg = kGaussWeights[3] * fv[7];
    for (int i = 0; i < 7; ++i) resk += kKronrodWeights[i] * (fv[i] + fv[14 - i]);
    for (int i = 0; i < 3; ++i) resg += kGaussWeights[i] * (fv[2 * i + 1] + fv[13 - 2 * i]);

    const double mean = resk * 0.5;
    double resasc = kKronrodWeights[7] * std::abs(fv[7] - mean);
    for (int i = 0; i < 7; ++i)
        resasc += kKronrodWeights[i] * (std::abs(fv[i] - mean) + std::abs(fv[14 - i] - mean));
    resasc *= half;

    double err = std::abs(resk - resg) * half;
    if (resasc != 0.0 && err != 0.0)
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    return Segment{a, b, resk * half, err};
}

}  // namespace detail

template <class F>
QuadratureResult integrate(F&& f, double a, double b, double rel_tol, double abs_tol,
                           int max_subdivisions) {
    if (!(b >= a)) throw std::invalid_argument("integration bounds out of order");
    if (a == b) return {0.0, 0.0, 0};

    std::vector<detail::Segment> segments;
    segments.push_back(detail::evaluate_segment(f, a, b));

    int splits = 0;
    while (true) {
        double total = 0.0, err = 0.0;
        std::size_t worst = 0;
        for (std::size_t i = 0; i < segments.size(); ++i) {
            total += segments[i].value;
            err += segments[i].error;
            if (segments[i].error > segments[worst].error) worst = i;
        }
        if (!std::isfinite(total))
            throw QuadratureError("integrand produced a non-finite value", total, err);
        if (err <= std::max(abs_tol, rel_tol * std::abs(total)))
            return {total, err, splits};
        if (splits >= max_subdivisions)
            throw QuadratureError("quadrature did not converge within the subdivision budget " +
                                      std::string("(achieved error ") + std::to_string(err) + ")",
                                  total, err);
        detail::Segment s = segments[worst];
        double mid = 0.5 * (s.a + s.b);
        if (mid <= s.a || mid >= s.b)
            throw QuadratureError("interval too small to subdivide further", total, err);
        segments[worst] = detail::evaluate_segment(f, s.a, mid);
        segments.push_back(detail::evaluate_segment(f, mid, s.b));
        ++splits;
    }
}

template <class F>
QuadratureResult integrate(F&& f, double a, double b, const QuadratureSettings& settings) {
    return integrate(static_cast<F&&>(f), a, b, settings.relative_tolerance,
                     settings.absolute_tolerance, settings.max_subdivisions);
}

}  // namespace beamplan
