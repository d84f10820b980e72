#pragma once

// Sampling of truncated series on concentric circles inside the unit disk.
//
// Every "for all z in U" condition is checked on a finite grid of circles
// |z| = r < 1. Results are numerical certificates on the sampled sub-disk
// |z| <= r_max, never proofs on the open disk.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <mutex>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <fftw3.h>
#include <json.hpp>

#include "ctcx/errors.hpp"
#include "ctcx/series.hpp"

namespace ctcx {

/// "Re(...) > 0" holds only when the sampled minimum minus the tail
/// estimate exceeds this margin.
inline constexpr double kStrictMargin = 1e-9;

/// Order at which certifiers should build closed-form inputs so that the
/// tail estimate on |z| = 0.99 stays below 1e-6 for coefficients of size O(1).
inline constexpr std::size_t kCertificationOrder = 2048;

struct DiskGrid {
    std::vector<double> radii;
    std::size_t angles_per_circle = 720;
    std::string label;

    /// Throws InvariantViolation unless radii are sorted, distinct, inside
    /// (0, 1) and angles_per_circle >= 8.
    void validate() const {
        if (radii.empty()) {
            throw InvariantViolation("grid: at least one radius is required");
        }
        for (std::size_t i = 0; i < radii.size(); ++i) {
            if (!(radii[i] > 0.0 && radii[i] < 1.0)) {
                throw InvariantViolation("grid: radii must lie strictly inside (0, 1)");
            }
            if (i > 0 && !(radii[i] > radii[i - 1])) {
                throw InvariantViolation("grid: radii must be strictly ascending");
            }
        }
        if (angles_per_circle < 8) {
            throw InvariantViolation("grid: angles_per_circle must be at least 8");
        }
    }

    [[nodiscard]] double r_max() const { return radii.back(); }

    [[nodiscard]] Complex point(std::size_t circle, std::size_t angle) const {
        const double theta = 2.0 * std::numbers::pi * static_cast<double>(angle) / static_cast<double>(angles_per_circle);
        return std::polar(radii[circle], theta);
    }
};

inline std::string make_grid_label(const std::vector<double>& radii, std::size_t angles) {
    std::ostringstream os;
    os << "r<=" << (radii.empty() ? 0.0 : radii.back()) << " circles=" << radii.size() << " angles=" << angles;
    return os.str();
}

inline DiskGrid make_grid(std::vector<double> radii, std::size_t angles, std::string label = {}) {
    DiskGrid g{std::move(radii), angles, std::move(label)};
    if (g.label.empty()) {
        g.label = make_grid_label(g.radii, g.angles_per_circle);
    }
    g.validate();
    return g;
}

/// Radii {0.3, 0.5, 0.7, 0.9, 0.95, 0.99}, 720 angles per circle.
inline DiskGrid default_grid() {
    return make_grid({0.3, 0.5, 0.7, 0.9, 0.95, 0.99}, 720, "default r<=0.99 x720");
}

/// Accepts {"radii": [...], "angles": n} with an optional "label".
inline DiskGrid grid_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("radii") || !j["radii"].is_array()) {
        throw ParseError("grid JSON needs a \"radii\" array");
    }
    std::vector<double> radii;
    for (const auto& r : j["radii"]) {
        if (!r.is_number()) {
            throw ParseError("grid radii must be numbers");
        }
        radii.push_back(r.get<double>());
    }
    std::size_t angles = 720;
    if (j.contains("angles")) {
        if (!j["angles"].is_number_integer() || j["angles"].get<long long>() <= 0) {
            throw ParseError("grid \"angles\" must be a positive integer");
        }
        angles = j["angles"].get<std::size_t>();
    }
    std::string label;
    if (j.contains("label") && j["label"].is_string()) {
        label = j["label"].get<std::string>();
    }
    return make_grid(std::move(radii), angles, std::move(label));
}

inline nlohmann::json grid_to_json(const DiskGrid& g) {
    return {{"radii", g.radii}, {"angles", g.angles_per_circle}, {"label", g.label}};
}

/// Horner evaluation without the disk check.
template <std::floating_point Real>
[[nodiscard]] std::complex<Real> horner(const BasicSeries<Real>& a, std::complex<Real> z) noexcept {
    std::complex<Real> acc{};
    for (std::size_t n = a.size(); n-- > 0;) {
        acc = acc * z + a[n];
    }
    return acc;
}

/// Sum of c_n z^n. Throws PointOutsideDisk when |z| >= 1.
template <std::floating_point Real>
[[nodiscard]] std::complex<Real> evaluate(const BasicSeries<Real>& a, std::complex<Real> z) {
    if (!(std::abs(z) < Real(1))) {
        throw PointOutsideDisk("evaluate: |z| must be < 1");
    }
    return horner(a, z);
}

/// Heuristic geometric majorant of the omitted tail on |z| = r:
/// M r^{N+1} / (1 - r), where M is the largest coefficient modulus among
/// the top quarter of retained indices.
template <std::floating_point Real>
[[nodiscard]] Real tail_bound(const BasicSeries<Real>& a, Real r) {
    if (!(r > 0 && r < 1)) {
        throw InvariantViolation("tail_bound: radius must lie in (0, 1)");
    }
    const std::size_t n_terms = a.size();
    const std::size_t top = std::max<std::size_t>(1, n_terms / 4);
    Real m = 0;
    for (std::size_t n = n_terms - top; n < n_terms; ++n) {
        m = std::max(m, std::abs(a[n]));
    }
    if (m == 0) {
        return 0;
    }
    return m * std::pow(r, static_cast<Real>(n_terms)) / (Real(1) - r);
}

namespace detail {

// The FFTW planner is not reentrant; plan execution is.
inline std::mutex& fftw_planner_mutex() {
    static std::mutex m;
    return m;
}

}  // namespace detail

/// Values of `a` at r e^{2 pi i j / m}, j = 0..m-1. The radius-scaled
/// coefficients are folded modulo m and summed by one inverse DFT, which
/// costs O(N + m log m) instead of O(N m) for Horner at each point.
[[nodiscard]] inline std::vector<Complex> circle_values(const Series& a, double r, std::size_t m) {
    std::vector<Complex> folded(m);
    double rn = 1.0;
    for (std::size_t n = 0; n < a.size(); ++n) {
        folded[n % m] += a[n] * rn;
        rn *= r;
    }
    std::vector<Complex> out(m);
    fftw_plan plan = nullptr;
    {
        std::lock_guard lock(detail::fftw_planner_mutex());
        plan = fftw_plan_dft_1d(static_cast<int>(m), reinterpret_cast<fftw_complex*>(folded.data()),
                                reinterpret_cast<fftw_complex*>(out.data()), FFTW_BACKWARD, FFTW_ESTIMATE);
    }
    fftw_execute(plan);
    {
        std::lock_guard lock(detail::fftw_planner_mutex());
        fftw_destroy_plan(plan);
    }
    return out;
}

/// Extremum of a scalar functional over grid points, with its location.
struct SampledExtremum {
    double value = 0.0;
    Complex point{};
};

/// Maximum of fn(a(z), z) over the grid. Ties keep the first point in
/// (circle, angle) index order; NaN values win so they cannot hide.
template <class Fn>
[[nodiscard]] SampledExtremum sample_max(const Series& a, const DiskGrid& grid, Fn&& fn) {
    SampledExtremum best{-std::numeric_limits<double>::infinity(), {}};
    bool seen_nan = false;
    for (std::size_t c = 0; c < grid.radii.size(); ++c) {
        const auto values = circle_values(a, grid.radii[c], grid.angles_per_circle);
        for (std::size_t j = 0; j < grid.angles_per_circle; ++j) {
            const Complex z = grid.point(c, j);
            const double v = fn(values[j], z);
            if (std::isnan(v)) {
                if (!seen_nan) {
                    best = {v, z};
                    seen_nan = true;
                }
                continue;
            }
            if (!seen_nan && v > best.value) {
                best = {v, z};
            }
        }
    }
    return best;
}

template <class Fn>
[[nodiscard]] SampledExtremum sample_min(const Series& a, const DiskGrid& grid, Fn&& fn) {
    auto r = sample_max(a, grid, [&](Complex w, Complex z) { return -fn(w, z); });
    r.value = -r.value;
    return r;
}

struct RangeStat {
    double min_real = 0.0;
    double max_abs = 0.0;
    Complex argmin_point{};
    Complex argmax_point{};
    double tail_estimate = 0.0;  ///< tail_bound at the largest grid radius
};

[[nodiscard]] inline RangeStat range_stats(const Series& a, const DiskGrid& grid) {
    grid.validate();
    RangeStat s;
    s.min_real = std::numeric_limits<double>::infinity();
    s.max_abs = -std::numeric_limits<double>::infinity();
    for (std::size_t c = 0; c < grid.radii.size(); ++c) {
        const auto values = circle_values(a, grid.radii[c], grid.angles_per_circle);
        for (std::size_t j = 0; j < grid.angles_per_circle; ++j) {
            const Complex z = grid.point(c, j);
            const Complex w = values[j];
            if (w.real() < s.min_real || std::isnan(w.real())) {
                if (!std::isnan(s.min_real)) {
                    s.min_real = w.real();
                    s.argmin_point = z;
                }
            }
            const double m = std::abs(w);
            if (m > s.max_abs || std::isnan(m)) {
                if (!std::isnan(s.max_abs)) {
                    s.max_abs = m;
                    s.argmax_point = z;
                }
            }
        }
    }
    s.tail_estimate = tail_bound(a, grid.r_max());
    return s;
}

}  // namespace ctcx
