#include "efluid/linear/measurement.hpp"

#include "efluid/errors.hpp"

#include <algorithm>
#include <cmath>
#include <fftw3.h>
#include <fmt/format.h>
#include <mutex>
#include <numbers>
#include <vector>

namespace efluid::linear {

using cplx = std::complex<double>;

namespace {

constexpr std::size_t min_samples = 16;
constexpr std::size_t padding = 8;

double sample_interval(std::span<const double> times, std::size_t count)
{
    if (times.size() != count) throw ValidationError("mode_measurement: times and samples differ in length");
    if (count < min_samples) {
        throw ValidationError(fmt::format("mode_measurement: needs at least {} samples (got {})", min_samples, count));
    }
    const double dt = (times.back() - times.front()) / static_cast<double>(count - 1);
    if (!(dt > 0.0)) throw ValidationError("mode_measurement: times must increase");
    for (std::size_t n = 1; n < count; ++n) {
        if (std::abs((times[n] - times[n - 1]) - dt) > 1e-6 * dt) {
            throw ValidationError(fmt::format("mode_measurement: non-uniform sampling at index {}", n));
        }
    }
    return dt;
}

bool is_flat(std::span<const cplx> z)
{
    cplx mean = 0.0;
    double peak = 0.0;
    for (const auto& v : z) {
        mean += v;
        peak = std::max(peak, std::abs(v));
    }
    mean /= static_cast<double>(z.size());
    double spread = 0.0;
    for (const auto& v : z) spread = std::max(spread, std::abs(v - mean));
    return spread <= 1e-12 * peak || spread == 0.0;
}

// The FFTW planner is not thread-safe.
std::mutex& planner_mutex()
{
    static std::mutex m;
    return m;
}

std::vector<double> padded_spectrum(std::span<const cplx> z)
{
    const std::size_t n = z.size();
    std::size_t m = 1;
    while (m < padding * n) m <<= 1;

    fftw_complex* buf = fftw_alloc_complex(m);
    fftw_plan plan;
    {
        std::lock_guard lock(planner_mutex());
        plan = fftw_plan_dft_1d(static_cast<int>(m), buf, buf, FFTW_FORWARD, FFTW_ESTIMATE);
    }
    for (std::size_t j = 0; j < m; ++j) {
        if (j < n) {
            const double w = 0.5 * (1.0 - std::cos(2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(n - 1)));
            buf[j][0] = w * z[j].real();
            buf[j][1] = w * z[j].imag();
        } else {
            buf[j][0] = buf[j][1] = 0.0;
        }
    }
    fftw_execute(plan);
    std::vector<double> mag(m);
    for (std::size_t j = 0; j < m; ++j) mag[j] = std::hypot(buf[j][0], buf[j][1]);
    {
        std::lock_guard lock(planner_mutex());
        fftw_destroy_plan(plan);
    }
    fftw_free(buf);
    return mag;
}

std::optional<double> peak_frequency(std::span<const cplx> z, double dt, bool real_input)
{
    const auto mag = padded_spectrum(z);
    const std::size_t m = mag.size();
    const std::size_t search_end = real_input ? m / 2 + 1 : m;
    std::size_t p = 0;
    for (std::size_t j = 1; j < search_end; ++j)
        if (mag[j] > mag[p]) p = j;
    if (!(mag[p] > 0.0)) return std::nullopt;

    const std::size_t lo = p == 0 ? m - 1 : p - 1;
    const std::size_t hi = p == m - 1 ? 0 : p + 1;
    double delta = 0.0;
    if (mag[lo] > 0.0 && mag[hi] > 0.0) {
        const double l = std::log(mag[lo]), c = std::log(mag[p]), r = std::log(mag[hi]);
        const double denom = l - 2.0 * c + r;
        if (denom < 0.0) delta = 0.5 * (l - r) / denom;
    }
    double bin = static_cast<double>(p) + delta;
    if (bin > 0.5 * static_cast<double>(m)) bin -= static_cast<double>(m);
    return 2.0 * std::numbers::pi * std::abs(bin) / (static_cast<double>(m) * dt);
}

std::optional<double> log_slope(const std::vector<double>& t, const std::vector<double>& y)
{
    if (t.size() < 2) return std::nullopt;
    double tm = 0.0, ym = 0.0;
    for (std::size_t n = 0; n < t.size(); ++n) {
        tm += t[n];
        ym += y[n];
    }
    tm /= static_cast<double>(t.size());
    ym /= static_cast<double>(t.size());
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t n = 0; n < t.size(); ++n) {
        sxy += (t[n] - tm) * (y[n] - ym);
        sxx += (t[n] - tm) * (t[n] - tm);
    }
    if (!(sxx > 0.0)) return std::nullopt;
    return sxy / sxx;
}

std::optional<double> complex_envelope_rate(std::span<const double> times, std::span<const cplx> z)
{
    std::vector<double> t, y;
    for (std::size_t n = 0; n < z.size(); ++n) {
        const double a = std::abs(z[n]);
        if (a > 0.0) {
            t.push_back(times[n]);
            y.push_back(std::log(a));
        }
    }
    return log_slope(t, y);
}

std::optional<double> real_envelope_rate(std::span<const double> times, std::span<const double> x, double dt)
{
    std::vector<double> t, y;
    for (std::size_t n = 1; n + 1 < x.size(); ++n) {
        const double l = std::abs(x[n - 1]), c = std::abs(x[n]), r = std::abs(x[n + 1]);
        if (!(c > l && c >= r) || c == 0.0) continue;
        const double denom = l - 2.0 * c + r;
        double delta = 0.0, peak = c;
        if (denom < 0.0) {
            delta = 0.5 * (l - r) / denom;
            peak = c - 0.25 * (l - r) * delta;
        }
        t.push_back(times[n] + delta * dt);
        y.push_back(std::log(peak));
    }
    return log_slope(t, y);
}

} // namespace

ModeMeasurement mode_measurement(std::span<const double> times, std::span<const cplx> samples)
{
    const double dt = sample_interval(times, samples.size());
    if (is_flat(samples)) return {};
    return {peak_frequency(samples, dt, false), complex_envelope_rate(times, samples)};
}

ModeMeasurement mode_measurement(std::span<const double> times, std::span<const double> samples)
{
    const double dt = sample_interval(times, samples.size());
    std::vector<cplx> z(samples.begin(), samples.end());
    if (is_flat(z)) return {};
    return {peak_frequency(z, dt, true), real_envelope_rate(times, samples, dt)};
}

} // namespace efluid::linear
