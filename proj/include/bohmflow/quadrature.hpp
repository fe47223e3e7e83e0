#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <queue>
#include <vector>

namespace bohmflow::quad {

// Gauss-Kronrod 7/15 nodes and weights on [-1, 1] (positive half, centre last).
inline constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
inline constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
// Gauss weights for Kronrod nodes 1, 3, 5, 7.
inline constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <size_t N>
using CVec = std::array<std::complex<double>, N>;

template <size_t N>
CVec<N>& operator+=(CVec<N>& a, const CVec<N>& b) {
    for (size_t i = 0; i < N; ++i) a[i] += b[i];
    return a;
}

template <size_t N>
double magnitude(const CVec<N>& v) {
    double m = 0.0;
    for (const auto& c : v) m = std::max(m, std::abs(c));
    return m;
}

template <size_t N>
struct Result {
    CVec<N> value{};
    double error = 0.0;
    bool converged = true;
    int evaluations = 0;
};

struct Options {
    double abs_tol = 1e-14;
    double rel_tol = 1e-11;
    int max_segments = 20000;
};

namespace detail {

template <size_t N>
struct Segment {
    double a, b;
    CVec<N> value;
    double error;
    double floor;  // round-off level of the segment, 50 eps * int |f|
    bool operator<(const Segment& o) const { return error < o.error; }
};

template <size_t N, class F>
Segment<N> kronrod15(F& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    CVec<N> kronrod{}, gauss{};
    std::array<double, N> absolute{};
    const CVec<N> fc = f(c);
    for (size_t i = 0; i < N; ++i) {
        kronrod[i] = kKronrodWeights[7] * fc[i];
        gauss[i] = kGaussWeights[3] * fc[i];
        absolute[i] = kKronrodWeights[7] * std::abs(fc[i]);
    }
    for (size_t j = 0; j < 7; ++j) {
        const CVec<N> f1 = f(c - h * kKronrodNodes[j]);
        const CVec<N> f2 = f(c + h * kKronrodNodes[j]);
        for (size_t i = 0; i < N; ++i) {
            kronrod[i] += kKronrodWeights[j] * (f1[i] + f2[i]);
            if (j % 2 == 1) gauss[i] += kGaussWeights[j / 2] * (f1[i] + f2[i]);
            absolute[i] += kKronrodWeights[j] * (std::abs(f1[i]) + std::abs(f2[i]));
        }
    }
    Segment<N> s{a, b, {}, 0.0, 0.0};
    double err = 0.0, floor = 0.0;
    for (size_t i = 0; i < N; ++i) {
        s.value[i] = kronrod[i] * h;
        err = std::max(err, std::abs((kronrod[i] - gauss[i]) * h));
        floor = std::max(floor, 50.0 * std::numeric_limits<double>::epsilon() * absolute[i] * std::abs(h));
    }
    s.floor = floor;
    s.error = std::max(err, floor);
    return s;
}

} // namespace detail

/// Globally adaptive Gauss-Kronrod (7/15) integration of a vector of complex integrands
/// over a partition given by strictly monotone breakpoints. Segments with the largest
/// error estimate are bisected until the summed estimate meets the tolerance, or until it
/// is down at the round-off level of the summed |f| (heavily cancelling integrands).
template <size_t N, class F>
Result<N> integrate_partition(F&& f, const std::vector<double>& edges, const Options& opts = {}) {
    std::priority_queue<detail::Segment<N>> heap;
    Result<N> r;
    double total_err = 0.0, total_floor = 0.0;
    for (size_t i = 0; i + 1 < edges.size(); ++i) {
        auto s = detail::kronrod15<N>(f, edges[i], edges[i + 1]);
        r.evaluations += 15;
        r.value += s.value;
        total_err += s.error;
        total_floor += s.floor;
        heap.push(s);
    }
    int segments = static_cast<int>(heap.size());
    while (total_err > std::max({opts.abs_tol, opts.rel_tol * magnitude(r.value), 1.5 * total_floor})) {
        if (segments >= opts.max_segments) {
            r.converged = false;
            break;
        }
        auto worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(mid > std::min(worst.a, worst.b) && mid < std::max(worst.a, worst.b))) {
            r.converged = false;
            break;
        }
        auto left = detail::kronrod15<N>(f, worst.a, mid);
        auto right = detail::kronrod15<N>(f, mid, worst.b);
        r.evaluations += 30;
        for (size_t i = 0; i < N; ++i) r.value[i] += left.value[i] + right.value[i] - worst.value[i];
        total_err += left.error + right.error - worst.error;
        total_floor += left.floor + right.floor - worst.floor;
        heap.push(left);
        heap.push(right);
        ++segments;
    }
    // Re-sum to shed the drift of the incremental updates.
    CVec<N> sum{};
    double err = 0.0;
    while (!heap.empty()) {
        sum += heap.top().value;
        err += heap.top().error;
        heap.pop();
    }
    r.value = sum;
    r.error = err;
    return r;
}

/// integrate_partition over [a, b] split into `initial_segments` equal pieces.
template <size_t N, class F>
Result<N> integrate(F&& f, double a, double b, const Options& opts = {}, int initial_segments = 1) {
    std::vector<double> edges;
    initial_segments = std::max(1, initial_segments);
    for (int i = 0; i <= initial_segments; ++i) edges.push_back(a + (b - a) * i / initial_segments);
    return integrate_partition<N>(f, edges, opts);
}

} // namespace bohmflow::quad
