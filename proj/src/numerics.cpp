#include "antisym/numerics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <vector>

namespace antisym::numerics {

namespace {

// Above this point the Hankel expansion reaches full double precision
// before its terms start to grow.
constexpr double kBesselSwitch = 25.0;

double bessel_i_series_scaled(int order, double x) {
    const double half = 0.5 * x;
    const double q = half * half;
    double term = order == 0 ? 1.0 : half;
    double sum = term;
    for (int k = 1; k < 500; ++k) {
        term *= q / (static_cast<double>(k) * static_cast<double>(k + order));
        sum += term;
        if (term < sum * 1e-17) break;
    }
    return sum * std::exp(-x);
}

double bessel_i_asymptotic_scaled(int order, double x) {
    const double mu = 4.0 * order * order;
    double term = 1.0;
    double sum = 1.0;
    for (int k = 1; k < 60; ++k) {
        const double odd = 2.0 * k - 1.0;
        const double next = -term * (mu - odd * odd) / (8.0 * k * x);
        if (std::abs(next) > std::abs(term)) break;
        term = next;
        sum += term;
        if (std::abs(term) < 1e-17 * std::abs(sum)) break;
    }
    return sum / std::sqrt(2.0 * kPi * x);
}

// 15-point Kronrod extension of the 7-point Gauss rule.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
    double lo;
    double hi;
    double value;
    double error;
    double abs_value;
    int depth;
    bool operator<(const Segment& other) const { return error < other.error; }
};

Segment gk15(const std::function<double(double)>& f, double lo, double hi, int depth) {
    const double center = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);
    const double fc = f(center);
    double kronrod = fc * kWgk[7];
    double gauss = fc * kWg[3];
    double abs_sum = std::abs(fc) * kWgk[7];
    for (int j = 0; j < 7; ++j) {
        const double dx = half * kXgk[j];
        const double f1 = f(center - dx);
        const double f2 = f(center + dx);
        kronrod += kWgk[j] * (f1 + f2);
        abs_sum += kWgk[j] * (std::abs(f1) + std::abs(f2));
        if (j % 2 == 1) gauss += kWg[j / 2] * (f1 + f2);
    }
    Segment s{lo, hi, kronrod * half, std::abs((kronrod - gauss) * half), abs_sum * std::abs(half),
              depth};
    return s;
}

}  // namespace

double bessel_i_scaled(int order, double x) {
    if (order != 0 && order != 1) throw std::invalid_argument("bessel_i_scaled: order must be 0 or 1");
    if (!(x >= 0.0)) throw std::invalid_argument("bessel_i_scaled: x must be >= 0");
    if (x == 0.0) return order == 0 ? 1.0 : 0.0;
    if (x < kBesselSwitch) return bessel_i_series_scaled(order, x);
    return bessel_i_asymptotic_scaled(order, x);
}

double erfc(double x) { return std::erfc(x); }
double erf(double x) { return std::erf(x); }

double erfcx(double x) {
    if (x < 4.0) {
        if (x < -26.0) return std::numeric_limits<double>::infinity();
        return std::exp(x * x) * std::erfc(x);
    }
    // Continued fraction, evaluated bottom-up.
    double t = x;
    for (int n = 80; n >= 1; --n) t = x + 0.5 * n / t;
    return 1.0 / (std::sqrt(kPi) * t);
}

QuadratureResult adaptive_quad(const std::function<double(double)>& f, double lo, double hi,
                               const QuadratureSpec& spec) {
    if (!(spec.abs_tol > 0.0) || !(spec.rel_tol > 0.0))
        throw std::invalid_argument("adaptive_quad: tolerances must be positive");
    if (lo == hi) return {};
    if (hi < lo) {
        auto r = adaptive_quad(f, hi, lo, spec);
        return {-r.value, r.error};
    }
    std::priority_queue<Segment> heap;
    Segment first = gk15(f, lo, hi, 0);
    double total = first.value;
    double total_err = first.error;
    double total_abs = first.abs_value;
    heap.push(first);

    constexpr double kEps = std::numeric_limits<double>::epsilon();
    auto target = [&] {
        return std::max({spec.abs_tol, spec.rel_tol * std::abs(total), 50.0 * kEps * total_abs});
    };
    while (total_err > target()) {
        Segment worst = heap.top();
        if (worst.depth >= spec.max_depth || heap.size() > 20000) {
            throw QuadratureError("adaptive_quad: tolerance not met within max_depth",
                                  {total, total_err});
        }
        heap.pop();
        const double mid = 0.5 * (worst.lo + worst.hi);
        Segment left = gk15(f, worst.lo, mid, worst.depth + 1);
        Segment right = gk15(f, mid, worst.hi, worst.depth + 1);
        total += left.value + right.value - worst.value;
        total_err += left.error + right.error - worst.error;
        total_abs += left.abs_value + right.abs_value - worst.abs_value;
        heap.push(left);
        heap.push(right);
    }
    // Re-sum to shed the drift of the running updates.
    double value = 0.0;
    double err = 0.0;
    while (!heap.empty()) {
        value += heap.top().value;
        err += heap.top().error;
        heap.pop();
    }
    return {value, err};
}

cplx adaptive_quad_complex(const std::function<cplx(double)>& f, double lo, double hi,
                           const QuadratureSpec& spec) {
    const auto re = adaptive_quad([&](double s) { return f(s).real(); }, lo, hi, spec);
    const auto im = adaptive_quad([&](double s) { return f(s).imag(); }, lo, hi, spec);
    return {re.value, im.value};
}

QuadratureResult adaptive_quad_sqrt_endpoint(const std::function<double(double)>& f, double lo,
                                             double hi, const QuadratureSpec& spec) {
    if (hi <= lo) return {};
    const double umax = std::sqrt(hi - lo);
    return adaptive_quad([&](double u) { return 2.0 * u * f(lo + u * u); }, 0.0, umax, spec);
}

double talbot_fixed(const std::function<cplx(cplx)>& transform, double t, int nodes) {
    if (!(t > 0.0)) throw std::invalid_argument("talbot_fixed: t must be positive");
    const int m = nodes;
    const double r = 2.0 * m / (5.0 * t);
    double sum = 0.5 * (transform(cplx(r, 0.0)) * std::exp(r * t)).real();
    for (int k = 1; k < m; ++k) {
        const double theta = k * kPi / m;
        const double cot = std::cos(theta) / std::sin(theta);
        const cplx s(r * theta * cot, r * theta);
        const double sigma = theta + (theta * cot - 1.0) * cot;
        sum += (std::exp(t * s) * transform(s) * cplx(1.0, sigma)).real();
    }
    return r / m * sum;
}

double inverse_laplace(const std::function<cplx(cplx)>& transform, double t,
                       const TalbotSpec& spec) {
    if (spec.nodes < 8) throw std::invalid_argument("inverse_laplace: need at least 8 nodes");
    const double fine = talbot_fixed(transform, t, spec.nodes);
    const double coarse = talbot_fixed(transform, t, (3 * spec.nodes) / 4);
    if (!std::isfinite(fine) ||
        std::abs(fine - coarse) > spec.tol * std::max(1.0, std::abs(fine))) {
        throw LaplaceInversionError("inverse_laplace: contour resolutions disagree at t=" +
                                    std::to_string(t) + " (" + std::to_string(fine) + " vs " +
                                    std::to_string(coarse) + ")");
    }
    return fine;
}

cplx inverse_laplace_complex(const std::function<cplx(cplx)>& transform, double t,
                             const TalbotSpec& spec) {
    auto re = [&](cplx s) { return 0.5 * (transform(s) + std::conj(transform(std::conj(s)))); };
    auto im = [&](cplx s) {
        return (transform(s) - std::conj(transform(std::conj(s)))) / cplx(0.0, 2.0);
    };
    return {inverse_laplace(re, t, spec), inverse_laplace(im, t, spec)};
}

}  // namespace antisym::numerics
