#include "antisym/model.hpp"

#include <algorithm>
#include <cmath>

namespace antisym {

void PairParams::validate() const {
    if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("PairParams: p must lie in (0,1)");
    if (!(F > 0.0)) throw std::invalid_argument("PairParams: F must be positive");
    if (!(a > 0.0)) throw std::invalid_argument("PairParams: a must be positive");
    if (N1 >= N2) throw std::invalid_argument("PairParams: N1 must be < N2");
}

std::vector<Move> transition_rates(const PairState& s, const PairParams& pp) {
    if (s.n >= s.m) throw std::invalid_argument("transition_rates: state requires n < m");
    const double in = 2.0 * pp.F * pp.p;
    const double out = 2.0 * pp.F * (1.0 - pp.p);
    std::vector<Move> moves;
    moves.reserve(4);
    const bool adjacent = s.m - s.n == 1;
    if (!adjacent) moves.push_back({{s.n + 1, s.m}, in});
    moves.push_back({{s.n - 1, s.m}, out});
    if (!adjacent) moves.push_back({{s.n, s.m - 1}, in});
    moves.push_back({{s.n, s.m + 1}, out});
    return moves;
}

double total_rate(const PairState& s, const PairParams& pp) {
    return s.m - s.n == 1 ? 4.0 * pp.F * (1.0 - pp.p) : 4.0 * pp.F;
}

double JointDistribution::at(long n, long m) const {
    if (!contains(n, m)) return 0.0;
    const int w = width();
    return prob[static_cast<std::size_t>(n - lo()) * w + static_cast<std::size_t>(m - lo())];
}

double JointDistribution::mass() const {
    double s = 0.0;
    for (double x : prob) s += x;
    return s;
}

namespace {

// dP/dt for the truncated generator; flow out of the window is lost.
void apply_generator(const std::vector<double>& P, std::vector<double>& dP, int w, double in,
                     double out) {
    std::fill(dP.begin(), dP.end(), 0.0);
    for (int i = 0; i < w; ++i) {
        for (int j = i + 1; j < w; ++j) {
            const double x = P[static_cast<std::size_t>(i) * w + j];
            if (x == 0.0) continue;
            const std::size_t k = static_cast<std::size_t>(i) * w + j;
            const bool adjacent = j - i == 1;
            double loss = 2.0 * out;
            // left walker outward, right walker outward
            if (i > 0) dP[k - w] += out * x;
            if (j + 1 < w) dP[k + 1] += out * x;
            if (!adjacent) {
                loss += 2.0 * in;
                dP[k + w] += in * x;
                dP[k - 1] += in * x;
            }
            dP[k] -= loss * x;
        }
    }
}

bool run_window(const PairParams& pp, const std::vector<double>& t_grid, int L,
                double leak_tol, std::vector<JointDistribution>& out_snaps, double& leak_out) {
    const long center = (pp.N1 + pp.N2) / 2;
    const int w = 2 * L + 1;
    const std::size_t size = static_cast<std::size_t>(w) * w;
    std::vector<double> P(size, 0.0), k1(size), k2(size), k3(size), k4(size), tmp(size);
    const long lo = center - L;
    P[static_cast<std::size_t>(pp.N1 - lo) * w + static_cast<std::size_t>(pp.N2 - lo)] = 1.0;

    const double in = 2.0 * pp.F * pp.p;
    const double out = 2.0 * pp.F * (1.0 - pp.p);
    const double dt_max = std::min(0.01 / pp.F, 0.1 / (4.0 * pp.F));

    out_snaps.clear();
    double t = 0.0;
    for (double target : t_grid) {
        const double span = target - t;
        const long steps = span > 0.0 ? static_cast<long>(std::ceil(span / dt_max - 1e-9)) : 0;
        const double h = steps > 0 ? span / steps : 0.0;
        for (long s = 0; s < steps; ++s) {
            apply_generator(P, k1, w, in, out);
            for (std::size_t q = 0; q < size; ++q) tmp[q] = P[q] + 0.5 * h * k1[q];
            apply_generator(tmp, k2, w, in, out);
            for (std::size_t q = 0; q < size; ++q) tmp[q] = P[q] + 0.5 * h * k2[q];
            apply_generator(tmp, k3, w, in, out);
            for (std::size_t q = 0; q < size; ++q) tmp[q] = P[q] + h * k3[q];
            apply_generator(tmp, k4, w, in, out);
            for (std::size_t q = 0; q < size; ++q)
                P[q] += h / 6.0 * (k1[q] + 2.0 * k2[q] + 2.0 * k3[q] + k4[q]);
        }
        t = target;
        JointDistribution d;
        d.L = L;
        d.center = center;
        d.t = t;
        d.prob = P;
        d.leaked = std::max(0.0, 1.0 - d.mass());
        leak_out = d.leaked;
        if (d.leaked > leak_tol) return false;
        out_snaps.push_back(std::move(d));
    }
    return true;
}

}  // namespace

std::vector<JointDistribution> integrate_master(const PairParams& pp,
                                                const std::vector<double>& t_grid,
                                                const MasterSpec& spec) {
    pp.validate();
    if (t_grid.empty()) return {};
    if (t_grid.front() < 0.0) throw std::invalid_argument("integrate_master: times must be >= 0");
    for (std::size_t i = 1; i < t_grid.size(); ++i)
        if (!(t_grid[i] > t_grid[i - 1]))
            throw std::invalid_argument("integrate_master: t_grid must be increasing");

    const double t_max = t_grid.back();
    int L = spec.L > 0 ? spec.L
                       : static_cast<int>(std::ceil(8.0 * std::sqrt(pp.F * t_max))) +
                             static_cast<int>(pp.dN());
    // The start must sit inside the window.
    L = std::max<int>(L, static_cast<int>(pp.dN()) + 2);

    std::vector<JointDistribution> snaps;
    while (true) {
        double leak = 0.0;
        if (run_window(pp, t_grid, L, spec.leak_tol, snaps, leak)) return snaps;
        const int next = L + std::max(8, L / 2);
        if (!spec.auto_grow || next > spec.max_L) {
            throw TruncationError("integrate_master: truncation too small (L=" + std::to_string(L) +
                                      ", leaked " + std::to_string(leak) + "); grow L to at least " +
                                      std::to_string(next),
                                  next);
        }
        L = next;
    }
}

DistMoments moments_from_distribution(const JointDistribution& dist, const PairParams& pp) {
    DistMoments r;
    const int w = dist.width();
    const long lo = dist.lo();
    double s1 = 0.0, s2 = 0.0, m1 = 0.0, m2 = 0.0, sep = 0.0;
    for (int i = 0; i < w; ++i) {
        const double n = static_cast<double>(lo + i);
        for (int j = i + 1; j < w; ++j) {
            const double x = dist.prob[static_cast<std::size_t>(i) * w + j];
            if (x == 0.0) continue;
            const double m = static_cast<double>(lo + j);
            s1 += n * x;
            s2 += n * n * x;
            m1 += m * x;
            m2 += m * m * x;
            sep += (m - n) * x;
        }
    }
    const double a = pp.a;
    r.d = a * sep;
    r.mean_x1 = a * s1;
    r.second_x1 = a * a * s2;
    r.msd_x1 = r.second_x1 - r.mean_x1 * r.mean_x1;
    r.mean_x2 = a * m1;
    r.second_x2 = a * a * m2;
    return r;
}

std::complex<double> generating_function(const JointDistribution& dist, double phi, double psi) {
    const int w = dist.width();
    const long lo = dist.lo();
    std::complex<double> sum = 0.0;
    for (int i = 0; i < w; ++i) {
        const double n = static_cast<double>(lo + i);
        std::complex<double> row = 0.0;
        for (int j = i + 1; j < w; ++j) {
            const double x = dist.prob[static_cast<std::size_t>(i) * w + j];
            if (x == 0.0) continue;
            const double m = static_cast<double>(lo + j);
            row += x * std::polar(1.0, m * psi);
        }
        sum += row * std::polar(1.0, n * phi);
    }
    return sum;
}

}  // namespace antisym
