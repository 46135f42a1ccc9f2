#include "antisym/fp_solver.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace antisym::fp {

namespace {

struct Tridiag {
    std::vector<double> lo, di, up;
};

// Semi-discrete operator dR/dt = A R; A is tridiagonal.
Tridiag build_operator(int n, double h, double D, double v) {
    Tridiag A{std::vector<double>(n, 0.0), std::vector<double>(n, 0.0), std::vector<double>(n, 0.0)};
    // face flux J_{j+1/2} = -(2D (R_{j+1} - R_j)/h + v (R_{j+1} + R_j))
    const double dif = 2.0 * D / (h * h);
    const double adv = v / h;
    for (int j = 0; j < n; ++j) {
        // right face
        if (j + 1 < n) {
            A.di[j] += -dif + adv;
            A.up[j] += dif + adv;
        } else {
            // zero value at x_max through a mirrored ghost cell
            A.di[j] += -2.0 * dif;
        }
        // left face; j = 0 is the wall, where the flux is exactly zero
        if (j > 0) {
            A.di[j] += -dif - adv;
            A.lo[j] += dif - adv;
        }
    }
    return A;
}

void solve_tridiag(const Tridiag& M, std::vector<double>& rhs, std::vector<double>& work) {
    const std::size_t n = rhs.size();
    work.resize(n);
    double beta = M.di[0];
    rhs[0] /= beta;
    for (std::size_t j = 1; j < n; ++j) {
        work[j] = M.up[j - 1] / beta;
        beta = M.di[j] - M.lo[j] * work[j];
        rhs[j] = (rhs[j] - M.lo[j] * rhs[j - 1]) / beta;
    }
    for (std::size_t j = n - 1; j-- > 0;) rhs[j] -= work[j + 1] * rhs[j + 1];
}

void step(const Tridiag& A, double dt, double theta, std::vector<double>& R,
          std::vector<double>& rhs, std::vector<double>& work) {
    const std::size_t n = R.size();
    rhs.assign(n, 0.0);
    const double e = (1.0 - theta) * dt;
    for (std::size_t j = 0; j < n; ++j) {
        double ar = A.di[j] * R[j];
        if (j > 0) ar += A.lo[j] * R[j - 1];
        if (j + 1 < n) ar += A.up[j] * R[j + 1];
        rhs[j] = R[j] + e * ar;
    }
    Tridiag M = A;
    for (std::size_t j = 0; j < n; ++j) {
        M.lo[j] = -theta * dt * A.lo[j];
        M.up[j] = -theta * dt * A.up[j];
        M.di[j] = 1.0 - theta * dt * A.di[j];
    }
    solve_tridiag(M, rhs, work);
    R.swap(rhs);
}

double total(const std::vector<double>& R, double h) {
    double s = 0.0;
    for (double r : R) s += r;
    return s * h;
}

}  // namespace

double min_domain(const continuum::ContinuumParams& cp, double t_end) {
    // seven standard deviations of the separation, 2 sqrt(D t), past the drifted start
    return cp.dx0() + 14.0 * std::sqrt(cp.D * t_end) + 2.0 * std::abs(cp.v) * t_end;
}

double SeparationSolution::value_at(double xs) const {
    if (xs < 0.0 || x.empty()) return 0.0;
    const double pos = xs / h - 0.5;
    if (pos <= 0.0) {
        // linear extrapolation into the half cell next to the wall
        if (x.size() < 2) return R[0];
        return R[0] + (R[1] - R[0]) * pos;
    }
    const auto j = static_cast<std::size_t>(pos);
    if (j + 1 >= x.size()) return 0.0;
    const double w = pos - static_cast<double>(j);
    return (1.0 - w) * R[j] + w * R[j + 1];
}

SeparationSolution solve_separation_density(const continuum::ContinuumParams& cp,
                                            const GridSpec& grid) {
    cp.validate();
    if (grid.n_cells < 10) throw ConfigError("fp: n_cells must be >= 10");
    if (!(grid.t_end > 0.0)) throw ConfigError("fp: t_end must be positive");
    const double need = min_domain(cp, grid.t_end);
    const double X = grid.x_max > 0.0 ? grid.x_max : need;
    if (X < need * (1.0 - 1e-12))
        throw ConfigError("fp: x_max " + std::to_string(X) + " below required " + std::to_string(need));
    const int n = grid.n_cells;
    const double h = X / n;
    if (std::abs(cp.v) * h / cp.D > 2.0)
        throw ConfigError("fp: cell Peclet number |v| h / D exceeds 2; refine the grid");
    const double sigma = 2.0 * h;
    if (cp.dx0() < 3.0 * sigma)
        throw ConfigError("fp: initial separation must exceed three mollifier widths");

    SeparationSolution sol;
    sol.h = h;
    sol.x.resize(n);
    sol.R.resize(n);
    for (int j = 0; j < n; ++j) {
        sol.x[j] = (j + 0.5) * h;
        const double z = (sol.x[j] - cp.dx0()) / sigma;
        sol.R[j] = std::exp(-0.5 * z * z);
    }
    const double m0 = total(sol.R, h);
    for (double& r : sol.R) r /= m0;

    const double dt_target = grid.dt > 0.0 ? grid.dt : 0.5 * h;
    int steps = std::max(2, static_cast<int>(std::ceil(grid.t_end / dt_target - 1e-9)));
    const double dt = grid.t_end / steps;
    const Tridiag A = build_operator(n, h, cp.D, cp.v);
    std::vector<double> rhs, work;
    double prev = total(sol.R, h);
    auto track = [&] {
        const double m = total(sol.R, h);
        sol.max_step_mass_change = std::max(sol.max_step_mass_change, std::abs(m - prev));
        prev = m;
    };
    // startup: four backward-Euler half steps
    for (int k = 0; k < 4; ++k) {
        step(A, 0.5 * dt, 1.0, sol.R, rhs, work);
        track();
    }
    for (int k = 2; k < steps; ++k) {
        step(A, dt, 0.5, sol.R, rhs, work);
        track();
    }
    sol.t = grid.t_end;
    sol.dt = dt;
    sol.steps = steps;
    sol.mass = total(sol.R, h);
    return sol;
}

double compose_joint(const SeparationSolution& sol, const continuum::ContinuumParams& cp, double x1,
                     double x2) {
    if (x2 < x1) return 0.0;
    return continuum::centroid_density(0.5 * (x1 + x2), sol.t, cp) * sol.value_at(x2 - x1);
}

double sup_error(const SeparationSolution& sol, const continuum::ContinuumParams& cp) {
    double e = 0.0;
    for (std::size_t j = 0; j < sol.x.size(); ++j)
        e = std::max(e, std::abs(sol.R[j] - continuum::separation_density(sol.x[j], sol.t, cp)));
    return e;
}

}  // namespace antisym::fp
