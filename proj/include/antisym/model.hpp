#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace antisym {

/// Lattice parameters of the two-walker process.
struct PairParams {
    double p = 0.5;  ///< inward hop probability
    double F = 1.0;  ///< hop rate
    double a = 1.0;  ///< lattice spacing
    long N1 = 0;
    long N2 = 1;

    long dN() const { return N2 - N1; }
    /// Throws std::invalid_argument when an invariant is broken.
    void validate() const;
};

struct PairState {
    long n = 0;
    long m = 1;
};

struct Move {
    PairState to;
    double rate = 0.0;
};

/// Allowed moves out of `state`; blocked moves are absent.
/// Order: left particle right, left particle left, right particle left, right particle right.
std::vector<Move> transition_rates(const PairState& state, const PairParams& params);

/// Total outflow rate; 4F, or 4F(1-p) when the walkers are adjacent.
double total_rate(const PairState& state, const PairParams& params);

class TruncationError : public std::runtime_error {
public:
    TruncationError(const std::string& what, int required_L)
        : std::runtime_error(what), required_L_(required_L) {}
    int required_L() const noexcept { return required_L_; }

private:
    int required_L_;
};

/// Occupancy grid on sites [center - L, center + L], stored densely row-major
/// in (n, m); entries with n >= m are identically zero.
struct JointDistribution {
    int L = 0;
    long center = 0;
    double t = 0.0;
    double leaked = 0.0;
    std::vector<double> prob;

    long lo() const { return center - L; }
    long hi() const { return center + L; }
    int width() const { return 2 * L + 1; }
    bool contains(long n, long m) const { return n >= lo() && m <= hi() && n < m; }
    double at(long n, long m) const;
    double mass() const;
};

struct MasterSpec {
    /// Half-width; 0 selects ceil(8 sqrt(F t_max)) + dN.
    int L = 0;
    double leak_tol = 1e-10;
    bool auto_grow = true;
    int max_L = 4000;
};

/// Integrates the master equation from the point mass at (N1, N2) with
/// classical RK4 and returns one snapshot per entry of `t_grid`.
/// Throws TruncationError when leakage exceeds `leak_tol` and growing is
/// disabled or capped.
std::vector<JointDistribution> integrate_master(const PairParams& params,
                                                const std::vector<double>& t_grid,
                                                const MasterSpec& spec = {});

struct DistMoments {
    double d = 0.0;
    double mean_x1 = 0.0;
    double second_x1 = 0.0;
    double msd_x1 = 0.0;
    double mean_x2 = 0.0;
    double second_x2 = 0.0;
};

DistMoments moments_from_distribution(const JointDistribution& dist, const PairParams& params);

/// Sum of P_{n,m} e^{i n phi} e^{i m psi}.
std::complex<double> generating_function(const JointDistribution& dist, double phi, double psi);

}  // namespace antisym
