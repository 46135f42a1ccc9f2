#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "antisym/model.hpp"

namespace antisym::mc {

/// Philox4x32-10 counter-based generator (Salmon et al., SC'11).
struct Philox4x32 {
    using Counter = std::array<std::uint32_t, 4>;
    using Key = std::array<std::uint32_t, 2>;
    static Counter apply(Counter ctr, Key key);
};

/// Independent random stream for one replica, keyed by (seed, replica).
class ReplicaStream {
public:
    ReplicaStream(std::uint64_t seed, std::uint64_t replica);
    std::uint64_t next_u64();
    /// Uniform on (0, 1].
    double uniform_open0();

private:
    Philox4x32::Key key_;
    std::uint64_t replica_;
    std::uint64_t block_ = 0;
    std::array<std::uint64_t, 2> buffer_{};
    int used_ = 2;
};

/// Exact event-driven trajectory; returns the state at each time of `t_grid`
/// (physical time, non-decreasing, >= 0).
std::vector<PairState> simulate_pair(const PairParams& params, const std::vector<double>& t_grid,
                                     ReplicaStream& rng);

struct EnsembleSpec {
    std::uint64_t n_replicas = 100000;
    std::vector<double> t_grid;  ///< physical times, strictly increasing
    std::uint64_t seed = 1;
    int threads = 1;
    /// Replicas per accumulation block. Blocks are merged in index order, so
    /// results do not depend on the thread count.
    std::uint64_t block_size = 4096;
};

struct MomentSeries {
    std::vector<double> t;
    std::vector<double> d, d_se;
    std::vector<double> x2, x2_se;
    std::vector<double> msd, msd_se;
    std::vector<double> mean_x1;
    std::uint64_t n_replicas = 0;
};

/// Sample moments of the left walker and the separation with standard errors.
MomentSeries ensemble_moments(const PairParams& params, const EnsembleSpec& spec);

}  // namespace antisym::mc
