#include "antisym/mc.hpp"

#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace antisym::mc {

Philox4x32::Counter Philox4x32::apply(Counter ctr, Key key) {
    constexpr std::uint32_t kM0 = 0xD2511F53u, kM1 = 0xCD9E8D57u;
    constexpr std::uint32_t kW0 = 0x9E3779B9u, kW1 = 0xBB67AE85u;
    for (int round = 0; round < 10; ++round) {
        if (round > 0) {
            key[0] += kW0;
            key[1] += kW1;
        }
        const std::uint64_t p0 = static_cast<std::uint64_t>(kM0) * ctr[0];
        const std::uint64_t p1 = static_cast<std::uint64_t>(kM1) * ctr[2];
        const auto hi0 = static_cast<std::uint32_t>(p0 >> 32), lo0 = static_cast<std::uint32_t>(p0);
        const auto hi1 = static_cast<std::uint32_t>(p1 >> 32), lo1 = static_cast<std::uint32_t>(p1);
        ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
    }
    return ctr;
}

ReplicaStream::ReplicaStream(std::uint64_t seed, std::uint64_t replica)
    : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
      replica_(replica) {}

std::uint64_t ReplicaStream::next_u64() {
    if (used_ == 2) {
        const Philox4x32::Counter ctr{static_cast<std::uint32_t>(block_),
                                      static_cast<std::uint32_t>(block_ >> 32),
                                      static_cast<std::uint32_t>(replica_),
                                      static_cast<std::uint32_t>(replica_ >> 32)};
        const auto out = Philox4x32::apply(ctr, key_);
        buffer_[0] = (static_cast<std::uint64_t>(out[1]) << 32) | out[0];
        buffer_[1] = (static_cast<std::uint64_t>(out[3]) << 32) | out[2];
        ++block_;
        used_ = 0;
    }
    return buffer_[used_++];
}

double ReplicaStream::uniform_open0() {
    return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
}

std::vector<PairState> simulate_pair(const PairParams& pp, const std::vector<double>& t_grid,
                                     ReplicaStream& rng) {
    std::vector<PairState> out;
    out.reserve(t_grid.size());
    PairState s{pp.N1, pp.N2};
    const double in = 2.0 * pp.F * pp.p;
    double t = 0.0;
    std::size_t next = 0;
    while (next < t_grid.size()) {
        const bool adjacent = s.m - s.n == 1;
        const double total = adjacent ? 4.0 * pp.F * (1.0 - pp.p) : 4.0 * pp.F;
        t += -std::log(rng.uniform_open0()) / total;
        while (next < t_grid.size() && t_grid[next] < t) {
            out.push_back(s);
            ++next;
        }
        if (next == t_grid.size()) break;
        const double u = rng.uniform_open0() * total;
        if (adjacent) {
            // only the two outward moves, equally likely
            if (u <= 0.5 * total) --s.n;
            else ++s.m;
        } else if (u <= in) {
            ++s.n;
        } else if (u <= 2.0 * in) {
            --s.m;
        } else if (u <= 2.0 * in + 0.5 * (total - 2.0 * in)) {
            --s.n;
        } else {
            ++s.m;
        }
    }
    return out;
}

namespace {

struct BlockSums {
    // per grid point: sum n, n^2, n^3, n^4, (m-n), (m-n)^2
    std::vector<std::array<double, 6>> s;
};

}  // namespace

MomentSeries ensemble_moments(const PairParams& pp, const EnsembleSpec& spec) {
    pp.validate();
    if (spec.n_replicas < 2) throw std::invalid_argument("ensemble_moments: need >= 2 replicas");
    if (spec.t_grid.empty()) throw std::invalid_argument("ensemble_moments: empty t_grid");
    for (std::size_t i = 0; i < spec.t_grid.size(); ++i) {
        if (spec.t_grid[i] < 0.0 || (i > 0 && !(spec.t_grid[i] > spec.t_grid[i - 1])))
            throw std::invalid_argument("ensemble_moments: t_grid must be increasing and >= 0");
    }
    const std::size_t G = spec.t_grid.size();
    const std::uint64_t bs = std::max<std::uint64_t>(1, spec.block_size);
    const std::uint64_t n_blocks = (spec.n_replicas + bs - 1) / bs;
    std::vector<BlockSums> blocks(n_blocks);

    std::atomic<std::uint64_t> next_block{0};
    auto worker = [&] {
        while (true) {
            const std::uint64_t b = next_block.fetch_add(1);
            if (b >= n_blocks) return;
            BlockSums acc;
            acc.s.assign(G, {0, 0, 0, 0, 0, 0});
            const std::uint64_t end = std::min(spec.n_replicas, (b + 1) * bs);
            for (std::uint64_t r = b * bs; r < end; ++r) {
                ReplicaStream rng(spec.seed, r);
                const auto states = simulate_pair(pp, spec.t_grid, rng);
                for (std::size_t g = 0; g < G; ++g) {
                    const double n = static_cast<double>(states[g].n);
                    const double sep = static_cast<double>(states[g].m - states[g].n);
                    auto& a = acc.s[g];
                    a[0] += n;
                    a[1] += n * n;
                    a[2] += n * n * n;
                    a[3] += n * n * n * n;
                    a[4] += sep;
                    a[5] += sep * sep;
                }
            }
            blocks[b] = std::move(acc);
        }
    };
    const int threads = std::max(1, spec.threads);
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    std::vector<std::array<double, 6>> tot(G, {0, 0, 0, 0, 0, 0});
    for (const auto& b : blocks)
        for (std::size_t g = 0; g < G; ++g)
            for (int k = 0; k < 6; ++k) tot[g][k] += b.s[g][k];

    MomentSeries out;
    out.n_replicas = spec.n_replicas;
    const double N = static_cast<double>(spec.n_replicas);
    const double a = pp.a;
    for (std::size_t g = 0; g < G; ++g) {
        const auto& s = tot[g];
        const double e1 = s[0] / N, e2 = s[1] / N, e3 = s[2] / N, e4 = s[3] / N;
        const double mu = e1;
        const double m2 = e2 - mu * mu;
        const double m4 = e4 - 4.0 * mu * e3 + 6.0 * mu * mu * e2 - 3.0 * mu * mu * mu * mu;
        const double sep = s[4] / N;
        const double sep_var = std::max(0.0, (s[5] / N - sep * sep) * N / (N - 1.0));
        const double x2_var = std::max(0.0, (e4 - e2 * e2) * N / (N - 1.0));
        out.t.push_back(spec.t_grid[g]);
        out.mean_x1.push_back(a * mu);
        out.d.push_back(a * sep);
        out.d_se.push_back(a * std::sqrt(sep_var / N));
        out.x2.push_back(a * a * e2);
        out.x2_se.push_back(a * a * std::sqrt(x2_var / N));
        const double msd = m2 * N / (N - 1.0);
        out.msd.push_back(a * a * msd);
        out.msd_se.push_back(a * a * std::sqrt(std::max(0.0, m4 - m2 * m2) / N));
    }
    return out;
}

}  // namespace antisym::mc
