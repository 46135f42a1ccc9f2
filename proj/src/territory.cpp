#include "antisym/territory.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>
#include <thread>

#include "antisym/numerics.hpp"

namespace antisym::territory {

double TerritoryConfig::burn() const {
    if (t_burn > 0.0) return t_burn;
    return 10.0 * std::max(T_AS, 1.0 / (R * rho() * rho() * a * a));
}

void TerritoryConfig::validate() const {
    if (n_animals < 2) throw std::invalid_argument("territory: n_animals must be >= 2");
    if (lattice_size < 4 * n_animals)
        throw std::invalid_argument("territory: lattice_size must be >= 4 n_animals");
    if (!(R > 0.0) || !(T_AS > 0.0) || !(a > 0.0))
        throw std::invalid_argument("territory: R, T_AS and a must be positive");
    if (t_burn < 0.0 || t_measure < 0.0 || sample_interval < 0.0)
        throw std::invalid_argument("territory: durations must be >= 0");
}

double t_as_for(const TerritoryConfig& cfg, double Z) {
    const double r = cfg.rho();
    return Z / (cfg.R * r * r * cfg.a * cfg.a);
}

namespace {

class World {
public:
    explicit World(const TerritoryConfig& cfg)
        : cfg_(cfg), L_(cfg.lattice_size), n_(cfg.n_animals),
          owner_(L_, -1), ts_(L_, -std::numeric_limits<double>::infinity()),
          count_(n_, 0), pos_(n_), lo_(n_), hi_(n_) {
        // equal blocks with long-expired marks, animal at each block centre
        for (int i = 0; i < n_; ++i) {
            const int begin = static_cast<int>(static_cast<long>(i) * L_ / n_);
            const int end = static_cast<int>(static_cast<long>(i + 1) * L_ / n_);
            for (int s = begin; s < end; ++s) owner_[s] = i;
            count_[i] = end - begin;
            pos_[i] = begin + (end - begin) / 2;
            ts_[pos_[i]] = 0.0;
            lo_[i] = hi_[i] = pos_[i];
        }
    }

    TerritoryResult run() {
        std::mt19937_64 rng(cfg_.seed);
        std::exponential_distribution<double> wait(n_ * cfg_.R);
        std::uniform_int_distribution<int> pick(0, n_ - 1);
        std::bernoulli_distribution right(0.5);

        const double rho = cfg_.rho();
        const double diffusive = 1.0 / (cfg_.R * rho * rho * cfg_.a * cfg_.a);
        const double burn = cfg_.burn();
        // width variance decorrelates slowly; short windows leave V(S) visibly noisy
        const double t_measure = cfg_.t_measure > 0.0 ? cfg_.t_measure
                                                      : std::max(100.0 * cfg_.T_AS, 5000.0 * diffusive);
        const double interval = cfg_.sample_interval > 0.0 ? cfg_.sample_interval : 0.25 * diffusive;

        TerritoryResult res;
        res.Z = cfg_.Z();
        res.rho = rho;
        res.T_AS = cfg_.T_AS;

        double t = 0.0;
        double next_hop = wait(rng);
        double next_sample = burn;
        while (true) {
            int who = -1;
            bool at_hi = false;
            double expiry = std::numeric_limits<double>::infinity();
            for (int i = 0; i < n_; ++i) {
                if (hi_[i] != pos_[i] && ts_[hi_[i]] + cfg_.T_AS < expiry) {
                    expiry = ts_[hi_[i]] + cfg_.T_AS;
                    who = i;
                    at_hi = true;
                }
                if (lo_[i] != pos_[i] && ts_[lo_[i]] + cfg_.T_AS < expiry) {
                    expiry = ts_[lo_[i]] + cfg_.T_AS;
                    who = i;
                    at_hi = false;
                }
            }
            const double tn = std::min({expiry, next_hop, next_sample});
            if (tn > cfg_.max_time) break;
            t = std::max(t, tn);
            const bool measuring = t >= burn;

            if (next_sample <= expiry && next_sample <= next_hop) {
                sample(res, t);
                next_sample += interval;
            } else if (expiry <= next_hop) {
                retract(who, at_hi, t, measuring, res);
            } else {
                hop(pick(rng), right(rng) ? 1 : -1, t, measuring, res);
                next_hop = t + wait(rng);
            }
            if (t >= burn + t_measure && res.log.size() >= cfg_.min_events) break;
        }
        res.t_end = t;
        return res;
    }

private:
    int wrap(long s) const { return static_cast<int>(((s % L_) + L_) % L_); }

    bool active(int s, double t) const { return t - ts_[s] < cfg_.T_AS; }

    bool occupied(int s) const {
        for (int k = 0; k < n_; ++k)
            if (pos_[k] == s) return true;
        return false;
    }

    void mark(int s, int i, double t) {
        if (owner_[s] != i) {
            if (owner_[s] >= 0) --count_[owner_[s]];
            ++count_[i];
            owner_[s] = i;
        }
        ts_[s] = t;
    }

    int gap_right(int i) const { return wrap(lo_[(i + 1) % n_] - hi_[i] - 1); }
    int gap_left(int i) const { return wrap(lo_[i] - hi_[(i + n_ - 1) % n_] - 1); }

    void retract(int i, bool at_hi, double t, bool measuring, TerritoryResult& res) {
        if (at_hi) {
            const int gap = gap_right(i);
            hi_[i] = wrap(hi_[i] - 1);
            if (measuring && gap > 0) res.log.push_back({t, 2 * i, false});
        } else {
            const int gap = gap_left(i);
            lo_[i] = wrap(lo_[i] + 1);
            if (measuring && gap > 0) res.log.push_back({t, 2 * i + 1, false});
        }
    }

    void hop(int i, int d, double t, bool measuring, TerritoryResult& res) {
        const int s = wrap(pos_[i] + d);
        const bool foreign = owner_[s] >= 0 && owner_[s] != i && active(s, t);
        if (foreign || occupied(s)) {
            mark(pos_[i], i, t);
            return;
        }
        mark(pos_[i], i, t);
        pos_[i] = s;
        mark(s, i, t);
        if (d == 1 && s == wrap(hi_[i] + 1)) {
            const int gap = gap_right(i);
            hi_[i] = s;
            if (measuring && gap > 0) res.log.push_back({t, 2 * i, true});
        } else if (d == -1 && s == wrap(lo_[i] - 1)) {
            const int gap = gap_left(i);
            lo_[i] = s;
            if (measuring && gap > 0) res.log.push_back({t, 2 * i + 1, true});
        }
    }

    void sample(TerritoryResult& res, double t) {
        ++res.samples;
        res.exclusivity_violations += check_exclusivity(t);
        for (int i = 0; i < n_; ++i) {
            res.owned_widths.push_back(count_[i] * cfg_.a);
            res.active_widths.push_back((wrap(hi_[i] - lo_[i]) + 1) * cfg_.a);
        }
        // ring order: consecutive gaps between animals must add up to one lap
        long lap = 0;
        for (int i = 0; i < n_; ++i) lap += wrap(pos_[(i + 1) % n_] - pos_[i]);
        if (lap != L_) ++res.order_violations;
    }

    // Every active mark of animal i lies inside [lo_i, hi_i] and every site of
    // that interval is active and marked by i.
    std::uint64_t check_exclusivity(double t) const {
        std::uint64_t bad = 0;
        std::vector<int> inside(L_, -1);
        for (int i = 0; i < n_; ++i) {
            const int len = wrap(hi_[i] - lo_[i]) + 1;
            for (int k = 0; k < len; ++k) {
                const int s = wrap(lo_[i] + k);
                if (inside[s] >= 0) ++bad;
                inside[s] = i;
                if (owner_[s] != i || !(active(s, t) || s == pos_[i])) ++bad;
            }
        }
        for (int s = 0; s < L_; ++s)
            if (owner_[s] >= 0 && active(s, t) && inside[s] != owner_[s]) ++bad;
        return bad;
    }

    const TerritoryConfig& cfg_;
    int L_;
    int n_;
    std::vector<int> owner_;
    std::vector<double> ts_;
    std::vector<int> count_;
    std::vector<int> pos_, lo_, hi_;
};

}  // namespace

TerritoryResult run_territory(const TerritoryConfig& cfg) {
    cfg.validate();
    World w(cfg);
    return w.run();
}

Estimate estimate_p(const std::vector<BoundaryEvent>& log) {
    if (log.empty()) throw std::invalid_argument("estimate_p: empty event log");
    Estimate e;
    e.total = log.size();
    for (const auto& ev : log) e.toward += ev.toward ? 1 : 0;
    const double n = static_cast<double>(e.total);
    e.p_hat = static_cast<double>(e.toward) / n;
    e.stderr_ = std::sqrt(e.p_hat * (1.0 - e.p_hat) / n);
    return e;
}

double failure_probability(double Z) {
    return std::exp(-numerics::kPi * numerics::kPi * Z / 4.0);
}

ExpFit fit_exponential(const std::vector<double>& zs, const std::vector<double>& ys) {
    if (zs.size() != ys.size()) throw std::invalid_argument("fit_exponential: size mismatch");
    if (zs.size() < 3) throw std::invalid_argument("fit_exponential: need at least 3 points");
    const double n = static_cast<double>(zs.size());
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < zs.size(); ++i) {
        if (!(ys[i] > 0.0)) throw std::invalid_argument("fit_exponential: ys must be positive");
        const double y = std::log(ys[i]);
        sx += zs[i];
        sy += y;
        sxx += zs[i] * zs[i];
        sxy += zs[i] * y;
    }
    const double mx = sx / n, my = sy / n;
    const double var = sxx / n - mx * mx;
    if (!(var > 0.0)) throw std::invalid_argument("fit_exponential: Z values must differ");
    const double slope = (sxy / n - mx * my) / var;
    const double intercept = my - slope * mx;
    ExpFit f{std::exp(intercept), -slope, 0.0};
    double ss = 0.0;
    for (std::size_t i = 0; i < zs.size(); ++i) {
        const double r = std::log(ys[i]) - (intercept + slope * zs[i]);
        ss += r * r;
    }
    f.residual = std::sqrt(ss / n);
    return f;
}

double territory_variance(const std::vector<double>& widths) {
    if (widths.empty()) throw std::invalid_argument("territory_variance: no samples");
    double mean = 0.0;
    for (double w : widths) mean += w;
    mean /= static_cast<double>(widths.size());
    double v = 0.0;
    for (double w : widths) v += (w - mean) * (w - mean);
    return v / static_cast<double>(widths.size());
}

std::vector<TerritoryResult> territory_sweep(const TerritoryConfig& base,
                                             const std::vector<double>& zs, int threads) {
    std::vector<TerritoryResult> out(zs.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        while (true) {
            const std::size_t k = next.fetch_add(1);
            if (k >= zs.size()) return;
            TerritoryConfig cfg = base;
            cfg.T_AS = t_as_for(base, zs[k]);
            std::seed_seq seq{static_cast<std::uint32_t>(base.seed),
                              static_cast<std::uint32_t>(base.seed >> 32),
                              static_cast<std::uint32_t>(k)};
            std::uint32_t words[2];
            seq.generate(words, words + 2);
            cfg.seed = (static_cast<std::uint64_t>(words[1]) << 32) | words[0];
            out[k] = run_territory(cfg);
        }
    };
    const int nt = std::max(1, std::min<int>(threads, static_cast<int>(zs.size())));
    if (nt == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int i = 0; i < nt; ++i) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    return out;
}

}  // namespace antisym::territory
