#include "commands.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>

#include "antisym/continuum.hpp"
#include "antisym/discrete.hpp"
#include "antisym/fp_solver.hpp"
#include "antisym/mc.hpp"
#include "antisym/territory.hpp"
#include "verify.hpp"

namespace antisym::cli {

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

std::vector<double> log_grid(double lo, double hi, long n) {
    if (n < 1 || !(lo > 0.0) || hi < lo) throw ConfigError("grid needs n >= 1 and 0 < min <= max");
    if (n == 1) return {lo};
    std::vector<double> g(n);
    for (long i = 0; i < n; ++i) g[i] = lo * std::pow(hi / lo, static_cast<double>(i) / (n - 1));
    g.back() = hi;
    return g;
}

PairParams pair_params(const RunConfig& rc, double p) {
    PairParams pp;
    pp.p = p;
    pp.F = rc.num("F");
    pp.a = rc.num("a");
    pp.N1 = 0;
    pp.N2 = rc.integer("dN");
    pp.validate();
    return pp;
}

std::uint64_t derived_seed(std::uint64_t seed, std::size_t index) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(index)};
    std::uint32_t w[2];
    seq.generate(w, w + 2);
    return (static_cast<std::uint64_t>(w[1]) << 32) | w[0];
}

continuum::ContinuumParams cont_params(const RunConfig& rc, double v) {
    continuum::ContinuumParams cp;
    cp.D = rc.num("D");
    cp.v = v;
    cp.x10 = rc.num("x10");
    cp.x20 = rc.num("x20");
    cp.validate();
    return cp;
}

void row(std::ostream& os, std::initializer_list<std::string> cells) {
    bool first = true;
    for (const auto& c : cells) {
        if (!first) os << ',';
        os << c;
        first = false;
    }
    os << '\n';
}

}  // namespace

std::string fmt(double x) {
    if (std::isnan(x)) return "nan";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

std::string header(const RunConfig& rc) {
    std::ostringstream h;
    h << "# antisym " << kVersion << ' ' << rc.command << '\n';
    h << "# config " << rc.params.dump() << '\n';
    h << "# seed " << rc.seed() << '\n';
    return h.str();
}

int cmd_pair_exact(const RunConfig& rc, std::ostream& os) {
    std::vector<double> taus = rc.list("tau");
    if (taus.empty()) taus = log_grid(rc.num("tau_min"), rc.num("tau_max"), rc.integer("n_tau"));
    os << header(rc);
    os << "tau,p,d_exact,x2_exact,msd_exact,d_asym,x2_asym,msd_asym,d_short,x2_short\n";
    for (double p : rc.list("p")) {
        const PairParams pp = pair_params(rc, p);
        for (double tau : taus) {
            if (tau < 0.0) throw ConfigError("tau must be >= 0");
            const auto ex = discrete::exact_moments(tau, pp);
            discrete::Moments as{kNan, kNan, kNan, kNan};
            if (tau > 0.0) as = discrete::asymptotic_moments(p, tau, pp.a);
            const auto sh = discrete::short_time_moments(p, tau, pp.a);
            row(os, {fmt(tau), fmt(p), fmt(ex.d), fmt(ex.x2), fmt(ex.msd), fmt(as.d), fmt(as.x2),
                     fmt(as.msd), fmt(sh.d), fmt(sh.x2)});
        }
    }
    return 0;
}

int cmd_pair_mc(const RunConfig& rc, std::ostream& os) {
    std::vector<double> taus = rc.list("tau");
    if (taus.empty()) {
        const long n = rc.integer("n_tau");
        if (n < 1) throw ConfigError("n_tau must be >= 1");
        for (long k = 1; k <= n; ++k) taus.push_back(rc.num("tau_max") * k / n);
    }
    os << header(rc);
    os << "tau,p,d_mc,d_se,x2_mc,x2_se,msd_mc,msd_se,n_replicas,seed\n";
    const auto ps = rc.list("p");
    for (std::size_t i = 0; i < ps.size(); ++i) {
        const PairParams pp = pair_params(rc, ps[i]);
        mc::EnsembleSpec spec;
        spec.n_replicas = static_cast<std::uint64_t>(rc.integer("n_replicas"));
        spec.block_size = static_cast<std::uint64_t>(rc.integer("block_size"));
        spec.seed = derived_seed(rc.seed(), i);
        spec.threads = rc.threads;
        for (double tau : taus) spec.t_grid.push_back(tau / pp.F);
        const auto s = mc::ensemble_moments(pp, spec);
        for (std::size_t g = 0; g < taus.size(); ++g)
            row(os, {fmt(taus[g]), fmt(ps[i]), fmt(s.d[g]), fmt(s.d_se[g]), fmt(s.x2[g]),
                     fmt(s.x2_se[g]), fmt(s.msd[g]), fmt(s.msd_se[g]), std::to_string(s.n_replicas),
                     std::to_string(spec.seed)});
    }
    return 0;
}

int cmd_continuum(const RunConfig& rc, std::ostream& os) {
    std::vector<double> ts = rc.list("t");
    if (ts.empty()) ts = log_grid(rc.num("t_min"), rc.num("t_max"), rc.integer("n_t"));
    os << header(rc);
    os << "t,D,v,dx0,d,msd,d_asym,msd_asym\n";
    const auto vs = rc.list("v");
    for (double v : vs) {
        const auto cp = cont_params(rc, v);
        for (double t : ts) {
            if (!(t > 0.0)) throw ConfigError("continuum times must be positive");
            const auto as = continuum::asymptotic_cont(cp, t);
            row(os, {fmt(t), fmt(cp.D), fmt(v), fmt(cp.dx0()), fmt(continuum::mean_separation_cont(t, cp)),
                     fmt(continuum::msd_cont(t, cp)), fmt(as.d), fmt(as.msd)});
        }
    }
    const json& grid = rc.sub("grid");
    if (grid.at("enabled").get<bool>()) {
        const double t = grid.at("t").get<double>();
        const long n = grid.at("n").get<long>();
        if (!(t > 0.0) || n < 2) throw ConfigError("grid needs t > 0 and n >= 2");
        const std::string path = grid.at("out").get<std::string>();
        std::ofstream file;
        if (!path.empty()) {
            file.open(path);
            if (!file) throw ConfigError("cannot write '" + path + "'");
            file << header(rc);
        } else {
            os << '\n';
        }
        std::ostream& g = path.empty() ? os : file;
        g << "v,t,x1,x2,q_closed,q_convolution\n";
        for (double v : vs) {
            const auto cp = cont_params(rc, v);
            const double w = 4.0 * std::sqrt(2.0 * cp.D * t) + std::abs(v) * t;
            const double lo = cp.x10 - w, hi = cp.x20 + w;
            for (long i = 0; i < n; ++i)
                for (long j = 0; j < n; ++j) {
                    const double x1 = lo + (hi - lo) * i / (n - 1);
                    const double x2 = lo + (hi - lo) * j / (n - 1);
                    row(g, {fmt(v), fmt(t), fmt(x1), fmt(x2), fmt(continuum::propagator_closed(x1, x2, t, cp)),
                            fmt(continuum::propagator_convolution(x1, x2, t, cp))});
                }
        }
    }
    return 0;
}

int cmd_fp_check(const RunConfig& rc, std::ostream& os) {
    os << header(rc);
    os << "v,n_cells,h,dt,sup_error,mass,order,pass\n";
    const double tol = rc.num("tol"), min_order = rc.num("min_order");
    const auto cells = rc.list("n_cells");
    bool ok = true;
    for (double v : rc.list("v")) {
        const auto cp = cont_params(rc, v);
        double prev_err = kNan, prev_n = kNan;
        for (std::size_t k = 0; k < cells.size(); ++k) {
            fp::GridSpec g;
            g.n_cells = static_cast<int>(cells[k]);
            g.t_end = rc.num("t_end");
            const auto sol = fp::solve_separation_density(cp, g);
            const double err = fp::sup_error(sol, cp);
            const double order = k == 0 ? kNan : std::log(prev_err / err) / std::log(cells[k] / prev_n);
            bool pass = true;
            if (k + 1 == cells.size()) {
                pass = err <= tol && (k == 0 || order >= min_order);
                ok = ok && pass;
            }
            row(os, {fmt(v), std::to_string(g.n_cells), fmt(sol.h), fmt(sol.dt), fmt(err), fmt(sol.mass),
                     fmt(order), pass ? "1" : "0"});
            prev_err = err;
            prev_n = cells[k];
        }
    }
    return ok ? 0 : 1;
}

int cmd_territory(const RunConfig& rc, std::ostream& os) {
    territory::TerritoryConfig base;
    base.n_animals = static_cast<int>(rc.integer("n_animals"));
    base.lattice_size = static_cast<int>(rc.integer("lattice_size"));
    base.R = rc.num("R");
    base.a = rc.num("a");
    base.min_events = static_cast<std::uint64_t>(rc.integer("min_events"));
    base.t_burn = rc.num("t_burn");
    base.t_measure = rc.num("t_measure");
    base.sample_interval = rc.num("sample_interval");
    base.max_time = rc.num("max_time");
    base.seed = rc.seed();
    base.validate();
    const auto zs = rc.list("Z");
    for (double z : zs)
        if (!(z > 0.0)) throw ConfigError("Z values must be positive");
    const auto runs = territory::territory_sweep(base, zs, rc.threads);

    os << header(rc);
    os << "Z,rho,T_AS,p_hat,p_se,one_minus_p,P_F,V_S,n_events\n";
    std::vector<double> q, qse, vs;
    std::uint64_t excl = 0, order = 0;
    for (std::size_t k = 0; k < runs.size(); ++k) {
        const auto& r = runs[k];
        const auto e = territory::estimate_p(r.log);
        const double V = territory::territory_variance(r.owned_widths);
        q.push_back(1.0 - e.p_hat);
        qse.push_back(e.stderr_);
        vs.push_back(V);
        excl += r.exclusivity_violations;
        order += r.order_violations;
        row(os, {fmt(zs[k]), fmt(r.rho), fmt(r.T_AS), fmt(e.p_hat), fmt(e.stderr_), fmt(1.0 - e.p_hat),
                 fmt(territory::failure_probability(zs[k])), fmt(V), std::to_string(e.total)});
    }

    json summary;
    summary["rho"] = runs.empty() ? 0.0 : runs.front().rho;
    bool mono_q = true, mono_v = true;
    for (std::size_t k = 1; k < q.size(); ++k) {
        if (q[k] > q[k - 1] + 2.0 * std::hypot(qse[k], qse[k - 1])) mono_q = false;
        if (vs[k] > vs[k - 1]) mono_v = false;
    }
    summary["one_minus_p_monotone"] = mono_q;
    summary["V_S_monotone"] = mono_v;
    summary["exclusivity_violations"] = excl;
    summary["order_violations"] = order;
    bool positive = q.size() >= 3;
    for (double x : q) positive = positive && x > 0.0;
    if (positive) {
        const auto fit = territory::fit_exponential(zs, q);
        summary["c"] = fit.c;
        summary["k"] = fit.k;
        summary["log_residual"] = fit.residual;
        summary["k_in_bracket"] = fit.k >= 2.2 && fit.k <= 3.2;
    } else {
        summary["c"] = nullptr;
        summary["k"] = nullptr;
    }
    os << "# fit " << summary.dump() << '\n';
    const std::string path = rc.str("fit_out");
    if (!path.empty()) {
        std::ofstream f(path);
        if (!f) throw ConfigError("cannot write '" + path + "'");
        f << summary.dump(2) << '\n';
    }
    return 0;
}

int cmd_verify(const RunConfig& rc, std::ostream& os) {
    json report = run_verify(rc);
    report["version"] = kVersion;
    report["config"] = rc.params;
    report["seed"] = rc.seed();
    os << report.dump(2) << '\n';
    return report.at("pass").get<bool>() ? 0 : 1;
}

int run_command(const RunConfig& rc, std::ostream& os) {
    if (rc.command == "pair-exact") return cmd_pair_exact(rc, os);
    if (rc.command == "pair-mc") return cmd_pair_mc(rc, os);
    if (rc.command == "continuum") return cmd_continuum(rc, os);
    if (rc.command == "fp-check") return cmd_fp_check(rc, os);
    if (rc.command == "territory") return cmd_territory(rc, os);
    if (rc.command == "verify") return cmd_verify(rc, os);
    throw ConfigError("unknown subcommand '" + rc.command + "'");
}

}  // namespace antisym::cli
