#include "validation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iterator>
#include <string>

#include "analytic.hpp"
#include "average.hpp"
#include "config.hpp"
#include "error.hpp"
#include "geometry.hpp"
#include "montecarlo.hpp"
#include "optimizer.hpp"
#include "reports.hpp"

namespace dmimo {

namespace {

std::string num(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", x);
    return buf;
}

double rel_diff(double value, double reference) {
    return std::fabs(value - reference) / std::fabs(reference);
}

class Checker {
  public:
    void require(bool condition, const std::string& label) {
        if (!condition && first_failure_.empty()) first_failure_ = label;
        ok_ = ok_ && condition;
    }
    void note(const std::string& text) {
        if (!notes_.empty()) notes_ += "; ";
        notes_ += text;
    }
    bool ok() const { return ok_; }
    std::string detail() const { return ok_ ? notes_ : first_failure_; }

  private:
    bool ok_ = true;
    std::string first_failure_;
    std::string notes_;
};

// The pinned reference scenario shared by the simulation criteria.
ScenarioConfig pinned_scenario(const ValidationOptions& opts) {
    ScenarioConfig cfg;
    cfg.cell_radius_m = 1000.0;
    cfg.ring_radius_m = 500.0;
    cfg.antenna_count = 300;
    cfg.user_count = 9;
    cfg.exponent_v = 3.6;
    cfg.power_db = 10.0;
    cfg.power_normalization = PowerNorm::midpoint;
    cfg.trials = 2000;
    cfg.master_seed = opts.master_seed;
    cfg.min_distance_m = 1.0;
    cfg.threads = opts.threads;
    return cfg;
}

double power_linear(double power_db) { return std::pow(10.0, power_db / 10.0); }

// ---- C01: Legendre-quadrature kernel equals the elementary closed forms ----
void check_elementary(const ValidationOptions&, Checker& c) {
    struct Anchor {
        double v, frozen;
    };
    const Anchor anchors[] = {
        {2.0, 6.25e-6},
        {4.0, 8.30078125e-11},
        {6.0, 1.5316009521484375e-15},
        {3.6, 7.5508885596694252207e-10},
    };
    for (const Anchor& a : anchors) {
        const double got = circle_i0(500.0, 300.0, a.v);
        c.require(rel_diff(got, a.frozen) <= 1e-10,
                  "kernel anchor v=" + num(a.v) + ": got " + num(got) + " want " + num(a.frozen));
    }

    const double leg = legendre_halfint(0.8, 2.125);
    c.require(rel_diff(leg, 1.7596003088349842228) <= 1e-10,
              "Legendre anchor: got " + num(leg));

    const double pairs[][2] = {{500, 300}, {500, 100}, {500, 900}, {200, 150}, {800, 790}};
    double worst = 0.0;
    for (const auto& p : pairs) {
        for (double v : {2.0, 4.0, 6.0}) {
            const double quad = circle_i0(p[0], p[1], v);
            const double closed = closed_form_i0(p[0], p[1], v);
            const double rd = rel_diff(quad, closed);
            worst = std::max(worst, rd);
            c.require(rd <= 1e-9, "quad/closed mismatch at r=" + num(p[0]) + " ru=" + num(p[1]) +
                                      " v=" + num(v) + ": rel " + num(rd));
        }
    }
    c.note("worst quad-vs-closed rel diff " + num(worst));
}

// ---- C02: the two elementary bounds enclose the asymptotic rate ----
void check_bound_enclosure(const ValidationOptions&, Checker& c) {
    const double radii[] = {100.0, 300.0, 450.0, 700.0, 900.0};
    const double uppers[] = {2.5, 3.0, 3.6};
    const double lowers[] = {4.5, 5.0, 5.5, 6.0};
    const double equals[] = {2.0, 4.0};

    const auto eval = [](double v, double ru, double& asy, RateBounds& b) {
        const double p_eff = effective_power(power_linear(10.0), 500.0, v);
        asy = circle_rate(500.0, ru, v, p_eff, 300).rate_bits;
        b = rate_bounds(500.0, ru, v, p_eff, 300);
    };

    for (double v : uppers) {
        for (double ru : radii) {
            double asy;
            RateBounds b{};
            eval(v, ru, asy, b);
            const double eps = 1e-9 * std::max(1.0, std::fabs(asy));
            c.require(b.ordering == BoundOrdering::b1_upper, "ordering wrong at v=" + num(v));
            c.require(b.b1_bits + eps >= asy && asy >= b.b2_bits - eps,
                      "enclosure broken at v=" + num(v) + " ru=" + num(ru) + ": b1 " +
                          num(b.b1_bits) + " asy " + num(asy) + " b2 " + num(b.b2_bits));
        }
    }
    for (double v : lowers) {
        for (double ru : radii) {
            double asy;
            RateBounds b{};
            eval(v, ru, asy, b);
            const double eps = 1e-9 * std::max(1.0, std::fabs(asy));
            c.require(b.ordering == BoundOrdering::b1_lower, "ordering wrong at v=" + num(v));
            c.require(b.b2_bits + eps >= asy && asy >= b.b1_bits - eps,
                      "enclosure broken at v=" + num(v) + " ru=" + num(ru) + ": b2 " +
                          num(b.b2_bits) + " asy " + num(asy) + " b1 " + num(b.b1_bits));
        }
    }
    for (double v : equals) {
        for (double ru : radii) {
            double asy;
            RateBounds b{};
            eval(v, ru, asy, b);
            c.require(std::fabs(b.b1_bits - asy) <= 1e-8 && std::fabs(b.b2_bits - asy) <= 1e-8,
                      "bounds should coincide with the rate at v=" + num(v) + " ru=" + num(ru));
        }
    }
    c.note("checked 45 (v, user-radius) grid points");
}

// ---- C03: the bound-gap coefficient and its log2 budget ----
void check_coefficient_identity(const ValidationOptions& opts, Checker& c) {
    const double f = opts.coefficient_fault;
    struct Anchor {
        double v, frozen;
    };
    const Anchor anchors[] = {
        {2.0, 1.0}, {3.0, 0.90031631615710606956}, {3.6, 0.94654370400195256823},
        {4.0, 1.0}, {5.0, 1.2004217548761414261},  {6.0, 1.5},
    };
    for (const Anchor& a : anchors) {
        const double got = f * bound_gap_coefficient(a.v);
        c.require(rel_diff(got, a.frozen) <= 1e-12,
                  "coefficient anchor v=" + num(a.v) + ": got " + num(got));
    }

    double max_log = 0.0;
    for (int i = 0; i <= 80; ++i) {
        const double v = 2.0 + 0.05 * i;
        max_log = std::max(max_log, std::fabs(std::log2(f * bound_gap_coefficient(v))));
    }
    c.require(max_log <= 0.6, "max |log2 C| over [2,6] is " + num(max_log) + ", budget 0.6");

    // The b2 - b1 rate gap must converge to log2 C when interference dominates.
    // x(300) ~ 8e-10 here, so p_eff must be enormous before P M x swamps the
    // "+1" inside the logs; 1e14 puts the residual near 4e-9.
    const double v = 3.6;
    const RateBounds b = rate_bounds(500.0, 300.0, v, 1e14, 300);
    const double gap = b.b2_bits - b.b1_bits;
    const double expected = std::log2(f * bound_gap_coefficient(v));
    c.require(std::fabs(gap - expected) <= 1e-6,
              "high-power gap " + num(gap) + " vs log2 C " + num(expected));
    c.note("max |log2 C| " + num(max_log) + "; high-power gap " + num(gap));
}

// ---- C04: finite-ring average converges to the kernel within its bound ----
void check_finite_ring(const ValidationOptions&, Checker& c) {
    const double r = 500.0, ru = 490.0, v = 3.6;
    const double exact = circle_i0(r, ru, v);
    const std::size_t counts[] = {32, 64, 128, 256, 512};
    double prev_err = 0.0;
    double last_ratio = 0.0;
    for (std::size_t m : counts) {
        const double approx = riemann_i0(r, ru, v, m);
        const double err = std::fabs(approx - exact);
        const double bound = riemann_error_bound(r, ru, v, m);
        c.require(err <= bound, "error " + num(err) + " exceeds bound " + num(bound) +
                                    " at M=" + std::to_string(m));
        if (m > counts[0]) {
            last_ratio = err / prev_err;
            c.require(err <= 0.75 * prev_err,
                      "error ratio " + num(last_ratio) + " at M=" + std::to_string(m) +
                          " exceeds 0.75");
        }
        prev_err = err;
    }
    c.note("error at M=512 is " + num(prev_err) + "; last halving ratio " + num(last_ratio));
}

// ---- C05: simulated ergodic rate approaches the asymptotic limit ----
void check_simulation_vs_limit(const ValidationOptions& opts, Checker& c) {
    const ScenarioConfig cfg = pinned_scenario(opts);
    const UserRateReport rep = rate_user_report(cfg, 300.0);
    const double asy = rep.asymptotic.rate_bits;
    c.require(std::fabs(asy - 13.5250580762284) <= 1e-6,
              "asymptotic anchor: got " + num(asy));
    c.require(rep.mc.has_value(), "simulation did not run");
    if (!rep.mc) return;
    const double diff = std::fabs(rep.mc->mean_bits - asy);
    c.require(diff <= 0.27, "simulation " + num(rep.mc->mean_bits) + " vs limit " + num(asy) +
                                ": |diff| " + num(diff) + " exceeds 0.27");
    c.note("sim " + num(rep.mc->mean_bits) + " (+/-" + num(rep.mc->half_width_95) + "), limit " +
           num(asy) + ", |diff| " + num(diff));
}

// ---- C06: closed-form averages band the simulated cell average ----
void check_average_enclosure(const ValidationOptions& opts, Checker& c) {
    const ScenarioConfig cfg = pinned_scenario(opts);
    const AverageRateReport rep = rate_average_report(cfg);
    c.require(std::fabs(rep.b1_average_bits - 13.378849077464485) <= 1e-9,
              "closed-form b1 average anchor: got " + num(rep.b1_average_bits));
    c.require(std::fabs(rep.b2_average_bits - 13.299590102442973) <= 1e-9,
              "closed-form b2 average anchor: got " + num(rep.b2_average_bits));
    c.require(rep.approx_ok, "interference-dominant precondition unexpectedly false");

    c.require(rep.quadrature_bits >= rep.b2_average_bits - 0.01 &&
                  rep.quadrature_bits <= rep.b1_average_bits + 0.01,
              "quadrature average " + num(rep.quadrature_bits) + " outside closed-form band");

    // The expectation band uses the (possibly faulted) coefficient so an
    // injected fault is caught here.
    const double b2_expected =
        rep.b1_average_bits + std::log2(opts.coefficient_fault *
                                        bound_gap_coefficient(cfg.exponent_v));
    c.require(rep.mc.has_value(), "simulation did not run");
    if (!rep.mc) return;
    const double mc = rep.mc->mean_bits;
    c.require(mc >= b2_expected - 0.2 && mc <= rep.b1_average_bits + 0.2,
              "simulated average " + num(mc) + " outside [" + num(b2_expected - 0.2) + ", " +
                  num(rep.b1_average_bits + 0.2) + "]");
    c.note("sim " + num(mc) + " (+/-" + num(rep.mc->half_width_95) + "), band [" +
           num(b2_expected) + ", " + num(rep.b1_average_bits) + "] widened by 0.2");
}

// ---- C07: closed-form average matches direct quadrature of the bound ----
void check_average_closed_form(const ValidationOptions&, Checker& c) {
    double worst = 0.0;
    for (double v : {3.0, 3.6, 5.0}) {
        for (double r : {300.0, 500.0, 700.0}) {
            AverageParams ap;
            ap.cell_radius_m = 1000.0;
            ap.ring_radius_m = r;
            ap.exponent_v = v;
            ap.p_eff = effective_power(power_linear(20.0), 500.0, v);
            ap.antenna_count = 300;
            c.require(average_bound_approx_ok(ap, 1000.0),
                      "precondition failed at v=" + num(v) + " r=" + num(r));
            const double quad = average_rate_quadrature(ap, false);
            const double closed = average_bound_b1(ap);
            const double diff = std::fabs(quad - closed);
            worst = std::max(worst, diff);
            c.require(diff <= 0.05, "closed-form vs quadrature at v=" + num(v) + " r=" + num(r) +
                                        ": |diff| " + num(diff) + " exceeds 0.05 bits");
        }
    }
    c.note("worst |closed - quadrature| " + num(worst) + " bits over 9 grid points");
}

// ---- C08: the ring-radius optimizer hits its frozen solutions ----
void check_radius_optimum(const ValidationOptions&, Checker& c) {
    struct Anchor {
        double v, ratio;
    };
    const Anchor anchors[] = {
        {2.25, 0.725661299348}, {2.5, 0.737147867292}, {3.0, 0.750628045371},
        {3.5, 0.758289226085},  {3.6, 0.759441179754}, {4.0, 0.763231424805},
        {4.5, 0.766684221601},  {5.0, 0.769232812903}, {5.5, 0.77119129312},
        {6.0, 0.772743365327},
    };
    double prev_ratio = 0.0;
    for (const Anchor& a : anchors) {
        const RadiusSolution s = solve_radius(a.v, 1000.0);
        c.require(std::fabs(s.ratio - a.ratio) <= 1e-9,
                  "ratio anchor v=" + num(a.v) + ": got " + num(s.ratio));
        c.require(s.residual <= 1e-12, "residual " + num(s.residual) + " at v=" + num(a.v));
        const double stationarity =
            std::fabs(s.t0 * std::pow(s.t0 + 2.0, (0.5 * a.v - 1.0) / (a.v - 1.0)) - 1.0);
        c.require(stationarity <= 1e-9,
                  "stationarity " + num(stationarity) + " at v=" + num(a.v));
        c.require(s.ratio > prev_ratio, "ratio not increasing at v=" + num(a.v));
        prev_ratio = s.ratio;
    }

    const RadiusSolution limit = solve_radius(2.0, 1000.0);
    c.require(limit.at_exponent_limit, "v=2 must flag the limiting solution");
    c.require(std::fabs(limit.ratio - 0.7071067811865476) <= 1e-15,
              "v=2 limiting ratio: got " + num(limit.ratio));

    const RadiusSolution base = solve_radius(3.6, 1000.0);
    const RadiusSolution doubled = solve_radius(3.6, 2000.0);
    c.require(rel_diff(doubled.r_opt_m, 2.0 * base.r_opt_m) <= 1e-12,
              "optimal radius must scale linearly with the cell radius");
    c.note("ratio range " + num(anchors[0].ratio) + " .. " + num(prev_ratio));
}

// ---- C09: the optimum stays near three quarters of the cell radius ----
void check_three_quarter_rule(const ValidationOptions&, Checker& c) {
    double worst_loss = 0.0;
    for (double v : {2.5, 3.0, 3.6, 4.0, 5.0, 6.0}) {
        const RadiusSolution s = solve_radius(v, 1000.0);
        c.require(s.ratio >= 0.70 && s.ratio <= 0.78,
                  "ratio " + num(s.ratio) + " at v=" + num(v) + " outside [0.70, 0.78]");

        AverageParams ap;
        ap.cell_radius_m = 1000.0;
        ap.exponent_v = v;
        ap.p_eff = effective_power(power_linear(10.0), 500.0, v);
        ap.antenna_count = 300;
        ap.ring_radius_m = s.r_opt_m;
        const double at_opt = average_bound_b1(ap);
        ap.ring_radius_m = 750.0;
        const double at_three_quarters = average_bound_b1(ap);
        const double loss_pct = (at_opt - at_three_quarters) / at_opt * 100.0;
        worst_loss = std::max(worst_loss, loss_pct);
        c.require(loss_pct >= -1e-9, "0.75R beats the optimum at v=" + num(v));
        c.require(loss_pct <= 5.0,
                  "average-rate loss " + num(loss_pct) + "% at v=" + num(v) + " exceeds 5%");
    }
    c.note("worst loss from using 0.75R instead of the optimum: " + num(worst_loss) + "%");
}

// ---- C10: antenna and power scaling move the average as predicted ----
void check_scaling_gains(const ValidationOptions&, Checker& c) {
    const double p10 = effective_power(power_linear(10.0), 500.0, 3.6);
    struct Anchor {
        std::size_t m;
        double frozen;
    };
    const Anchor anchors[] = {
        {50, 10.9407073682}, {100, 11.9403403237}, {200, 12.9401567665}, {400, 13.9400649791}};
    for (const Anchor& a : anchors) {
        const double got = circle_rate(500.0, 300.0, 3.6, p10, a.m).rate_bits;
        c.require(std::fabs(got - a.frozen) <= 1e-6,
                  "per-user anchor M=" + std::to_string(a.m) + ": got " + num(got));
    }

    const auto cell_avg = [](std::size_t m, double power_db) {
        AverageParams ap;
        ap.cell_radius_m = 1000.0;
        ap.ring_radius_m = 500.0;
        ap.exponent_v = 3.6;
        ap.p_eff = effective_power(power_linear(power_db), 500.0, 3.6);
        ap.antenna_count = m;
        return average_rate_quadrature(ap, true);
    };

    const double gain_m = (cell_avg(400, 10.0) - cell_avg(100, 10.0)) / cell_avg(100, 10.0) * 100.0;
    c.require(gain_m >= 12.0 && gain_m <= 18.0,
              "4x-antenna gain " + num(gain_m) + "% outside [12, 18]");
    c.require(std::fabs(gain_m - 17.029365) <= 0.02,
              "4x-antenna gain drifted from its frozen value: " + num(gain_m));

    const double gain_p = (cell_avg(100, 14.0) - cell_avg(100, 4.0)) / cell_avg(100, 4.0) * 100.0;
    c.require(gain_p >= 30.0 && gain_p <= 38.0,
              "+10dB power gain " + num(gain_p) + "% outside [30, 38]");
    c.require(std::fabs(gain_p - 34.010581) <= 0.02,
              "+10dB power gain drifted from its frozen value: " + num(gain_p));
    c.note("4x antennas: +" + num(gain_m) + "%; +10 dB power: +" + num(gain_p) + "%");
}

// ---- C11: random-vector statistics concentrate at the 1/M scale ----
void check_concentration(const ValidationOptions& opts, Checker& c) {
    const std::size_t dims[] = {64, 128, 256};
    const std::size_t trials = 1000;
    ProbeEntries probes[3];
    for (int i = 0; i < 3; ++i) {
        probes[i] = lln_probe(dims[i], trials, opts.master_seed);
        const ProbeEntries& p = probes[i];
        const std::string at = " at M=" + std::to_string(dims[i]);
        c.require(p.gaussian_norm_msq <= 3.0 * p.envelope_norm &&
                      p.gaussian_norm_msq >= p.envelope_norm / 3.0,
                  "norm concentration " + num(p.gaussian_norm_msq) + " vs envelope " +
                      num(p.envelope_norm) + at);
        c.require(p.gaussian_cross_msq <= 3.0 * p.envelope_cross &&
                      p.gaussian_cross_msq >= p.envelope_cross / 3.0,
                  "cross concentration " + num(p.gaussian_cross_msq) + " vs envelope " +
                      num(p.envelope_cross) + at);
        c.require(p.unit_modulus_norm_msq <= 1e-20,
                  "unit-modulus norm must be pinned to M" + at);
        c.require(p.zero_cross_msq == 0.0, "cross term against zero must vanish" + at);
    }
    for (int i = 1; i < 3; ++i) {
        const double norm_ratio = probes[i].gaussian_norm_msq / probes[i - 1].gaussian_norm_msq;
        const double cross_ratio = probes[i].gaussian_cross_msq / probes[i - 1].gaussian_cross_msq;
        c.require(norm_ratio >= 0.3 && norm_ratio <= 0.7,
                  "norm mean-square must halve when M doubles; ratio " + num(norm_ratio));
        c.require(cross_ratio >= 0.3 && cross_ratio <= 0.7,
                  "cross mean-square must halve when M doubles; ratio " + num(cross_ratio));
    }
    c.note("norm msq at M=256: " + num(probes[2].gaussian_norm_msq) + " (envelope " +
           num(probes[2].envelope_norm) + ")");
}

// ---- C12: identical seeds replay identically, regardless of threads ----
void check_deterministic_replay(const ValidationOptions& opts, Checker& c) {
    ScenarioConfig small;
    small.cell_radius_m = 1000.0;
    small.ring_radius_m = 500.0;
    small.antenna_count = 64;
    small.user_count = 4;
    small.exponent_v = 3.6;
    small.power_db = 10.0;
    small.power_normalization = PowerNorm::midpoint;
    small.trials = 64;
    small.master_seed = opts.master_seed;
    small.min_distance_m = 1.0;

    small.threads = 1;
    const UserRateReport u1 = rate_user_report(small, 300.0);
    small.threads = 4;
    const UserRateReport u4 = rate_user_report(small, 300.0);
    c.require(u1.mc.has_value() && u4.mc.has_value(), "simulation did not run");
    if (!(u1.mc && u4.mc)) return;
    c.require(u1.mc->mean_bits == u4.mc->mean_bits &&
                  u1.mc->half_width_95 == u4.mc->half_width_95,
              "per-user replay differs across thread counts: " + num(u1.mc->mean_bits) +
                  " vs " + num(u4.mc->mean_bits));

    small.threads = 1;
    const AverageRateReport a1 = rate_average_report(small);
    small.threads = 4;
    const AverageRateReport a4 = rate_average_report(small);
    c.require(a1.mc.has_value() && a4.mc.has_value(), "composite simulation did not run");
    if (!(a1.mc && a4.mc)) return;
    c.require(a1.mc->mean_bits == a4.mc->mean_bits &&
                  a1.mc->half_width_95 == a4.mc->half_width_95,
              "cell-average replay differs across thread counts: " + num(a1.mc->mean_bits) +
                  " vs " + num(a4.mc->mean_bits));

    small.master_seed = opts.master_seed + 1;
    const UserRateReport other = rate_user_report(small, 300.0);
    c.require(other.mc.has_value() && other.mc->mean_bits != u1.mc->mean_bits,
              "different seeds must not replay the same trials");
    c.note("bitwise replay across 1 vs 4 threads at " + num(u1.mc->mean_bits) + " bits");
}

} // namespace

std::vector<CriterionResult> run_validation(const ValidationOptions& opts) {
    using CheckFn = void (*)(const ValidationOptions&, Checker&);
    struct Entry {
        const char* id;
        const char* name;
        CheckFn fn;
    };
    const Entry entries[] = {
        {"C01", "elementary-equivalence", &check_elementary},
        {"C02", "bound-enclosure", &check_bound_enclosure},
        {"C03", "coefficient-identity", &check_coefficient_identity},
        {"C04", "finite-ring-convergence", &check_finite_ring},
        {"C05", "simulation-vs-limit", &check_simulation_vs_limit},
        {"C06", "average-enclosure", &check_average_enclosure},
        {"C07", "average-closed-form", &check_average_closed_form},
        {"C08", "radius-optimum", &check_radius_optimum},
        {"C09", "three-quarter-rule", &check_three_quarter_rule},
        {"C10", "scaling-gains", &check_scaling_gains},
        {"C11", "concentration-probe", &check_concentration},
        {"C12", "deterministic-replay", &check_deterministic_replay},
    };

    std::vector<CriterionResult> results;
    results.reserve(std::size(entries));
    for (const Entry& e : entries) {
        CriterionResult r;
        r.id = e.id;
        r.name = e.name;
        try {
            Checker checker;
            e.fn(opts, checker);
            r.passed = checker.ok();
            r.detail = checker.detail();
        } catch (const std::exception& ex) {
            r.passed = false;
            r.detail = std::string("exception: ") + ex.what();
        }
        results.push_back(std::move(r));
    }
    return results;
}

bool all_passed(const std::vector<CriterionResult>& results) {
    for (const CriterionResult& r : results)
        if (!r.passed) return false;
    return !results.empty();
}

std::string format_criterion(const CriterionResult& result) {
    std::string line = result.passed ? "PASS " : "FAIL ";
    line += result.id + " " + result.name;
    if (!result.detail.empty()) line += ": " + result.detail;
    return line;
}

} // namespace dmimo
