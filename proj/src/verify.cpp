#include "lpq/verify.hpp"

#include "lpq/asymptotics.hpp"
#include "lpq/closedform.hpp"
#include "lpq/errors.hpp"
#include "lpq/experiments.hpp"
#include "lpq/greenfn.hpp"
#include "lpq/rayleigh.hpp"

#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace lpq {

namespace {

using closedform::lambda_1q_ball;

std::string fmt(double v) {
    std::ostringstream os;
    os << std::setprecision(6) << v;
    return os.str();
}

CriterionResult c1_closed_form_exactness(std::ostream& log) {
    CriterionResult r{"1 closed-form exactness (q->1+ limit 2N; N=3 q=1 exact)", true, ""};
    std::ostringstream d;
    for (const int N : {3, 4, 5}) {
        const double got = lambda_1q_ball(N, 1.0 + 1e-7);
        const double err = std::abs(got - 2.0 * N);
        d << "N=" << N << ": " << fmt(got) << " err=" << fmt(err) << "  ";
        if (err > 1e-6) r.pass = false;
    }
    const double exact6 = std::abs(lambda_1q_ball(3, 1.0) - 6.0);
    d << "| lambda_11(B1^3)-6 = " << exact6;
    if (exact6 > 1e-10) r.pass = false;
    r.detail = d.str();
    log << r.detail << "\n";
    return r;
}

CriterionResult c2_reciprocal_identity(std::ostream& log) {
    CriterionResult r{"2 reciprocal identity lambda*|G|_q = 1 (9-point grid, 1e-12)", true, ""};
    std::ostringstream d;
    double worst = 0.0;
    const std::vector<std::pair<int, std::vector<double>>> grid = {
        {3, {1.0, 1.5, 2.0}}, {4, {1.0, 1.3, 1.7}}, {5, {1.0, 1.2, 1.4}}};
    for (const auto& [N, qs] : grid)
        for (const double q : qs)
            worst = std::max(worst,
                             std::abs(lambda_1q_ball(N, q) * closedform::green_ball_lq_norm(N, q) - 1.0));
    d << "max |lambda*norm - 1| = " << worst;
    r.pass = worst <= 1e-12;
    r.detail = d.str();
    log << r.detail << "\n";
    return r;
}

CriterionResult c3_green_torsion_identity(std::ostream& log) {
    CriterionResult r{"3 exact discrete identity lambda_{1,1} * max(torsion) = 1 (1e-8)", true, ""};
    std::ostringstream d;
    for (const auto& [name, spec, res] :
         {std::tuple{"disc", DomainSpec::disc(1.0), 64}, {"rectangle", DomainSpec::rectangle(1.0, 1.0), 64}}) {
        const GridPtr g = build_grid(spec, res);
        const LambdaOneResult lo = lambda_one(g, 1.0);
        const double tmax = torsion(*g).maxCoeff();
        const double dev = std::abs(lo.lambda * tmax - 1.0);
        d << name << ": lambda=" << fmt(lo.lambda) << " dev=" << dev << "  ";
        if (dev > 1e-8) r.pass = false;
    }
    r.detail = d.str();
    log << r.detail << "\n";
    return r;
}

CriterionResult c4_disc_convergence(std::ostream& log) {
    CriterionResult r{"4 disc lambda_{1,1} -> 4: err <= 2% at h=1/128, order >= 1", true, ""};
    std::ostringstream d;
    std::vector<double> errs, hs;
    for (const int res : {32, 64, 128}) {
        LandscapeOptions opts;
        opts.stride = std::max(1, res / 32);
        const GridPtr g = build_grid(DomainSpec::disc(1.0), res);
        const double lam = lambda_one(g, 1.0, 1e-12, opts).lambda;
        errs.push_back(std::abs(lam - 4.0) / 4.0);
        hs.push_back(1.0 / res);
        d << "h=1/" << res << ": lambda=" << fmt(lam) << " err=" << fmt(errs.back() * 100) << "%  ";
    }
    // least-squares slope of log err vs log h over the 3 resolutions
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (size_t k = 0; k < 3; ++k) {
        const double x = std::log(hs[k]), y = std::log(errs[k]);
        sx += x; sy += y; sxx += x * x; sxy += x * y;
    }
    const double slope = (3 * sxy - sx * sy) / (3 * sxx - sx * sx);
    d << "| order=" << fmt(slope);
    r.pass = errs.back() <= 0.02 && slope >= 1.0;
    r.detail = d.str();
    log << r.detail << "\n";
    return r;
}

CriterionResult c5_spinning_top(std::ostream& log) {
    CriterionResult r{"5 spinning top maximizers y_M(1)~1.28, y_M(2)~1.27, drift inward", true, ""};
    const SpinningTopResult r1 = spinning_top_root(1.0);
    const SpinningTopResult r2 = spinning_top_root(2.0);
    std::ostringstream d;
    d << "y_M(1)=" << fmt(r1.y_M) << " y_M(2)=" << fmt(r2.y_M);
    r.pass = r1.y_M >= 1.27 && r1.y_M <= 1.29 && r2.y_M >= 1.26 && r2.y_M <= 1.28 && r2.y_M < r1.y_M;
    r.detail = d.str();
    log << r.detail << "\n";
    return r;
}

CriterionResult c6_p_continuity(std::ostream& log) {
    CriterionResult r{"6 p->1 continuity: p-sweep errors vs sqrt(12 pi) decreasing, final <= 5%", true, ""};
    const GridPtr g = build_grid(DomainSpec::ball(3), 2000);
    const double target = std::sqrt(12.0 * M_PI);
    PSweepOptions opts;
    opts.eigen.rq_tol = 1e-11;
    opts.eigen.max_iters = 4000;
    const auto recs = p_sweep(g, 2.0, {1.5, 1.25, 1.1, 1.05}, opts);
    std::ostringstream d;
    std::vector<double> errs;
    for (const auto& rec : recs) {
        errs.push_back(std::abs(rec.lambda - target) / target);
        d << "p=" << rec.p << ": lambda=" << fmt(rec.lambda) << " err=" << fmt(errs.back() * 100)
          << "%  ";
    }
    bool decreasing = true;
    for (size_t k = 1; k < errs.size(); ++k)
        if (errs[k] >= errs[k - 1]) decreasing = false;
    r.pass = decreasing && errs.back() <= 0.05;
    d << "| decreasing=" << (decreasing ? "yes" : "no");
    r.detail = d.str();
    log << r.detail << "\n";
    return r;
}

CriterionResult c7_rayleigh_sanity(std::ostream& log) {
    CriterionResult r{"7 minimize_lambda(p=q=2) = pi^2 within 1% (ball N=3, nr=2000)", true, ""};
    const GridPtr g = build_grid(DomainSpec::ball(3), 2000);
    const EigenResult e = minimize_lambda(g, 2.0, 2.0);
    const double err = std::abs(e.lambda - M_PI * M_PI) / (M_PI * M_PI);
    std::ostringstream d;
    d << "lambda=" << fmt(e.lambda) << " err=" << fmt(err * 100) << "% iters=" << e.iters;
    r.pass = e.converged && err <= 0.01;
    r.detail = d.str();
    log << r.detail << "\n";
    return r;
}

CriterionResult c8_beta_sweep_limit(std::ostream& log) {
    CriterionResult r{"8 beta-sweep limit: tv->12pi (10%), sup_U decreasing <= 0.45, v_max in (0.8,1.02]",
                      true, ""};
    const GridPtr g = build_grid(DomainSpec::ball(3), 2000);
    const BetaSweepResult sweep = beta_sweep(g, 1.0, {4, 8, 16, 32, 64}, 0.2);
    const LimitCheckReport rep = check_limit_ball(sweep, 3, 1.0);
    const double vmax = sweep.records.back().v_max;
    const bool vmax_ok = vmax > 0.8 && vmax <= 1.02;
    std::ostringstream d;
    d << rep.summary << "\n    v_max(beta=64) = " << fmt(vmax) << " in (0.8, 1.02] -> "
      << (vmax_ok ? "PASS" : "FAIL");
    r.pass = rep.pass() && vmax_ok;
    r.detail = d.str();
    log << r.detail << "\n";
    return r;
}

CriterionResult c9_faber_krahn(std::ostream& log) {
    CriterionResult r{"9 Faber-Krahn: Lambda(square) > Lambda(disc) beyond grid error, q in {1,2}", true, ""};
    std::ostringstream d;
    const double side = std::sqrt(M_PI);
    for (const double q : {1.0, 2.0}) {
        const FaberKrahnReport rep = faber_krahn_compare(DomainSpec::rectangle(side, side), q, 96);
        const double margin = rep.lambda_domain - rep.lambda_disc;
        d << "q=" << q << ": square=" << fmt(rep.lambda_domain) << " disc=" << fmt(rep.lambda_disc)
          << " margin=" << fmt(margin) << " grid_err=" << fmt(rep.est_grid_error) << "  ";
        if (!(rep.holds && margin > rep.est_grid_error)) r.pass = false;
    }
    r.detail = d.str();
    log << r.detail << "\n";
    return r;
}

CriterionResult c10_invariants(std::ostream& log) {
    CriterionResult r{"10 invariant property suite (reciprocity, positivity, adjointness, ...)", true, ""};
    std::ostringstream d;
    auto fail = [&](const std::string& what) {
        r.pass = false;
        d << "[FAIL " << what << "] ";
    };

    const GridPtr disc = build_grid(DomainSpec::disc(1.0), 24);
    const GridPtr ball = build_grid(DomainSpec::ball(3), 200);

    // Green reciprocity within 1e-8 and positivity
    for (const GridPtr& g : {disc, ball}) {
        const int n = n_interior(*g);
        const int a = n / 3, b = 2 * n / 3;
        const GreenColumn ga = green_column(g, a), gb = green_column(g, b);
        if (std::abs(ga.field.values[b] - gb.field.values[a]) >
            1e-8 * std::max(1.0, std::abs(ga.field.values[b])))
            fail("reciprocity");
        if (ga.field.values.minCoeff() <= 0.0) fail("green positivity");
    }

    // Laplacian self-adjointness in the quadrature inner product (1e-10)
    for (const GridPtr& g : {disc, ball}) {
        const int n = n_interior(*g);
        Eigen::VectorXd u(n), v(n);
        for (int k = 0; k < n; ++k) {
            u[k] = std::sin(0.37 * k) + 0.2;
            v[k] = std::cos(0.53 * k) - 0.1;
        }
        const Eigen::VectorXd w = weights(*g);
        const double lhs = (u.array() * apply_laplacian(*g, v).array() * w.array()).sum();
        const double rhs = (v.array() * apply_laplacian(*g, u).array() * w.array()).sum();
        if (std::abs(lhs - rhs) > 1e-10 * std::max({1.0, std::abs(lhs), std::abs(rhs)}))
            fail("self-adjointness");
    }

    // Rayleigh scale invariance
    {
        const Eigen::VectorXd t = torsion(*disc);
        const double r1 = rayleigh_quotient(*disc, t, 1.5, 2.0);
        const double r2 = rayleigh_quotient(*disc, Eigen::VectorXd(17.3 * t), 1.5, 2.0);
        if (std::abs(r1 - r2) > 1e-12 * r1) fail("scale invariance");
    }

    // minimizer normalization, positivity, radial monotonicity
    {
        const EigenResult e = minimize_lambda(ball, 2.0, 2.0);
        if (std::abs(e.u.norm_q(2.0) - 1.0) > 1e-10) fail("|u|_q=1");
        Eigen::VectorXd u = e.u.values;
        if (u.sum() < 0) u = -u;
        if (u.minCoeff() < -1e-12) fail("positivity");
        for (int k = 1; k < u.size(); ++k)
            if (u[k] > u[k - 1] + 1e-12 * u.cwiseAbs().maxCoeff()) { fail("radial monotonicity"); break; }
    }

    // Jensen bound saturates at the Dirac measure on x_M
    {
        const LambdaOneResult lo = lambda_one(disc, 2.0);
        Eigen::VectorXd mu = Eigen::VectorXd::Zero(n_interior(*disc));
        mu[lo.x_M] = 1.0;
        if (!jensen_lower_bound_check(disc, 2.0, mu)) fail("jensen saturation");
    }

    if (r.pass) d << "all invariant checks passed";
    r.detail = d.str();
    log << r.detail << "\n";
    return r;
}

} // namespace

CriterionResult run_criterion(int number, std::ostream& log) {
    switch (number) {
        case 1: return c1_closed_form_exactness(log);
        case 2: return c2_reciprocal_identity(log);
        case 3: return c3_green_torsion_identity(log);
        case 4: return c4_disc_convergence(log);
        case 5: return c5_spinning_top(log);
        case 6: return c6_p_continuity(log);
        case 7: return c7_rayleigh_sanity(log);
        case 8: return c8_beta_sweep_limit(log);
        case 9: return c9_faber_krahn(log);
        case 10: return c10_invariants(log);
        default: throw ArgumentOutOfRange("criterion number must be 1..10");
    }
}

std::vector<CriterionResult> run_acceptance(std::ostream& log) {
    std::vector<CriterionResult> results;
    for (int k = 1; k <= 10; ++k) {
        log << "--- criterion " << k << " ---\n";
        results.push_back(run_criterion(k, log));
    }
    log << "\n";
    for (const auto& r : results)
        log << (r.pass ? "PASS  " : "FAIL  ") << r.name << "\n";
    return results;
}

} // namespace lpq
