#include "lpq/quadrature.hpp"
#include "lpq/errors.hpp"

#include <cmath>
#include <limits>
#include <vector>
#include <algorithm>

namespace lpq {

namespace {

// Gauss 7 / Kronrod 15 abscissae (positive half) and weights.
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

} // namespace

double gk15_panel(const std::function<double(double)>& f, double a, double b, double& err) {
    const double c = 0.5 * (a + b);
    const double m = 0.5 * (b - a);
    const double fc = f(c);
    double k15 = kWgk[7] * fc;
    double g7 = kWg[3] * fc;
    for (int i = 0; i < 7; ++i) {
        const double dx = m * kXgk[i];
        const double fs = f(c - dx) + f(c + dx);
        k15 += kWgk[i] * fs;
        if (i % 2 == 1) g7 += kWg[i / 2] * fs;
    }
    k15 *= m;
    g7 *= m;
    err = std::pow(200.0 * std::abs(k15 - g7), 1.5);
    return k15;
}

double integrate(const std::function<double(double)>& f, double a, double b,
                 double rel_tol, double abs_tol, int max_panels) {
    struct Panel { double a, b, val, err; };
    double err0;
    std::vector<Panel> heap;
    heap.push_back({a, b, gk15_panel(f, a, b, err0), err0});
    double total = heap[0].val, total_err = heap[0].err;
    if (!std::isfinite(total) || !std::isfinite(total_err))
        throw QuadratureError("adaptive quadrature: non-finite integrand sample");
    auto cmp = [](const Panel& x, const Panel& y) { return x.err < y.err; };
    std::make_heap(heap.begin(), heap.end(), cmp);
    int panels = 1;
    while (total_err > std::max(rel_tol * std::abs(total), abs_tol)) {
        if (panels >= max_panels)
            throw QuadratureError("adaptive quadrature: panel budget exhausted, err=" +
                                  std::to_string(total_err));
        std::pop_heap(heap.begin(), heap.end(), cmp);
        const Panel worst = heap.back();
        heap.pop_back();
        total -= worst.val;
        total_err -= worst.err;
        const double mid = 0.5 * (worst.a + worst.b);
        for (const auto& [lo, hi] : {std::pair{worst.a, mid}, std::pair{mid, worst.b}}) {
            double e;
            const double v = gk15_panel(f, lo, hi, e);
            heap.push_back({lo, hi, v, e});
            std::push_heap(heap.begin(), heap.end(), cmp);
            total += v;
            total_err += e;
        }
        ++panels;
        if (!std::isfinite(total) || !std::isfinite(total_err))
            throw QuadratureError("adaptive quadrature: non-finite partial sum");
    }
    return total;
}

double integrate_tanh_sinh(const std::function<double(double)>& f, double a, double b,
                           double rel_tol, int max_level) {
    // x = c + m*tanh((pi/2) sinh t). Abscissae are carried as distances to the
    // nearer endpoint so integrable endpoint singularities stay representable
    // all the way into the double-exponential tail.
    const double m = 0.5 * (b - a);
    const double tmax = 6.11;
    auto eval = [&](double t) -> double {
        const double s = (M_PI / 2.0) * std::sinh(t);
        const double e = std::exp(-2.0 * std::abs(s));
        const double dist = 2.0 * m * e / (1.0 + e);       // to the endpoint on t's side
        if (dist <= 0.0) return 0.0;                        // below double resolution
        const double x = (t >= 0.0) ? b - dist : a + dist;
        const double w = (M_PI / 2.0) * std::cosh(t) * 4.0 * e / ((1.0 + e) * (1.0 + e));
        const double fx = f(x);
        return std::isfinite(fx) ? fx * w : 0.0;
    };
    double h = tmax;
    double sum = eval(0.0) * h;
    double prev = m * sum;
    int agreed = 0;
    for (int level = 1; level <= max_level; ++level) {
        h *= 0.5;
        double add = 0.0;
        for (double t = h; t <= tmax; t += 2.0 * h) add += eval(t) + eval(-t);
        sum = 0.5 * sum + add * h;
        const double cur = m * sum;
        agreed = (level >= 4 && std::abs(cur - prev) <= rel_tol * std::abs(cur)) ? agreed + 1 : 0;
        if (agreed >= 1 && level >= 5) return cur;
        prev = cur;
    }
    if (!std::isfinite(prev)) throw QuadratureError("tanh-sinh quadrature diverged");
    return prev;
}

double find_root(const std::function<double(double)>& f, double a, double b,
                 double xtol, int* evals) {
    double fa = f(a), fb = f(b);
    int ne = 2;
    if (fa == 0.0) { if (evals) *evals = ne; return a; }
    if (fb == 0.0) { if (evals) *evals = ne; return b; }
    if ((fa > 0.0) == (fb > 0.0))
        throw NoBracket("find_root: f has the same sign at both endpoints");
    // bisection with a secant step when it stays inside the bracket
    while (b - a > xtol) {
        double x = a - fa * (b - a) / (fb - fa);
        const double mid = 0.5 * (a + b);
        if (!(x > a + 0.1 * xtol && x < b - 0.1 * xtol)) x = mid;
        const double fx = f(x);
        ++ne;
        if (fx == 0.0) { a = b = x; break; }
        if ((fx > 0.0) == (fa > 0.0)) { a = x; fa = fx; }
        else { b = x; fb = fx; }
    }
    if (evals) *evals = ne;
    return 0.5 * (a + b);
}

} // namespace lpq
