#include "lpq/io.hpp"
#include "lpq/errors.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace lpq {

namespace {

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Error("cannot open " + path + " for writing");
    out << std::setprecision(17);
    return out;
}

std::ifstream open_in(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open " + path);
    return in;
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) out.push_back(cell);
    return out;
}

void expect_header(std::istream& in, const std::string& want, const std::string& path) {
    std::string got;
    if (!std::getline(in, got) || got != want)
        throw ParseError(path + ": expected header '" + want + "', got '" + got + "'");
}

} // namespace

void write_field_csv(const std::string& path, const ScalarField& field) {
    auto out = open_out(path);
    if (const auto* radial = std::get_if<RadialGrid>(&*field.grid)) {
        out << "i,r,value\n";
        for (int k = 0; k < radial->n_interior(); ++k)
            out << k << ',' << radial->r(k) << ',' << field.values[k] << '\n';
        return;
    }
    const auto& g = std::get<Grid2D>(*field.grid);
    out << "i,j,x,y,value\n";
    for (int k = 0; k < g.n_interior(); ++k) {
        const auto [i, j] = g.node(k);
        out << i << ',' << j << ',' << g.x(k) << ',' << g.y(k) << ',' << field.values[k] << '\n';
    }
}

ScalarField read_field_csv(const std::string& path, const GridPtr& grid) {
    auto in = open_in(path);
    const bool radial = std::holds_alternative<RadialGrid>(*grid);
    expect_header(in, radial ? "i,r,value" : "i,j,x,y,value", path);
    const int n = n_interior(*grid);
    Eigen::VectorXd v = Eigen::VectorXd::Zero(n);
    std::string line;
    int rows = 0;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto cells = split_csv_line(line);
        if (cells.size() != (radial ? 3u : 5u)) throw ParseError(path + ": bad row '" + line + "'");
        const int k = radial ? std::stoi(cells[0]) : std::get<Grid2D>(*grid).index_of(std::stoi(cells[0]), std::stoi(cells[1]));
        if (k < 0 || k >= n) throw ParseError(path + ": node out of range in '" + line + "'");
        v[k] = std::stod(cells.back());
        ++rows;
    }
    if (rows != n) throw ParseError(path + ": row count does not match the grid");
    return {grid, std::move(v)};
}

void write_p_sweep_csv(const std::string& path, const std::vector<SweepRecord>& records) {
    auto out = open_out(path);
    out << "p,q,lambda,tv_u,profile_err,iters,converged\n";
    for (const auto& r : records)
        out << r.p << ',' << r.q << ',' << r.lambda << ',' << r.tv_u << ',' << r.profile_err << ','
            << r.iters << ',' << (r.converged ? 1 : 0) << '\n';
}

std::vector<SweepRecord> read_p_sweep_csv(const std::string& path) {
    auto in = open_in(path);
    expect_header(in, "p,q,lambda,tv_u,profile_err,iters,converged", path);
    std::vector<SweepRecord> out;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto c = split_csv_line(line);
        if (c.size() != 7) throw ParseError(path + ": bad row '" + line + "'");
        out.push_back({std::stod(c[0]), std::stod(c[1]), std::stod(c[2]), std::stod(c[3]),
                       std::stod(c[4]), std::stoi(c[5]), c[6] == "1"});
    }
    return out;
}

void write_beta_sweep_csv(const std::string& path, const std::vector<BetaSweepRecord>& records) {
    auto out = open_out(path);
    out << "beta,tv_U,sup_err_U,sup_err_V,v_max,lambda_used,iters\n";
    for (const auto& r : records)
        out << r.beta << ',' << r.tv_U << ',' << r.sup_err_U << ',' << r.sup_err_V << ','
            << r.v_max << ',' << r.lambda_used << ',' << r.iters << '\n';
}

std::vector<BetaSweepRecord> read_beta_sweep_csv(const std::string& path) {
    auto in = open_in(path);
    expect_header(in, "beta,tv_U,sup_err_U,sup_err_V,v_max,lambda_used,iters", path);
    std::vector<BetaSweepRecord> out;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto c = split_csv_line(line);
        if (c.size() != 7) throw ParseError(path + ": bad row '" + line + "'");
        out.push_back({std::stod(c[0]), std::stod(c[1]), std::stod(c[2]), std::stod(c[3]),
                       std::stod(c[4]), std::stod(c[5]), std::stoi(c[6])});
    }
    return out;
}

// ---------------------------------------------------------------------------
// SVG
// ---------------------------------------------------------------------------

namespace {

constexpr int kW = 720, kH = 480, kPad = 60;

double map_x(double v, double lo, double hi) {
    return kPad + (v - lo) / (hi - lo) * (kW - 2 * kPad);
}
double map_y(double v, double lo, double hi) {
    return kH - kPad - (v - lo) / (hi - lo) * (kH - 2 * kPad);
}

} // namespace

void write_svg_line_chart(const std::string& path, const std::string& title,
                          const std::vector<double>& x, const std::vector<double>& y,
                          const std::string& x_label, const std::string& y_label) {
    if (x.size() != y.size() || x.empty()) throw ArgumentOutOfRange("svg chart: bad series");
    auto out = open_out(path);
    const auto [xmin_it, xmax_it] = std::minmax_element(x.begin(), x.end());
    const auto [ymin_it, ymax_it] = std::minmax_element(y.begin(), y.end());
    double xlo = *xmin_it, xhi = *xmax_it, ylo = *ymin_it, yhi = *ymax_it;
    if (xhi == xlo) xhi = xlo + 1;
    const double pad = (yhi - ylo == 0) ? std::max(1.0, std::abs(yhi)) * 0.1 : (yhi - ylo) * 0.08;
    ylo -= pad;
    yhi += pad;

    out << "<svg xmlns='http://www.w3.org/2000/svg' width='" << kW << "' height='" << kH << "'>\n"
        << "<rect width='100%' height='100%' fill='white'/>\n"
        << "<text x='" << kW / 2 << "' y='24' text-anchor='middle' font-size='16'>" << title
        << "</text>\n"
        << "<line x1='" << kPad << "' y1='" << kH - kPad << "' x2='" << kW - kPad << "' y2='"
        << kH - kPad << "' stroke='black'/>\n"
        << "<line x1='" << kPad << "' y1='" << kPad << "' x2='" << kPad << "' y2='" << kH - kPad
        << "' stroke='black'/>\n"
        << "<text x='" << kW / 2 << "' y='" << kH - 16 << "' text-anchor='middle' font-size='12'>"
        << x_label << "</text>\n"
        << "<text x='18' y='" << kH / 2 << "' font-size='12' transform='rotate(-90 18 " << kH / 2
        << ")' text-anchor='middle'>" << y_label << "</text>\n";
    out << "<polyline fill='none' stroke='#1f77b4' stroke-width='2' points='";
    for (size_t k = 0; k < x.size(); ++k)
        out << map_x(x[k], xlo, xhi) << ',' << map_y(y[k], ylo, yhi) << ' ';
    out << "'/>\n";
    for (size_t k = 0; k < x.size(); ++k)
        out << "<circle cx='" << map_x(x[k], xlo, xhi) << "' cy='" << map_y(y[k], ylo, yhi)
            << "' r='3' fill='#1f77b4'/>\n";
    out << "<text x='" << kPad << "' y='" << kH - kPad + 16 << "' font-size='10'>" << xlo
        << "</text>\n"
        << "<text x='" << kW - kPad << "' y='" << kH - kPad + 16
        << "' font-size='10' text-anchor='end'>" << xhi << "</text>\n"
        << "<text x='" << kPad - 4 << "' y='" << kH - kPad << "' font-size='10' text-anchor='end'>"
        << ylo + pad << "</text>\n"
        << "<text x='" << kPad - 4 << "' y='" << kPad + 4 << "' font-size='10' text-anchor='end'>"
        << yhi - pad << "</text>\n</svg>\n";
}

void write_svg_heatmap(const std::string& path, const std::string& title, const ScalarField& field) {
    const auto* g = std::get_if<Grid2D>(&*field.grid);
    if (!g) throw ArgumentOutOfRange("svg heatmap needs a planar field");
    auto out = open_out(path);
    const double vmax = std::max(field.values.maxCoeff(), 1e-300);
    const double cell = double(std::min(kW, kH) - 2 * kPad) / std::max(g->ni(), g->nj());
    out << "<svg xmlns='http://www.w3.org/2000/svg' width='" << kW << "' height='" << kH << "'>\n"
        << "<rect width='100%' height='100%' fill='white'/>\n"
        << "<text x='" << kW / 2 << "' y='24' text-anchor='middle' font-size='16'>" << title
        << "</text>\n";
    for (int k = 0; k < g->n_interior(); ++k) {
        const auto [i, j] = g->node(k);
        const double t = std::clamp(field.values[k] / vmax, 0.0, 1.0);
        const int r = int(255 * t), b = int(255 * (1.0 - t));
        out << "<rect x='" << kPad + i * cell << "' y='" << kPad + (g->nj() - 1 - j) * cell
            << "' width='" << cell + 0.5 << "' height='" << cell + 0.5 << "' fill='rgb(" << r
            << ",0," << b << ")'/>\n";
    }
    out << "</svg>\n";
}

} // namespace lpq
