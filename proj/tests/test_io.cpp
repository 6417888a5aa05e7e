#include <doctest.h>

#include "lpq/errors.hpp"
#include "lpq/io.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

using namespace lpq;

namespace {

struct TempDir {
    std::filesystem::path path;
    TempDir() {
        path = std::filesystem::temp_directory_path() /
               ("lpq_io_test_" + std::to_string(std::rand()));
        std::filesystem::create_directories(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

std::string first_line(const std::string& path) {
    std::ifstream in(path);
    std::string line;
    std::getline(in, line);
    return line;
}

} // namespace

TEST_CASE("field CSV round trip on a planar grid") {
    TempDir tmp;
    const GridPtr g = build_grid(DomainSpec::disc(1.0), 12);
    Eigen::VectorXd v(n_interior(*g));
    for (int k = 0; k < v.size(); ++k) v[k] = std::sin(0.21 * k) * 1e-3;
    const ScalarField f(g, v);
    const std::string path = tmp.file("field.csv");
    write_field_csv(path, f);
    CHECK(first_line(path) == "i,j,x,y,value");
    const ScalarField back = read_field_csv(path, g);
    CHECK((back.values - v).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("field CSV round trip on a radial grid") {
    TempDir tmp;
    const GridPtr g = build_grid(DomainSpec::ball(3), 50);
    Eigen::VectorXd v(n_interior(*g));
    for (int k = 0; k < v.size(); ++k) v[k] = std::cos(0.11 * k);
    const std::string path = tmp.file("radial.csv");
    write_field_csv(path, {g, v});
    CHECK(first_line(path) == "i,r,value");
    const ScalarField back = read_field_csv(path, g);
    CHECK((back.values - v).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("field CSV read rejects mismatched grids") {
    TempDir tmp;
    const GridPtr g = build_grid(DomainSpec::ball(3), 50);
    const GridPtr g2 = build_grid(DomainSpec::ball(3), 60);
    const std::string path = tmp.file("radial.csv");
    write_field_csv(path, {g, Eigen::VectorXd::Ones(n_interior(*g))});
    CHECK_THROWS_AS(read_field_csv(path, g2), ParseError);
}

TEST_CASE("p-sweep CSV round trip") {
    TempDir tmp;
    std::vector<SweepRecord> recs;
    for (int k = 0; k < 3; ++k) {
        SweepRecord r;
        r.p = 1.5 - 0.1 * k;
        r.q = 2.0;
        r.lambda = 10.0 / (k + 1);
        r.tv_u = 7.0 + k;
        r.profile_err = 0.1 / (k + 1);
        r.iters = 10 * (k + 1);
        r.converged = (k != 1);
        recs.push_back(r);
    }
    const std::string path = tmp.file("ps.csv");
    write_p_sweep_csv(path, recs);
    CHECK(first_line(path) == "p,q,lambda,tv_u,profile_err,iters,converged");
    const auto back = read_p_sweep_csv(path);
    REQUIRE(back.size() == recs.size());
    for (size_t k = 0; k < recs.size(); ++k) {
        CHECK(back[k].p == recs[k].p);
        CHECK(back[k].lambda == recs[k].lambda);
        CHECK(back[k].tv_u == recs[k].tv_u);
        CHECK(back[k].profile_err == recs[k].profile_err);
        CHECK(back[k].iters == recs[k].iters);
        CHECK(back[k].converged == recs[k].converged);
    }
}

TEST_CASE("beta-sweep CSV round trip") {
    TempDir tmp;
    std::vector<BetaSweepRecord> recs;
    for (int k = 0; k < 4; ++k) {
        BetaSweepRecord r;
        r.beta = 4 << k;
        r.tv_U = 50.0 - k;
        r.sup_err_U = 3.0 / (k + 1);
        r.sup_err_V = 0.3 / (k + 1);
        r.v_max = 1.0 + 1.0 / (k + 2);
        r.lambda_used = 7.0 + 0.1 * k;
        r.iters = 100 * (k + 1);
        recs.push_back(r);
    }
    const std::string path = tmp.file("bs.csv");
    write_beta_sweep_csv(path, recs);
    CHECK(first_line(path) == "beta,tv_U,sup_err_U,sup_err_V,v_max,lambda_used,iters");
    const auto back = read_beta_sweep_csv(path);
    REQUIRE(back.size() == recs.size());
    for (size_t k = 0; k < recs.size(); ++k) {
        CHECK(back[k].beta == recs[k].beta);
        CHECK(back[k].tv_U == recs[k].tv_U);
        CHECK(back[k].v_max == recs[k].v_max);
        CHECK(back[k].iters == recs[k].iters);
    }
}

TEST_CASE("SVG writers emit well-formed markup") {
    TempDir tmp;
    const std::string chart = tmp.file("chart.svg");
    write_svg_line_chart(chart, "lambda vs p", {1.5, 1.25, 1.1}, {10.7, 10.6, 9.4}, "p", "lambda");
    const std::string head = first_line(chart);
    CHECK(head.substr(0, 4) == "<svg");

    const GridPtr g = build_grid(DomainSpec::disc(1.0), 12);
    ScalarField f(g, Eigen::VectorXd::Ones(n_interior(*g)));
    const std::string heat = tmp.file("heat.svg");
    write_svg_heatmap(heat, "landscape", f);
    CHECK(first_line(heat).substr(0, 4) == "<svg");
    CHECK_THROWS_AS(
        write_svg_heatmap(tmp.file("bad.svg"), "radial",
                          ScalarField(build_grid(DomainSpec::ball(3), 50),
                                      Eigen::VectorXd::Ones(49))),
        ArgumentOutOfRange);
}
