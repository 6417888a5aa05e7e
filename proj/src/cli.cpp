#include "lpq/cli.hpp"

#include "lpq/asymptotics.hpp"
#include "lpq/closedform.hpp"
#include "lpq/errors.hpp"
#include "lpq/experiments.hpp"
#include "lpq/greenfn.hpp"
#include "lpq/io.hpp"
#include "lpq/rayleigh.hpp"
#include "lpq/verify.hpp"

#include <json.hpp>

#include <Eigen/Core>

#include <filesystem>
#include <fstream>
#include <iostream>

namespace lpq {

using nlohmann::json;
namespace fs = std::filesystem;

std::string to_string(Command c) {
    switch (c) {
        case Command::Ball: return "ball";
        case Command::Green: return "green";
        case Command::Eigen: return "eigen";
        case Command::SweepP: return "sweep-p";
        case Command::SweepBeta: return "sweep-beta";
        case Command::SpinningTop: return "spinning-top";
        case Command::FaberKrahn: return "faber-krahn";
        case Command::Verify: return "verify";
    }
    return "?";
}

double RunConfig::param(const std::string& key, double fallback) const {
    const auto it = parameters.find(key);
    if (it == parameters.end()) return fallback;
    if (const double* v = std::get_if<double>(&it->second)) return *v;
    throw ConfigInvalid("parameter '" + key + "' must be a number");
}

double RunConfig::require_param(const std::string& key) const {
    if (!has(key)) throw ConfigInvalid("missing required parameter '" + key + "'");
    return param(key, 0.0);
}

std::vector<double> RunConfig::require_list(const std::string& key) const {
    const auto it = parameters.find(key);
    if (it == parameters.end()) throw ConfigInvalid("missing required parameter '" + key + "'");
    if (const auto* v = std::get_if<std::vector<double>>(&it->second)) return *v;
    throw ConfigInvalid("parameter '" + key + "' must be an array of numbers");
}

namespace {

Command command_from_string(const std::string& s) {
    if (s == "ball") return Command::Ball;
    if (s == "green") return Command::Green;
    if (s == "eigen") return Command::Eigen;
    if (s == "sweep-p") return Command::SweepP;
    if (s == "sweep-beta") return Command::SweepBeta;
    if (s == "spinning-top") return Command::SpinningTop;
    if (s == "faber-krahn") return Command::FaberKrahn;
    if (s == "verify") return Command::Verify;
    throw ConfigInvalid("unknown command '" + s + "'");
}

DomainSpec domain_from_json(const json& j) {
    if (!j.is_object() || !j.contains("kind")) throw ConfigInvalid("domain needs a 'kind' field");
    const std::string kind = j.at("kind").get<std::string>();
    auto check_keys = [&](std::initializer_list<std::string> allowed) {
        for (const auto& [key, _] : j.items()) {
            bool ok = key == "kind";
            for (const auto& a : allowed) ok = ok || key == a;
            if (!ok) throw ConfigInvalid("unknown domain key '" + key + "'");
        }
    };
    if (kind == "ball") {
        check_keys({"N"});
        return DomainSpec::ball(j.at("N").get<int>());
    }
    if (kind == "rectangle") {
        check_keys({"a", "b"});
        return DomainSpec::rectangle(j.at("a").get<double>(), j.at("b").get<double>());
    }
    if (kind == "disc") {
        check_keys({"radius"});
        return DomainSpec::disc(j.value("radius", 1.0));
    }
    if (kind == "polygon") {
        check_keys({"vertices"});
        std::vector<std::array<double, 2>> verts;
        for (const auto& v : j.at("vertices"))
            verts.push_back({v.at(0).get<double>(), v.at(1).get<double>()});
        return DomainSpec::polygon(std::move(verts));
    }
    if (kind == "spinning_top") {
        check_keys({});
        return DomainSpec::spinning_top();
    }
    throw ConfigInvalid("unknown domain kind '" + kind + "'");
}

void validate(const RunConfig& cfg) {
    auto q_of = [&] { return cfg.param("q", 1.0); };
    switch (cfg.command) {
        case Command::Ball: {
            const int N = int(cfg.require_param("N"));
            if (N < 3) throw ConfigInvalid("ball closed forms require N >= 3");
            const double q = q_of();
            if (q < 1.0 || q >= double(N) / (N - 2))
                throw ConfigInvalid("q violates 1 <= q < N/(N-2)");
            if (cfg.has("alpha")) {
                const double a = cfg.require_param("alpha");
                if (a <= 0.0 || a >= 2.0 / (N - 2))
                    throw ConfigInvalid("alpha violates 0 < alpha < 2/(N-2)");
            }
            break;
        }
        case Command::Eigen: {
            const double p = cfg.require_param("p");
            if (p <= 1.0)
                throw ConfigInvalid("eigen requires p > 1 (p = 1 routes to command 'green')");
            if (q_of() < 1.0) throw ConfigInvalid("q must be >= 1");
            break;
        }
        case Command::SweepP: {
            const auto ps = cfg.require_list("p_list");
            for (size_t i = 0; i < ps.size(); ++i) {
                if (ps[i] <= 1.0) throw ConfigInvalid("p_list entries must exceed 1");
                if (i && ps[i] >= ps[i - 1]) throw ConfigInvalid("p_list must be strictly decreasing");
            }
            break;
        }
        case Command::SweepBeta: {
            const double alpha = cfg.require_param("alpha");
            const auto betas = cfg.require_list("beta_list");
            const int N = int(cfg.param("N", 3));
            for (const double b : betas) {
                if (std::abs(alpha * b - 1.0) < 1e-12)
                    throw ConfigInvalid("alpha*beta = 1 is excluded (eigenvalue problem)");
                if (!below_critical_hyperbola(N, alpha, b))
                    throw ConfigInvalid("(alpha,beta) violates 1/(alpha+1)+1/(beta+1) > (N-2)/N");
            }
            break;
        }
        case Command::Green:
            if (q_of() < 1.0) throw ConfigInvalid("q must be >= 1");
            break;
        case Command::SpinningTop: {
            const double q = cfg.require_param("q");
            if (q <= 0.0 || q >= 3.0) throw ConfigInvalid("spinning-top needs q in (0,3)");
            break;
        }
        case Command::FaberKrahn:
            if (q_of() < 1.0) throw ConfigInvalid("q must be >= 1");
            break;
        case Command::Verify:
            break;
    }
}

GridPtr grid_for(const RunConfig& cfg, int default_radial_res, int default_planar_res) {
    DomainSpec spec = cfg.domain ? *cfg.domain : DomainSpec::ball(int(cfg.param("N", 3)));
    const bool radial = std::holds_alternative<BallDomain>(spec.shape);
    const int res = int(cfg.param("resolution", radial ? default_radial_res : default_planar_res));
    return build_grid(spec, res);
}

json xm_json(const Grid& g, int k) {
    json j;
    if (const auto* radial = std::get_if<RadialGrid>(&g)) {
        j["i"] = k;
        j["r"] = radial->r(k);
    } else {
        const auto& grid = std::get<Grid2D>(g);
        const auto [i, jj] = grid.node(k);
        j["i"] = i;
        j["j"] = jj;
        j["x"] = grid.x(k);
        j["y"] = grid.y(k);
    }
    return j;
}

json run_command(const RunConfig& cfg, json& timings, const fs::path& out_dir) {
    json results;
    switch (cfg.command) {
        case Command::Ball: {
            const int N = int(cfg.require_param("N"));
            const double q = cfg.param("q", 1.0);
            results["N"] = N;
            results["q"] = q;
            results["c_N"] = closedform::c_N(N);
            results["green_norm"] = closedform::green_ball_lq_norm(N, q);
            const double lam = closedform::lambda_1q_ball(N, q);
            results["lambda_1q"] = lam;
            results["level"] =
                q > 1.0 ? json(closedform::least_energy_level(q, lam)) : json(nullptr);
            if (cfg.has("alpha")) {
                const double alpha = cfg.require_param("alpha");
                results["alpha"] = alpha;
                results["A"] = closedform::a_coeff(N, alpha);
                results["kappa"] = closedform::kappa(N, alpha);
            } else {
                results["alpha"] = nullptr;
                results["A"] = nullptr;
                results["kappa"] = nullptr;
            }
            break;
        }
        case Command::Green: {
            const GridPtr g = grid_for(cfg, 1000, 64);
            const double q = cfg.param("q", 1.0);
            LandscapeOptions opts;
            opts.stride = int(cfg.param("stride", 1));
            opts.jobs = cfg.jobs;
            const LambdaOneResult lo = lambda_one(g, q, cfg.param("tol", 1e-12), opts);
            results["q"] = q;
            results["lambda"] = lo.lambda;
            results["x_M"] = xm_json(*g, lo.x_M);
            results["tie_detected"] = lo.tie_detected;
            results["solver_tol"] = lo.solver_tol;
            timings["landscape_sources"] = lo.stride_used;
            write_field_csv((out_dir / "landscape.csv").string(), lo.landscape);
            write_field_csv((out_dir / "profile.csv").string(), lo.profile);
            if (cfg.emit_plots && std::holds_alternative<Grid2D>(*g))
                write_svg_heatmap((out_dir / "landscape.svg").string(), "landscape h(x)", lo.landscape);
            break;
        }
        case Command::Eigen: {
            const GridPtr g = grid_for(cfg, 2000, 64);
            const double p = cfg.require_param("p"), q = cfg.param("q", 2.0);
            EigenOptions opts;
            opts.rq_tol = cfg.param("rq_tol", 1e-10);
            opts.max_iters = int(cfg.param("max_iters", 2000));
            opts.damping = cfg.param("damping", 1.0);
            if (cfg.has("seed")) opts.seed_profile = SeedProfile::random(std::uint64_t(cfg.param("seed", 0)));
            const EigenResult e = minimize_lambda(g, p, q, opts);
            results["p"] = p;
            results["q"] = q;
            results["lambda"] = e.lambda;
            results["iters"] = e.iters;
            results["converged"] = e.converged;
            if (!e.diagnostic.empty()) results["diagnostic"] = e.diagnostic;
            timings["iterations"] = e.iters;
            write_field_csv((out_dir / "minimizer.csv").string(), e.u);
            break;
        }
        case Command::SweepP: {
            const GridPtr g = grid_for(cfg, 2000, 64);
            const double q = cfg.param("q", 2.0);
            PSweepOptions opts;
            opts.eigen.rq_tol = cfg.param("rq_tol", 1e-10);
            opts.landscape_stride = int(cfg.param("stride", 1));
            const auto recs = p_sweep(g, q, cfg.require_list("p_list"), opts);
            write_p_sweep_csv((out_dir / "p_sweep.csv").string(), recs);
            json arr = json::array();
            int iters = 0;
            for (const auto& r : recs) {
                arr.push_back({{"p", r.p},
                               {"lambda", r.lambda},
                               {"tv_u", r.tv_u},
                               {"profile_err", r.profile_err},
                               {"iters", r.iters},
                               {"converged", r.converged}});
                iters += r.iters;
            }
            results["records"] = arr;
            timings["iterations"] = iters;
            if (cfg.emit_plots) {
                std::vector<double> xs, ys;
                for (const auto& r : recs) {
                    xs.push_back(r.p);
                    ys.push_back(r.lambda);
                }
                write_svg_line_chart((out_dir / "p_sweep.svg").string(), "lambda vs p", xs, ys, "p",
                                     "lambda");
            }
            break;
        }
        case Command::SweepBeta: {
            const GridPtr g = grid_for(cfg, 2000, 64);
            const double alpha = cfg.require_param("alpha");
            const double r_min = cfg.param("r_min", 0.2);
            const BetaSweepResult sweep = beta_sweep(g, alpha, cfg.require_list("beta_list"), r_min);
            write_beta_sweep_csv((out_dir / "beta_sweep.csv").string(), sweep.records);
            json arr = json::array();
            int iters = 0;
            for (const auto& r : sweep.records) {
                arr.push_back({{"beta", r.beta},
                               {"tv_U", r.tv_U},
                               {"sup_err_U", r.sup_err_U},
                               {"sup_err_V", r.sup_err_V},
                               {"v_max", r.v_max},
                               {"lambda_used", r.lambda_used},
                               {"iters", r.iters}});
                iters += r.iters;
            }
            results["records"] = arr;
            timings["iterations"] = iters;
            if (sweep.domain_kind == "ball" && sweep.records.size() >= 3) {
                const LimitCheckReport rep = check_limit_ball(sweep, sweep.N, alpha);
                results["limit_check"] = {{"pass", rep.pass()},
                                          {"kappa", rep.kappa},
                                          {"tv_rel_err", rep.tv_rel_err},
                                          {"final_sup_U", rep.final_sup_U},
                                          {"final_sup_V", rep.final_sup_V}};
            }
            if (cfg.emit_plots) {
                std::vector<double> xs, ys;
                for (const auto& r : sweep.records) {
                    xs.push_back(r.beta);
                    ys.push_back(r.tv_U);
                }
                write_svg_line_chart((out_dir / "beta_sweep.svg").string(), "|Lap U|_1 vs beta", xs,
                                     ys, "beta", "tv_U");
            }
            break;
        }
        case Command::SpinningTop: {
            const double q = cfg.require_param("q");
            const SpinningTopResult st = spinning_top_root(q);
            results["q"] = q;
            results["y_M"] = st.y_M;
            results["bracket"] = {st.bracket_lo, st.bracket_hi};
            results["evals"] = st.evals;
            break;
        }
        case Command::FaberKrahn: {
            DomainSpec spec = cfg.domain ? *cfg.domain
                                         : DomainSpec::rectangle(std::sqrt(M_PI), std::sqrt(M_PI));
            const double q = cfg.param("q", 1.0);
            FaberKrahnOptions opts;
            opts.landscape_stride = int(cfg.param("stride", 2));
            opts.jobs = cfg.jobs;
            const FaberKrahnReport rep =
                faber_krahn_compare(spec, q, int(cfg.param("resolution", 96)), opts);
            results["domain"] = rep.domain;
            results["q"] = rep.q;
            results["lambda_domain"] = rep.lambda_domain;
            results["lambda_disc"] = rep.lambda_disc;
            results["holds"] = rep.holds;
            results["est_grid_error"] = rep.est_grid_error;
            break;
        }
        case Command::Verify: {
            const auto criteria = run_acceptance(std::cout);
            json arr = json::array();
            bool all = true;
            for (const auto& c : criteria) {
                arr.push_back({{"criterion", c.name}, {"pass", c.pass}, {"detail", c.detail}});
                all = all && c.pass;
            }
            results["criteria"] = arr;
            results["all_pass"] = all;
            break;
        }
    }
    return results;
}

void count_position(const std::string& text, size_t byte, int& line, int& col) {
    line = 1;
    col = 1;
    for (size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
}

} // namespace

RunConfig parse_config(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        int line = 0, col = 0;
        count_position(json_text, e.byte > 0 ? e.byte - 1 : 0, line, col);
        throw ParseError("malformed JSON at line " + std::to_string(line) + ", column " +
                         std::to_string(col) + ": " + e.what());
    }
    if (!j.is_object()) throw ConfigInvalid("config must be a JSON object");

    RunConfig cfg;
    for (const auto& [key, val] : j.items()) {
        if (key == "command") {
            cfg.command = command_from_string(val.get<std::string>());
        } else if (key == "domain") {
            cfg.domain = domain_from_json(val);
        } else if (key == "parameters") {
            if (!val.is_object()) throw ConfigInvalid("'parameters' must be an object");
            for (const auto& [pk, pv] : val.items()) {
                if (pv.is_number()) {
                    cfg.parameters[pk] = pv.get<double>();
                } else if (pv.is_array()) {
                    std::vector<double> list;
                    for (const auto& x : pv) {
                        if (!x.is_number())
                            throw ConfigInvalid("parameter '" + pk + "' has a non-numeric entry");
                        list.push_back(x.get<double>());
                    }
                    cfg.parameters[pk] = std::move(list);
                } else {
                    throw ConfigInvalid("parameter '" + pk + "' must be a number or array");
                }
            }
        } else if (key == "output_dir") {
            cfg.output_dir = val.get<std::string>();
        } else if (key == "emit_plots") {
            cfg.emit_plots = val.get<bool>();
        } else if (key == "seed") {
            cfg.seed = val.get<std::uint64_t>();
        } else if (key == "jobs") {
            cfg.jobs = val.get<int>();
        } else {
            throw ConfigInvalid("unknown config key '" + key + "'");
        }
    }
    if (!j.contains("command")) throw ConfigInvalid("config needs a 'command'");
    validate(cfg);
    return cfg;
}

int run(const RunConfig& cfg) {
    const fs::path out_dir(cfg.output_dir);
    std::error_code ec;
    fs::create_directories(out_dir, ec);

    json doc;
    doc["command"] = to_string(cfg.command);
    json echo;
    echo["command"] = to_string(cfg.command);
    if (cfg.domain) echo["domain"] = cfg.domain->kind();
    json params;
    for (const auto& [k, v] : cfg.parameters) {
        if (const double* d = std::get_if<double>(&v)) params[k] = *d;
        else params[k] = *std::get_if<std::vector<double>>(&v);
    }
    echo["parameters"] = params;
    echo["seed"] = cfg.seed;
    doc["config_echo"] = echo;
    doc["versions"] = {{"lambda_pq", "0.1.0"},
                       {"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." +
                                     std::to_string(EIGEN_MAJOR_VERSION) + "." +
                                     std::to_string(EIGEN_MINOR_VERSION)}};

    // timings holds deterministic work counters only; wall-clock goes to stderr
    json timings = json::object();
    const auto t0 = std::chrono::steady_clock::now();
    try {
        doc["results"] = run_command(cfg, timings, out_dir);
    } catch (const Error& e) {
        json err;
        err["error"] = e.what();
        doc["results"] = err;
        doc["timings"] = timings;
        std::ofstream(out_dir / "results.json") << doc.dump(2) << "\n";
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    doc["timings"] = timings;
    std::ofstream(out_dir / "results.json") << doc.dump(2) << "\n";
    const double ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    std::cerr << to_string(cfg.command) << " finished in " << ms << " ms\n";

    if (cfg.command == Command::Verify && !doc["results"]["all_pass"].get<bool>()) return 1;
    return 0;
}

} // namespace lpq
