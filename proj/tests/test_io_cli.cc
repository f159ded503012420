//---------------------------------------------------------------------------//
//! \file test_io_cli.cc
//---------------------------------------------------------------------------//
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>

#include "doctest.h"
#include "halfbern/Bounds.hh"
#include "halfbern/Cli.hh"
#include "halfbern/Io.hh"

using namespace halfbern;
namespace fs = std::filesystem;

namespace
{
struct TempDir
{
    fs::path path;
    TempDir()
    {
        path = fs::temp_directory_path() / ("halfbern-test-" + std::to_string(std::rand()) + "-"
                                            + std::to_string(reinterpret_cast<std::uintptr_t>(this)));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string file(std::string const& name, std::string const& text) const
    {
        auto const p = (path / name).string();
        std::ofstream(p) << text;
        return p;
    }
};

struct Result
{
    int code;
    std::string out;
    std::string err;
};

Result cli(std::vector<std::string> args)
{
    args.insert(args.begin(), "halfbern");
    std::ostringstream out, err;
    int const code = run(args, out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::string> data_lines(std::string const& text)
{
    std::vector<std::string> lines;
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line))
    {
        if (!line.empty() && line[0] != '#')
            lines.push_back(line);
    }
    return lines;
}
}  // namespace

TEST_CASE("domain round trip")
{
    for (auto const& dom : {ellipse_domain(Vec{0.5, -1.0}, 2, 1, 32), RadialDomain::ball(Vec{0.0}, 1.5),
                            RadialDomain::ball(Vec{0.0, 0.0, 0.0}, 2.0, 50)})
    {
        auto const back = radial_domain_from_json(Json::parse(to_json(dom).dump()));
        CHECK(back.grid() == dom.grid());
        CHECK(back.radii() == dom.radii());
        CHECK(back.center() == dom.center());
    }
}

TEST_CASE("domain specs")
{
    auto const b = domain_from_spec(Json::parse(R"({"type":"ball","center":[1,2],"radius":3,"directions":16})"));
    CHECK(b.size() == 16);
    CHECK(b.is_ball());
    CHECK(b.max_radius() == 3);
    auto const e = domain_from_spec(Json::parse(R"({"type":"ellipse","center":[0,0],"a":2,"b":1,"directions":64})"));
    CHECK(e.max_radius() == doctest::Approx(2));
    CHECK(e.min_radius() == doctest::Approx(1));
    CHECK_THROWS(domain_from_spec(Json::parse(R"({"type":"square"})")));
    CHECK_THROWS(domain_from_spec(Json::parse(R"({"type":"ball","center":[0,0],"radius":-1})")));
    CHECK_THROWS(radial_domain_from_json(Json::parse(R"({"dimension":2,"center":[0,0],"radii":[1,1]})")));
}

TEST_CASE("config round trip")
{
    SolverConfig cfg;
    cfg.tol_fb = 0.02;
    cfg.walk.n_walks = 1234;
    cfg.walk.threads = 7;
    cfg.t_grid.points = 4;
    auto const back = solver_config_from_json(Json::parse(to_json(cfg).dump()));
    CHECK(back.tol_fb == 0.02);
    CHECK(back.walk.n_walks == 1234);
    CHECK(back.walk.threads == 1);
    CHECK(back.t_grid.points == 4);
    CHECK(to_json(back) == to_json(cfg));
    CHECK_THROWS(solver_config_from_json(Json::parse(R"({"tolerance":0.1})")));
    CHECK_THROWS(walk_config_from_json(Json::parse(R"({"n_walks":0})")));
}

TEST_CASE("solution and report round trip")
{
    SolverConfig cfg;
    cfg.walk.n_walks = 1000;
    auto const core = RadialDomain::ball(Vec{0.0}, 1.0);
    auto const sol = solve(core, 1.0, cfg);
    auto const back = solution_from_json(Json::parse(to_json(sol).dump()));
    CHECK(back.domain.radii() == sol.domain.radii());
    CHECK(back.radius_error == sol.radius_error);
    CHECK(back.derivative.size() == sol.derivative.size());
    CHECK(to_json(back).dump() == to_json(sol).dump());

    auto rep = run_suite("distance", core, std::vector<BernoulliSolution>{sol}, cfg);
    rep.checks.push_back(CheckResult{"edge", Verdict::inconclusive, std::numeric_limits<double>::infinity(),
                                     std::numeric_limits<double>::quiet_NaN(), 3, "x"});
    auto const text = to_json(rep).dump();
    CHECK(text.find("\"inf\"") != std::string::npos);
    auto const r2 = report_from_json(Json::parse(text));
    CHECK(std::isinf(r2.checks.back().margin));
    CHECK(std::isnan(r2.checks.back().sigma));
    CHECK(to_json(r2).dump() == text);
}

TEST_CASE("bound report json")
{
    auto const one = to_json(bound_report(1.0, 1.0, 1));
    CHECK(one.contains("C_source"));
    CHECK(one["C"].get<double>() == doctest::Approx(4 / (std::numbers::pi * std::numbers::pi)));
    CHECK_FALSE(to_json(bound_report(1.0, 1.0, 2)).contains("C_source"));
}

TEST_CASE("hash and provenance")
{
    CHECK(fnv1a_hex("") == "cbf29ce484222325");
    CHECK(fnv1a_hex("a") == "af63dc4c8601ec8c");
    auto const c = provenance_comment(9, Json{{"k", 1}});
    CHECK(c.rfind("# halfbern ", 0) == 0);
    CHECK(c.find("seed=9") != std::string::npos);
    CHECK(provenance(9, Json{{"k", 1}})["config_hash"] == provenance(9, Json{{"k", 1}})["config_hash"]);
    CHECK(provenance(9, Json{{"k", 1}})["config_hash"] != provenance(9, Json{{"k", 2}})["config_hash"]);
}

TEST_CASE("cli bounds table")
{
    auto const r = cli({"bounds", "--d", "2", "--rk", "1", "--lambda-grid", "0.1:10:16"});
    REQUIRE(r.code == 0);
    auto const lines = data_lines(r.out);
    REQUIRE(lines.size() == 17);
    CHECK(lines[0] == "lambda,g_estimate,g_exact,upper");
    double prev = std::numeric_limits<double>::infinity();
    for (std::size_t i = 1; i < lines.size(); ++i)
    {
        double l, ge, gx, up;
        REQUIRE(std::sscanf(lines[i].c_str(), "%lf,%lf,%lf,%lf", &l, &ge, &gx, &up) == 4);
        CHECK(gx < prev);
        CHECK(ge <= gx);
        CHECK(gx <= up);
        prev = gx;
    }
}

TEST_CASE("cli exit codes")
{
    TempDir tmp;
    auto const k = tmp.file("k.json", R"({"type":"ball","center":[0,0],"radius":2,"directions":16})");
    auto const k3 = tmp.file("k3.json", R"({"type":"ball","center":[0,0],"radius":3,"directions":16})");
    auto const broken = tmp.file("bad.json", "{not json");

    CHECK(cli({}).code == 2);
    CHECK(cli({"frobnicate"}).code == 2);
    CHECK(cli({"--help"}).code == 0);
    CHECK(cli({"solve", "--k-spec", k, "--lambda", "-1"}).code == 2);
    CHECK(cli({"solve", "--k-spec", broken, "--lambda", "1"}).code == 2);
    CHECK(cli({"solve", "--k-spec", (tmp.path / "missing.json").string(), "--lambda", "1"}).code == 2);
    CHECK(cli({"bounds", "--d", "2", "--rk", "1", "--lambda-grid", "1:2"}).code == 2);
    CHECK(cli({"verify", "--suite", "nonsense"}).code == 2);

    auto const m = cli({"metric", "--a", k, "--b", k3});
    REQUIRE(m.code == 0);
    CHECK(std::stod(m.out) == doctest::Approx(std::log(1.5)).epsilon(1e-9));

    // Unconverged solve exits 1 and still writes the solution
    auto const s = cli({"solve", "--k-spec", k, "--lambda", "1", "--walks", "200", "--max-iters", "1"});
    CHECK(s.code == 1);
    CHECK(Json::parse(s.out).contains("solution"));
}

TEST_CASE("cli seed from the environment")
{
    ::setenv("HALFBERN_SEED", "7", 1);
    auto const a = cli({"annulus-derivative", "--d", "1", "--r", "1", "--R", "2", "--estimate", "--walks", "500"});
    auto const b = cli({"annulus-derivative", "--d", "1", "--r", "1", "--R", "2", "--estimate", "--walks", "500", "--seed", "8"});
    ::setenv("HALFBERN_SEED", "x", 1);
    auto const bad = cli({"bounds", "--d", "2", "--rk", "1", "--lambda-grid", "1:2:2"});
    ::unsetenv("HALFBERN_SEED");
    CHECK(a.code == 0);
    CHECK(a.out.find("seed=7") != std::string::npos);
    CHECK(b.out.find("seed=8") != std::string::npos);
    CHECK(data_lines(a.out).back() != data_lines(b.out).back());
    CHECK(bad.code == 2);
}

TEST_CASE("cli verify output does not depend on the thread count")
{
    std::vector<std::string> const base{"verify", "--suite", "monotonicity", "--walks", "300", "--directions", "8",
                                        "--lambdas", "1,2", "--max-iters", "2", "--seed", "42"};
    auto one = base;
    one.insert(one.end(), {"--threads", "1"});
    auto three = base;
    three.insert(three.end(), {"--threads", "3"});
    auto const a = cli(one);
    auto const b = cli(three);
    CHECK(a.code == b.code);
    CHECK(a.out == b.out);
    CHECK(Json::parse(a.out)["checks"].size() == 1);
}

TEST_CASE("cli file outputs")
{
    TempDir tmp;
    auto const k = tmp.file("k.json", R"({"type":"ellipse","center":[0,0],"a":1.5,"b":1,"directions":16})");
    auto const sol = (tmp.path / "sol.json").string();
    auto const csv = (tmp.path / "b.csv").string();
    auto const s = cli({"solve", "--k-spec", k, "--lambda", "1.5", "--walks", "500", "--max-iters", "2", "--out", sol,
                        "--boundary-csv", csv});
    CHECK(s.code <= 1);
    CHECK(fs::exists(sol));
    auto const rows = data_lines(read_file(csv));
    CHECK(rows.size() == 17);
    CHECK(rows[0] == "theta_index,x_1,x_2");

    auto const svg = (tmp.path / "p.svg").string();
    auto const p = cli({"plot", "--k-spec", k, "--solution", sol, "--rays", "--out", svg});
    CHECK(p.code == 0);
    CHECK(read_file(svg).find("<svg") != std::string::npos);
}
