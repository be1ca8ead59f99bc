#include "doctest.h"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"

#ifndef POLYCLARK_CLI
#error "POLYCLARK_CLI must point at the polyclark binary"
#endif

namespace {

using json = nlohmann::json;

struct RunResult {
    int exit_code;
    std::string out;
};

RunResult run_cli(const std::string& args) {
    const std::string out_path = std::string(std::getenv("TMPDIR") ? std::getenv("TMPDIR") : "/tmp") +
                                 "/polyclark_cli_test.out";
    const std::string cmd = std::string(POLYCLARK_CLI) + " " + args + " > " + out_path + " 2>&1";
    int status = std::system(cmd.c_str());
    std::ifstream in(out_path);
    std::stringstream ss;
    ss << in.rdbuf();
    int code = -1;
    if (WIFEXITED(status)) code = WEXITSTATUS(status);
    return {code, ss.str()};
}

const char* kZ1 = R"('{"p": {"nvars": 2, "terms": [{"exp": [1,0], "re": 1}]}}')";
const char* kProd = R"('{"p": {"nvars": 2, "terms": [{"exp": [1,1], "re": 1}]}}')";

}  // namespace

TEST_CASE("compute: mass identity and exit code 0") {
    RunResult r = run_cli(std::string("compute --phi ") + kZ1 + " --alpha 1 --grid 64");
    REQUIRE(r.exit_code == 0);
    json j = json::parse(r.out);
    CHECK(j["all_pass"] == true);
    CHECK(j["results"]["measures"][0]["total_mass"].get<double>() ==
          doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("compute: malformed polynomial JSON exits 2 with a location") {
    RunResult r = run_cli("compute --phi '{\"p\": {\"nvars\": 2' --alpha 1");
    CHECK(r.exit_code == 2);
    CHECK(r.out.find("parse error") != std::string::npos);

    RunResult bad_exp =
        run_cli("compute --phi '{\"p\": {\"nvars\": 2, \"terms\": [{\"exp\": [1,-1], \"re\": 1}]}}'");
    CHECK(bad_exp.exit_code == 2);
    CHECK(bad_exp.out.find("/terms/0") != std::string::npos);
}

TEST_CASE("compute: out-of-range grid exits 2") {
    RunResult r = run_cli(std::string("compute --phi ") + kZ1 + " --grid 4");
    CHECK(r.exit_code == 2);
    RunResult r2 = run_cli(std::string("compute --phi ") + kZ1 + " --grid 10000");
    CHECK(r2.exit_code == 2);
}

TEST_CASE("density: matrix-ball input is rejected as unsupported") {
    const char* det = R"('{"domain": "matrix_ball_2x2",
        "p": {"nvars": 4, "terms": [{"exp": [1,0,0,1], "re": 1}, {"exp": [0,1,1,0], "re": -1}]}}')";
    RunResult r = run_cli(std::string("density --phi ") + det + " --alpha 1");
    CHECK(r.exit_code == 2);
    CHECK(r.out.find("bivariate") != std::string::npos);
}

TEST_CASE("density: verdicts for the two monomial cases") {
    RunResult dense = run_cli(std::string("density --phi ") + kProd +
                              " --alpha 1 --grid 128 --degree 3");
    REQUIRE(dense.exit_code == 0);
    json jd = json::parse(dense.out);
    CHECK(jd["results"]["density"][0]["prediction"] == "dense");

    RunResult obstructed = run_cli(std::string("density --phi ") + kZ1 +
                                   " --alpha 1 --grid 128 --degree 3");
    REQUIRE(obstructed.exit_code == 0);
    json jo = json::parse(obstructed.out);
    CHECK(jo["results"]["density"][0]["prediction"] == "not_dense");
}

TEST_CASE("verify: identities pass for z1") {
    // the fixed 1e-3 identity tolerances are calibrated to grid 512
    RunResult r = run_cli(std::string("verify --phi ") + kZ1 + " --alpha 1 --grid 512");
    REQUIRE(r.exit_code == 0);
    json j = json::parse(r.out);
    CHECK(j["pass"]["poisson"] == true);
    CHECK(j["pass"]["cross_method"] == true);
    CHECK(j["pass"]["disintegration"] == true);
}

TEST_CASE("verify: matrix-ball identities pass within Monte Carlo tolerances") {
    const char* det = R"('{"domain": "matrix_ball_2x2",
        "p": {"nvars": 4, "terms": [{"exp": [1,0,0,1], "re": 1}, {"exp": [0,1,1,0], "re": -1}]}}')";
    RunResult r = run_cli(std::string("verify --phi ") + det +
                          " --alpha i --samples 2000 --workers 2");
    REQUIRE(r.exit_code == 0);
    json j = json::parse(r.out);
    CHECK(j["pass"]["poisson"] == true);
    CHECK(j["pass"]["disintegration"] == true);
}

TEST_CASE("demo-i22: reduced run passes; bad x1 exits 2") {
    RunResult r = run_cli("demo-i22 --samples 1000 --degree 2 --seed 3 --workers 2");
    REQUIRE(r.exit_code == 0);
    json j = json::parse(r.out);
    CHECK(j["all_pass"] == true);
    CHECK(j["results"]["innerness"]["violations"] == 0);

    RunResult bad = run_cli("demo-i22 --x1 '1.5,0'");
    CHECK(bad.exit_code == 2);
}

TEST_CASE("compute and verify write their CSV/JSON sidecars") {
    const std::string base = std::string(std::getenv("TMPDIR") ? std::getenv("TMPDIR") : "/tmp");
    const std::string out = base + "/polyclark_sidecar";
    RunResult r = run_cli(std::string("compute --phi ") + kProd +
                          " --alpha i --grid 64 --out " + out + ".json");
    REQUIRE(r.exit_code == 0);
    std::ifstream measure(out + ".json.alpha0.measure.json");
    std::ifstream atoms(out + ".json.alpha0.atoms.csv");
    CHECK(measure.good());
    CHECK(atoms.good());
    std::string header;
    std::getline(atoms, header);
    CHECK(header == "fiber,re_w,im_w,weight,re_z1,im_z1,re_z2,im_z2");

    RunResult v = run_cli(std::string("verify --phi ") + kProd +
                          " --alpha 1 --grid 512 --out " + out + "_v.json");
    REQUIRE(v.exit_code == 0);
    std::ifstream trace(out + "_v.json.trace.csv");
    CHECK(trace.good());
    std::getline(trace, header);
    CHECK(header == "theta2,re_zeta1,im_zeta1,grad_norm,density,arclen,branch");
}

TEST_CASE("selftest: identical config and seed give identical reports") {
    RunResult a = run_cli("selftest --seed 99 --workers 2");
    RunResult b = run_cli("selftest --seed 99 --workers 2");
    REQUIRE(a.exit_code == 0);
    json ja = json::parse(a.out);
    json jb = json::parse(b.out);
    ja.erase("wall_time_ms");
    jb.erase("wall_time_ms");
    CHECK(ja.dump() == jb.dump());
}
