// Runs the sktgeo binary and checks exit codes and output contracts.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

namespace {

struct Run {
    int code = -1;
    std::string out;
};

Run run(const std::string& args) {
    std::string cmd = std::string(SKTGEO_BIN) + " " + args + " 2>/dev/null";
    Run r;
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    std::array<char, 4096> buf{};
    std::size_t n;
    while ((n = std::fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
    int status = pclose(p);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::filesystem::path temp_file(const std::string& name, const std::string& text) {
    auto path = std::filesystem::temp_directory_path() / ("sktgeo_test_" + name);
    std::ofstream(path) << text;
    return path;
}

void check_report_schema(const nlohmann::json& j) {
    REQUIRE(j.is_object());
    CHECK(j.at("command").is_string());
    CHECK(j.at("model").is_string());
    CHECK(j.at("version").is_string());
    REQUIRE(j.at("checks").is_array());
    for (const auto& c : j.at("checks")) {
        CHECK(c.at("name").is_string());
        CHECK(c.at("holds").is_boolean());
        CHECK((c.at("obstruction").is_null() || c.at("obstruction").is_string()));
        CHECK(c.at("assumptions").is_array());
        CHECK(c.at("notes").is_array());
    }
}

}  // namespace

TEST_CASE("exit code 0 when all requested checks hold") {
    Run r = run("check ex2_7_sa --what classify");
    CHECK(r.code == 0);
    CHECK(r.out.find("quasi-Sasakian") != std::string::npos);
}

TEST_CASE("exit code 1 with the obstruction when a check fails") {
    Run r = run("cone ex2_7_sa --check skt --format json");
    CHECK(r.code == 1);
    auto j = nlohmann::json::parse(r.out);
    check_report_schema(j);
    bool found = false;
    for (const auto& c : j["checks"])
        if (c["name"] == "skt.cone.direct") {
            found = true;
            CHECK_FALSE(c["holds"].get<bool>());
            REQUIRE(c["obstruction"].is_string());
            CHECK(c["obstruction"].get<std::string>().find("e1^e2^e5") != std::string::npos);
        }
    CHECK(found);
}

TEST_CASE("exit code 2 for usage and input errors") {
    CHECK(run("").code == 2);
    CHECK(run("check ex2_7_sa --what nonsense").code == 2);
    CHECK(run("check /nonexistent/model.geo --what skt").code == 2);
    auto bad = temp_file("unresolved.geo", "frame e1\nd e1 = 2*e1^e2\n");
    CHECK(run("props " + bad.string()).code == 2);
    auto jacobi = temp_file("jacobi.geo", "frame e1 e2 e3 e4\nd e4 = e1^e2\nd e1 = e3^e4\n");
    CHECK(run("props " + jacobi.string()).code == 2);
}

TEST_CASE("JSON reports follow the schema") {
    for (const char* args : {"bundle ex2_9_heisenberg --omega Omega --check skt", "props ex2_6_s", "cohomology ex2_7_sa -k 2",
                             "connection ex2_10_alpha --type bismut --curvature --holonomy-span", "evolve ex6_4_family --check",
                             "induce sec5_1_m6 --normal -e6 --structure s"}) {
        CAPTURE(args);
        Run r = run(std::string(args) + " --format json");
        CHECK(r.code == 0);
        check_report_schema(nlohmann::json::parse(r.out));
    }
}

TEST_CASE("output is byte-identical across runs") {
    for (const char* args : {"bundle ex2_9_heisenberg --omega Omega --check skt --format json", "cone ex3_4_gabc --check skt",
                             "fixtures --run-all --format json"}) {
        CAPTURE(args);
        Run a = run(args), b = run(args);
        CHECK(a.code == b.code);
        CHECK(a.out == b.out);
    }
}

TEST_CASE("the fixture manifest passes through the front end") {
    Run r = run("fixtures --run-all --format json");
    CHECK(r.code == 0);
    check_report_schema(nlohmann::json::parse(r.out));
    CHECK(run("--seed 7 fixtures --run-all").code == 0);
}

TEST_CASE("emitted extensions re-parse and re-verify") {
    Run e = run("bundle ex2_9_heisenberg --omega Omega --check skt --emit-extension");
    REQUIRE(e.code == 0);
    auto path = temp_file("bundle.geo", e.out);
    Run again = run("check " + path.string() + " --what skt --format json");
    CHECK(again.code == 0);
    auto j = nlohmann::json::parse(again.out);
    bool skt = false;
    for (const auto& c : j["checks"])
        if (c["name"] == "skt") skt = c["holds"].get<bool>();
    CHECK(skt);
    // Emission is deterministic, so the re-emitted model has the same identity.
    CHECK(run("bundle ex2_9_heisenberg --omega Omega --check skt --emit-extension").out == e.out);

    Run cone = run("cone ext_h5_sasakian --check skt --emit-extension");
    REQUIRE(cone.code == 0);
    auto cpath = temp_file("cone.geo", cone.out);
    CHECK(run("check " + cpath.string() + " --what skt").code == 0);
}
