#include <sys/wait.h>

#include <cstdio>
#include <string>

#include "doctest.h"
#include "json.hpp"

namespace {

struct CliResult {
    int code = -1;
    std::string out;
};

CliResult run_shell(const std::string& cmd) {
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    std::string out;
    char buf[4096];
    size_t n;
    while ((n = fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, n);
    int status = pclose(p);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

CliResult run_cli(const std::string& args) {
    return run_shell(std::string(WELDINV_CLI_PATH) + " " + args + " 2>/dev/null");
}

bool has_line(const std::string& out, const std::string& line) {
    return ("\n" + out).find("\n" + line + "\n") != std::string::npos;
}

}  // namespace

TEST_CASE("invariant subcommand") {
    auto r = run_cli("invariant --catalog T31 --cm 'gl(2,3)'");
    CHECK(r.code == 0);
    CHECK(has_line(r.out, "value 4320"));
    CHECK(has_line(r.out, "backend fast"));

    // matches the direct evaluation of the three-component closed form
    long direct = 0;
    for (int x : {1, -1})
        for (int y : {1, -1})
            for (int z : {1, -1})
                for (int e = 0; e < 3; ++e)
                    for (int f = 0; f < 3; ++f)
                        for (int g = 0; g < 3; ++g) {
                            int c1 = ((-(y * x) * f + y * (e + f) - e) % 3 + 9) % 3;
                            int c2 = ((-(z * y) * g + z * (-f + g) + f) % 3 + 9) % 3;
                            direct += c1 == 0 && c2 == 0;
                        }
    auto q1 = run_cli("invariant --catalog Q1 --cm 'sign(3)'");
    CHECK(q1.code == 0);
    CHECK(has_line(q1.out, "value " + std::to_string(direct)));

    auto arc = run_cli("invariant --catalog HA --cm 'sign(3)'");
    CHECK(has_line(arc.out, "value 24"));
    CHECK(has_line(arc.out, "raw 8"));
    CHECK(has_line(arc.out, "exponent 1"));

    auto file = run_shell("echo 'braid 2: 1 1 1' | " + std::string(WELDINV_CLI_PATH) +
                          " invariant --diagram /dev/stdin --cm 'sign(3)' 2>/dev/null");
    CHECK(file.code == 0);
    CHECK(has_line(file.out, "value 12"));
}

TEST_CASE("json and text outputs carry the same payload") {
    auto text = run_cli("invariant --catalog K52 --cm 'gl(2,2)'");
    auto js = run_cli("invariant --catalog K52 --cm 'gl(2,2)' --json");
    REQUIRE(js.code == 0);
    auto j = nlohmann::json::parse(js.out);
    CHECK(has_line(text.out, "value " + j["value"].get<std::string>()));
    CHECK(has_line(text.out, "raw " + j["raw"].get<std::string>()));
    CHECK(has_line(text.out, "exponent " + std::to_string(j["exponent"].get<int>())));
    CHECK(has_line(text.out, "backend " + j["backend"].get<std::string>()));
}

TEST_CASE("reruns are bit-identical") {
    for (const char* cmd : {"invariant --catalog Q2 --cm 'sign(4)' --json",
                            "fuzz --catalog L --cm 'sign(3)' --steps 25 --seeds 2",
                            "catalog-list --json"}) {
        CAPTURE(cmd);
        auto a = run_cli(cmd);
        auto b = run_cli(cmd);
        CHECK(a.code == 0);
        CHECK(a.out == b.out);
    }
}

TEST_CASE("table subcommand verifies embedded cells") {
    auto r = run_cli("table 1 --p 2");
    CHECK(r.code == 0);
    CHECK(has_line(r.out, "p=2 T31 expected 96 got 96 PASS"));
    CHECK(has_line(r.out, "p=2 S expected 96 got 96 PASS"));
    CHECK(has_line(r.out, "table 1: 2/2 PASS"));

    auto t5 = run_cli("table 5 --p 3 --json");
    CHECK(t5.code == 0);
    auto j = nlohmann::json::parse(t5.out);
    CHECK(j["passed"] == 16);
    CHECK(j["total"] == 16);
    CHECK(j["cells"][0]["name"] == "Kn(3)");
    CHECK(j["cells"][0]["got"] == "4320");

    CHECK(run_cli("table 6").code == 2);
    CHECK(run_cli("table 1 --p 6").code == 2);
}

TEST_CASE("fuzz subcommand") {
    auto r = run_cli("fuzz --catalog L --cm 'sign(3)' --steps 30 --seeds 2");
    CHECK(r.code == 0);
    CHECK(has_line(r.out, "reference 24"));
    CHECK(has_line(r.out, "fuzz: 2/2 ok"));
}

TEST_CASE("presentation subcommand") {
    auto r = run_cli("presentation --catalog L --which alex");
    CHECK(r.code == 0);
    CHECK(r.out ==
          "generators 2 over Z[X1^{+-1},X2^{+-1}]\n"
          "(-1 + 1*X2)*e1 + (1 - 1*X1)*e2 = 0\n");
    CHECK(run_cli("presentation --catalog L --which alexp").code == 0);
    CHECK(run_cli("presentation --catalog L --which nope").code == 2);
}

TEST_CASE("catalog-list subcommand") {
    auto r = run_cli("catalog-list");
    CHECK(r.code == 0);
    CHECK(has_line(r.out, "VA arc 1"));
    CHECK(has_line(r.out, "Kn(n) knot 1"));
    int lines = 0;
    for (char c : r.out) lines += c == '\n';
    CHECK(lines == 22);
}

TEST_CASE("group-homs subcommand") {
    auto r = run_cli("group-homs --catalog T31 --group 'sym(3)'");
    CHECK(r.code == 0);
    CHECK(has_line(r.out, "homs 12"));
    CHECK(run_cli("group-homs --catalog T31 --group 'cyclic(5)' --json").out.find("\"homs\": \"5\"") !=
          std::string::npos);
}

TEST_CASE("usage and resource errors") {
    CHECK(run_cli("").code == 2);
    CHECK(run_cli("frobnicate").code == 2);
    CHECK(run_cli("invariant --catalog T31").code == 2);
    CHECK(run_cli("invariant --catalog T31 --cm 'sign(3)' --bogus").code == 2);
    CHECK(run_cli("invariant --catalog nonesuch --cm 'sign(3)'").code == 2);
    CHECK(run_cli("invariant --cm 'sign(3)'").code == 2);
    CHECK(run_cli("--help").code == 0);
    auto cap = run_cli("invariant --catalog T31 --cm 'sign(3)' --backend naive");
    CHECK(cap.code == 0);
    auto capped = run_shell("WELDINV_ORACLE_CAP=10 " + std::string(WELDINV_CLI_PATH) +
                            " invariant --catalog T31 --cm 'sign(3)' --backend naive 2>/dev/null");
    CHECK(capped.code == 3);
}
