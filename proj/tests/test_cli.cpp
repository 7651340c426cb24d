#include <doctest.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <string>

using namespace std::string_literals;

namespace {

struct RunResult {
    int exit_code = 0;
    std::string out;
};

RunResult run(const std::string& args) {
    std::string cmd = CECH_BIN " "s + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    RunResult r;
    std::array<char, 4096> buf;
    std::size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
    int status = pclose(pipe);
    r.exit_code = WEXITSTATUS(status);
    return r;
}

std::string sl2_path() { return CECH_DATA_DIR "/sl2.json"s; }

}  // namespace

TEST_CASE("transgress on the sl2 determinant reports factor 1/2 against eta") {
    RunResult r = run("transgress --algebra " + sl2_path() + " --poly \"-x^2 - y*z\"");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("factor_vs_eta: 1/2") != std::string::npos);
    CHECK(r.out.find("class: 4 x1^y1^z1") != std::string::npos);
    CHECK(r.out.find("convention ce_sign") != std::string::npos);
    CHECK(r.out.find("convention sigma1_embedding") != std::string::npos);
    CHECK(r.out.find("convention wedge_normalization") != std::string::npos);
}

TEST_CASE("reports are byte-identical across reruns") {
    std::string args = "transgress --algebra " + sl2_path() + " --poly \"-x^2 - y*z\" --json";
    RunResult a = run(args);
    RunResult b = run(args);
    CHECK(a.exit_code == 0);
    CHECK(a.out == b.out);
    std::string w = "wonderful residue --type A2 --poly \"u1^2+u1*u2+u2^2\" --mode eq";
    CHECK(run(w).out == run(w).out);
    std::string s = "ss verify-cone --seed 5 --trials 7";
    CHECK(run(s).out == run(s).out);
}

TEST_CASE("zero polynomial transgresses to the zero class") {
    RunResult r = run("transgress --algebra " + sl2_path() + " --poly \"0\"");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("class: 0") != std::string::npos);
}

TEST_CASE("non-invariant polynomial exits with code 3") {
    RunResult r = run("transgress --algebra " + sl2_path() + " --poly \"x^2\"");
    CHECK(r.exit_code == 3);
}

TEST_CASE("parse failures exit with code 2") {
    CHECK(run("transgress --algebra /nonexistent.json --poly \"x\"").exit_code == 2);
    CHECK(run("transgress --algebra " + sl2_path() + " --poly \"x +\"").exit_code == 2);
    CHECK(run("wonderful residue --type Z9 --poly \"u1^2\"").exit_code == 2);
}

TEST_CASE("wonderful residue A1") {
    RunResult r = run("wonderful residue --type A1 --poly \"u1^2\" --mode noneq");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("beta_xy: 4*x1*y1") != std::string::npos);
    CHECK(r.out.find("f_1: 4*v1 + 4*u1") != std::string::npos);
    CHECK(r.out.find("class_is_zero: false") != std::string::npos);
    CHECK(r.out.find("class_on_Z: -4*sigma2 + 4*sigma1") != std::string::npos);
}

TEST_CASE("wonderful residue A2 and the zero polynomial") {
    RunResult r = run("wonderful residue --type A2 --poly \"u1^2+u1*u2+u2^2\" --mode eq");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("assert beta = 2^d (p(u) - p(v)): pass") != std::string::npos);
    CHECK(r.out.find("assert sum_k x_k f_k = beta: pass") != std::string::npos);
    RunResult z = run("wonderful residue --type A1 --poly \"0\" --mode noneq");
    CHECK(z.exit_code == 0);
    CHECK(z.out.find("beta_uv: 0") != std::string::npos);
    CHECK(z.out.find("class_is_zero: true") != std::string::npos);
}

TEST_CASE("degree bound exceeded exits with code 5") {
    RunResult r = run("wonderful residue --type A1 --poly \"u1^2\" --degree-bound 0");
    CHECK(r.exit_code == 5);
}

TEST_CASE("ss verify-cone") {
    RunResult ok = run("ss verify-cone --seed 1 --trials 100");
    CHECK(ok.exit_code == 0);
    CHECK(ok.out.find("\"failures\":0") != std::string::npos);
    CHECK(ok.out.find("\"all_pass\":true") != std::string::npos);
    RunResult vacuous = run("ss verify-cone --seed 1 --trials 0");
    CHECK(vacuous.exit_code == 0);
    RunResult corrupted = run("ss verify-cone --seed 1 --trials 6 --corrupt-trial 2");
    CHECK(corrupted.exit_code == 6);
}
