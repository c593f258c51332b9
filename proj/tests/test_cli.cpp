// End-to-end CLI tests: golden files for every documented subcommand plus
// exit-code and determinism checks. Goldens live in tests/golden and are
// rewritten only when OFQ_UPDATE_GOLDEN=1 is set. Runs pin OFQ_SIMD=scalar so
// the bytes do not depend on the host's instruction set.
#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#ifndef OFQ_BIN
#error "OFQ_BIN must point at the CLI binary"
#endif
#ifndef OFQ_GOLDEN_DIR
#error "OFQ_GOLDEN_DIR must point at tests/golden"
#endif

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
};

RunResult run_cli(const std::string& args, const std::string& env = "") {
    const std::string cmd =
        "env OFQ_SIMD=scalar OFQ_THREADS=1 " + env + " " + OFQ_BIN + " " + args + " 2>/dev/null";
    RunResult res;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::array<char, 4096> buf;
    std::size_t got;
    while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) res.out.append(buf.data(), got);
    const int status = pclose(pipe);
    res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return res;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    REQUIRE(out.good());
    out << content;
}

void check_golden(const std::string& name, const std::string& actual) {
    const std::string path = std::string(OFQ_GOLDEN_DIR) + "/" + name;
    if (std::getenv("OFQ_UPDATE_GOLDEN")) {
        write_file(path, actual);
        return;
    }
    std::ifstream in(path);
    REQUIRE_MESSAGE(in.good(), "missing golden ", path,
                    " (regenerate with OFQ_UPDATE_GOLDEN=1)");
    std::ostringstream ss;
    ss << in.rdbuf();
    CHECK_MESSAGE(ss.str() == actual, "golden mismatch for ", name, "\n--- expected ---\n",
                  ss.str(), "\n--- actual ---\n", actual);
}

}  // namespace

TEST_CASE("golden: params") {
    RunResult r = run_cli("params --lambda 0.5,1,1,2 --sign 1");
    CHECK(r.exit_code == 0);
    check_golden("params.json", r.out);
}

TEST_CASE("golden: dims csv") {
    RunResult r = run_cli("dims --lambda 0.5,1,1,2 --kmax 6 --format csv");
    CHECK(r.exit_code == 0);
    check_golden("dims.csv", r.out);
}

TEST_CASE("golden: canonicalize") {
    write_file("cli_f.json", R"({"n": 2, "re": [[0, 0.5], [2, 0]]})");
    RunResult r = run_cli("canonicalize --matrix cli_f.json --pretty");
    CHECK(r.exit_code == 0);
    check_golden("canonicalize.json", r.out);

    write_file("cli_fsym.json", R"({"n": 2, "re": [[0, 1], [-1, 0]]})");
    RunResult rs = run_cli("canonicalize --matrix cli_fsym.json");
    CHECK(rs.exit_code == 0);
    check_golden("canonicalize_symplectic.json", rs.out);

    // canonical shorthand is accepted everywhere a matrix is
    write_file("cli_short.json", R"({"lambda": [0.5, 1, 1, 2], "sign": 1})");
    RunResult sh = run_cli("canonicalize --matrix cli_short.json");
    CHECK(sh.exit_code == 0);
    check_golden("canonicalize_shorthand.json", sh.out);
}

TEST_CASE("golden: norms") {
    write_file("cli_poly.json",
               R"({"lambda": [0.5, 1, 1, 2], "sign": 1, "terms": [)"
               R"({"s": [], "t": [], "re": 1},)"
               R"({"s": [1], "t": [1], "re": 1}]})");
    RunResult r = run_cli("norms --poly cli_poly.json");
    CHECK(r.exit_code == 0);
    check_golden("norms.json", r.out);

    // the Lp-equivalent functional needs a homogeneous polynomial over the
    // |lambda| < 1 index family
    write_file("cli_poly_h.json",
               R"({"lambda": [0.4, 0.5, 1, 2, 2.5], "sign": 1, "terms": [)"
               R"({"s": [1, 2], "t": [2, 2], "re": 0.5, "im": -0.25},)"
               R"({"s": [2, 1], "t": [1, 1], "re": 1}]})");
    RunResult rh = run_cli("norms --poly cli_poly_h.json --p 1.5");
    CHECK(rh.exit_code == 0);
    check_golden("norms_lp.json", rh.out);

    // --p on a non-homogeneous polynomial is a validation error
    CHECK(run_cli("norms --poly cli_poly.json --p 1.5").exit_code == 2);
}

TEST_CASE("polynomial JSON round-trips bit-for-bit in canonical term order") {
    // terms deliberately out of order and with an imaginary part
    write_file("cli_rt.json",
               R"({"lambda": [0.5, 1, 1, 2], "sign": 1, "terms": [)"
               R"({"s": [2, 1], "t": [1, 1], "re": 0.5, "im": -1},)"
               R"({"s": [1], "t": [3], "re": 2},)"
               R"({"s": [1, 1], "t": [2, 1], "re": 0.25}]})");
    RunResult first = run_cli("norms --poly cli_rt.json --echo-poly cli_rt1.json");
    CHECK(first.exit_code == 0);
    RunResult second = run_cli("norms --poly cli_rt1.json --echo-poly cli_rt2.json");
    CHECK(second.exit_code == 0);
    std::ifstream a("cli_rt1.json"), b("cli_rt2.json");
    std::ostringstream sa, sb;
    sa << a.rdbuf();
    sb << b.rdbuf();
    CHECK(sa.str() == sb.str());
    // canonical order: degree first, then lexicographic (s, t)
    const std::string text = sa.str();
    CHECK(text.find("[1]") < text.find("[1,1]"));
    CHECK(text.find("[1,1]") < text.find("[2,1]"));
}

TEST_CASE("repro runs the acceptance suite") {
    RunResult r = run_cli("repro");
    CHECK(r.exit_code == 0);
    for (int id = 1; id <= 10; ++id)
        CHECK(r.out.find("[PASS] " + std::to_string(id) + " ") != std::string::npos);
    CHECK(r.out.find("[FAIL]") == std::string::npos);
}

TEST_CASE("unconverged truncation reports exit code 3") {
    // M = 10 stalls in a near-degenerate cluster for the bare generator
    RunResult r =
        run_cli("toeplitz-bound --lambda 0.5,1,1,2 --s 1 --t 1 --coeffs 0,1 --M 10");
    CHECK(r.exit_code == 3);
    CHECK(r.out.find("\"converged\":false") != std::string::npos);
}

TEST_CASE("per-subcommand help lists the flags") {
    RunResult heat = run_cli("heat --help");
    CHECK(heat.exit_code == 0);
    for (const char* flag : {"--lambda", "--sign", "--matrix", "--t", "--K", "--out",
                             "--pretty", "--config"})
        CHECK(heat.out.find(flag) != std::string::npos);
    RunResult toep = run_cli("toeplitz-bound --help");
    for (const char* flag : {"--s", "--t", "--coeffs", "--M"})
        CHECK(toep.out.find(flag) != std::string::npos);
}

TEST_CASE("golden: toeplitz-bound") {
    RunResult r = run_cli("toeplitz-bound --lambda 0.5,1,1,2 --s 1 --t 1 --coeffs 0,1 --M 50");
    CHECK(r.exit_code == 0);
    check_golden("toeplitz.json", r.out);
}

TEST_CASE("golden: heat") {
    RunResult r = run_cli("heat --lambda 0.5,1,1,2 --t 8.3 --K 10");
    CHECK(r.exit_code == 0);
    check_golden("heat.json", r.out);

    // --t is optional; the threshold is reported either way
    RunResult t0 = run_cli("heat --lambda 0.5,1,1,2 --sign 1 --K 5");
    CHECK(t0.exit_code == 0);
    CHECK(t0.out.find("\"t_F\":8.2087474807078653") != std::string::npos);
}

TEST_CASE("golden: multiplier-check") {
    RunResult r = run_cli("multiplier-check --lambda 0.5,1,1,2 --rho 0.2 --alpha -1 --K 100");
    CHECK(r.exit_code == 0);
    check_golden("multiplier.json", r.out);
}

TEST_CASE("golden: interp-witness") {
    RunResult r = run_cli("interp-witness --lambda 0.5,1,1,2 --p 1.5 --n 8 --pattern ones");
    CHECK(r.exit_code == 0);
    check_golden("witness.json", r.out);

    RunResult sweep = run_cli("interp-witness --lambda 0.5,1,1,2 --p 1.5 --sweep 16..64");
    CHECK(sweep.exit_code == 0);
    check_golden("witness_sweep.csv", sweep.out);
}

TEST_CASE("golden: haagerup-bounds") {
    RunResult r = run_cli("haagerup-bounds --lambda 0.5,1,1,2 --gen 1,1 --kmax 3 --M 50");
    CHECK(r.exit_code == 0);
    check_golden("haagerup.csv", r.out);

    // the certified lower column is monotone nonincreasing in k
    std::istringstream rows(r.out);
    std::string line;
    std::getline(rows, line);  // header
    double prev = 1e300;
    while (std::getline(rows, line)) {
        const auto c1 = line.find(',');
        const auto c2 = line.find(',', c1 + 1);
        const double lower = std::stod(line.substr(c1 + 1, c2 - c1 - 1));
        CHECK(lower <= prev * (1.0 + 1e-12));
        prev = lower;
    }

    // Kac contexts fall back to the L2 floor (no weight condition to use)
    RunResult kac = run_cli("haagerup-bounds --lambda 1,1,1 --gen 1,1 --kmax 2 --M 50");
    CHECK(kac.exit_code == 0);
    CHECK(kac.out.find("\n0,1,") != std::string::npos);
}

TEST_CASE("output is deterministic run-to-run and across thread caps") {
    RunResult a = run_cli("params --lambda 0.5,1,1,2");
    RunResult b = run_cli("params --lambda 0.5,1,1,2");
    CHECK(a.out == b.out);

    RunResult t1 = run_cli("haagerup-bounds --lambda 0.5,1,1,2 --kmax 4 --M 50");
    RunResult t2 = run_cli("haagerup-bounds --lambda 0.5,1,1,2 --kmax 4 --M 50",
                           "OFQ_THREADS=2");
    CHECK(t1.out == t2.out);
}

TEST_CASE("config file supplies defaults, flags win") {
    write_file("cli_cfg.json", R"({"lambda": "0.5,1,1,2", "t": 8.3, "K": 5})");
    RunResult from_cfg = run_cli("heat --config cli_cfg.json");
    RunResult from_flags = run_cli("heat --lambda 0.5,1,1,2 --t 8.3 --K 5");
    CHECK(from_cfg.exit_code == 0);
    CHECK(from_cfg.out == from_flags.out);

    RunResult override_t = run_cli("heat --config cli_cfg.json --t 1.0");
    RunResult direct = run_cli("heat --lambda 0.5,1,1,2 --t 1.0 --K 5");
    CHECK(override_t.out == direct.out);
}

TEST_CASE("exit codes") {
    CHECK(run_cli("params --lambda 0.5,1,1,2 --no-such-flag").exit_code != 0);
    CHECK(run_cli("params").exit_code == 2);  // no input form
    write_file("cli_bad.json", R"({"n": 2, "re": [[1, 0], [0, 2]]})");
    CHECK(run_cli("canonicalize --matrix cli_bad.json").exit_code == 2);
    CHECK(run_cli("nonsense-subcommand").exit_code != 0);

    RunResult help = run_cli("--help");
    CHECK(help.exit_code == 0);
    for (const char* sub : {"canonicalize", "params", "dims", "norms", "haagerup-bounds",
                            "toeplitz-bound", "heat", "multiplier-check", "interp-witness",
                            "repro"})
        CHECK(help.out.find(sub) != std::string::npos);
}
