#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "doctest.h"

#ifndef FRACVAR_CLI_PATH
#error "FRACVAR_CLI_PATH must point at the command-line binary"
#endif

namespace {

struct RunResult {
    int exit_code = -1;
    std::string output;
};

RunResult run_cli(const std::string& args, const std::string& env = "") {
    std::string command;
    if (!env.empty()) command += "env " + env + " ";
    command += std::string(FRACVAR_CLI_PATH) + " " + args + " 2>&1";
    RunResult result;
    FILE* pipe = popen(command.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::array<char, 4096> chunk{};
    std::size_t got = 0;
    while ((got = std::fread(chunk.data(), 1, chunk.size(), pipe)) > 0) {
        result.output.append(chunk.data(), got);
    }
    const int status = pclose(pipe);
    REQUIRE(WIFEXITED(status));
    result.exit_code = WEXITSTATUS(status);
    return result;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

std::vector<std::string> split_lines(const std::string& text) {
    std::vector<std::string> lines;
    std::size_t pos = 0;
    while (pos < text.size()) {
        const std::size_t nl = text.find('\n', pos);
        if (nl == std::string::npos) {
            lines.push_back(text.substr(pos));
            break;
        }
        lines.push_back(text.substr(pos, nl - pos));
        pos = nl + 1;
    }
    return lines;
}

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> fields;
    std::size_t pos = 0;
    while (true) {
        const std::size_t comma = line.find(',', pos);
        if (comma == std::string::npos) {
            fields.push_back(line.substr(pos));
            break;
        }
        fields.push_back(line.substr(pos, comma - pos));
        pos = comma + 1;
    }
    return fields;
}

double result_file_value(const std::string& path) {
    for (const std::string& line : split_lines(slurp(path))) {
        if (line.rfind("value = ", 0) == 0) {
            return std::strtod(line.c_str() + 8, nullptr);
        }
    }
    FAIL("no value line in " << path);
    return 0.0;
}

}  // namespace

TEST_CASE("the benchmark command checks itself and exits cleanly") {
    const RunResult run = run_cli("example1 --alpha 0.5");
    CHECK(run.exit_code == 0);
    CHECK(run.output.find("result = pass") != std::string::npos);
    CHECK(run.output.find("check value_matches_gamma = pass") !=
          std::string::npos);
    CHECK(run.output.find("check trajectory_matches_power = pass") !=
          std::string::npos);
    CHECK(run.output.find("value = 0.886226925452757") != std::string::npos);

    CHECK(run_cli("example1 --alpha 1.5").exit_code == 2);
    CHECK(run_cli("example1").exit_code == 2);
    CHECK(run_cli("example1 --alpha 0.5 --m -1").exit_code == 2);
}

TEST_CASE("the obstruction command reports both verdicts with exit zero") {
    const RunResult low = run_cli("example2 --alpha 0.5");
    CHECK(low.exit_code == 0);
    CHECK(low.output.find("no minimizer in F") != std::string::npos);
    CHECK(low.output.find("forced_k = 0") != std::string::npos);
    const std::string marker = "divergent_sample_value = ";
    const std::size_t pos = low.output.find(marker);
    REQUIRE(pos != std::string::npos);
    const double sample =
        std::strtod(low.output.c_str() + pos + marker.size(), nullptr);
    CHECK(sample == doctest::Approx(10.0).epsilon(1e-12));

    const RunResult one = run_cli("example2 --alpha 1.0");
    CHECK(one.exit_code == 0);
    CHECK(one.output.find("minimizer y(t) = t") != std::string::npos);
    CHECK(one.output.find("value = 1") != std::string::npos);

    CHECK(run_cli("example2 --alpha 0").exit_code == 2);
}

TEST_CASE("sweep writes deterministic CSV with accurate rows") {
    const char* path_a = "/tmp/fracvar_test_sweep_a.csv";
    const char* path_b = "/tmp/fracvar_test_sweep_b.csv";
    const std::string args = "sweep --alphas 0.25,0.5,0.75,1.0 --out ";
    CHECK(run_cli(args + path_a).exit_code == 0);
    CHECK(run_cli(args + path_b).exit_code == 0);

    const std::string csv = slurp(path_a);
    CHECK(csv == slurp(path_b));
    CHECK(csv.find('\r') == std::string::npos);

    const std::vector<std::string> lines = split_lines(csv);
    REQUIRE(lines.size() == 5);
    CHECK(lines[0] ==
          "alpha,value,gamma_alpha_plus_1,abs_error,residual_max_deviation,"
          "converged");
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const std::vector<std::string> fields = split_fields(lines[i]);
        REQUIRE(fields.size() == 6);
        CHECK(std::strtod(fields[3].c_str(), nullptr) <= 1e-8);
        CHECK(fields[5] == "true");
    }
    std::remove(path_a);
    std::remove(path_b);
}

TEST_CASE("sweep handles empty lists and rejects bad orders") {
    const char* path = "/tmp/fracvar_test_sweep_empty.csv";
    CHECK(run_cli(std::string("sweep --alphas \"\" --out ") + path)
              .exit_code == 0);
    const std::vector<std::string> lines = split_lines(slurp(path));
    REQUIRE(lines.size() == 1);
    CHECK(lines[0].rfind("alpha,", 0) == 0);
    std::remove(path);

    CHECK(run_cli("sweep --alphas 0.5,0 --out /tmp/unused.csv").exit_code ==
          2);
    CHECK(run_cli("sweep --alphas 0.5,oops --out /tmp/unused.csv")
              .exit_code == 2);
    CHECK(run_cli("sweep --alphas 0.5 --out /no_such_dir_fracvar/x.csv")
              .exit_code == 3);
}

TEST_CASE("verify suites surface their verdicts") {
    const RunResult byparts = run_cli("verify --suite byparts");
    CHECK(byparts.exit_code == 0);
    CHECK(byparts.output.find("property byparts_canonical = pass") !=
          std::string::npos);
    CHECK(byparts.output.find("suite = pass") != std::string::npos);

    CHECK(run_cli("verify --suite nope").exit_code == 2);
}

TEST_CASE("solve round-trips problem files and locates parse failures") {
    const char* spec_path = "/tmp/fracvar_test_spec.txt";
    const char* out_path = "/tmp/fracvar_test_result.txt";
    {
        std::ofstream spec(spec_path, std::ios::binary);
        spec << "a = 0\nb = 1\nalpha = 0.5\ny_a = 0\ny_b = 1\n"
                "lagrangian = v2\n";
    }
    const RunResult good = run_cli(std::string("solve --spec ") + spec_path +
                                   " --out " + out_path);
    CHECK(good.exit_code == 0);
    CHECK(good.output.find("converged = true") != std::string::npos);
    const std::string doc = slurp(out_path);
    CHECK(doc.find("converged = true") != std::string::npos);
    const double v2_value = result_file_value(out_path);
    CHECK(v2_value == doctest::Approx(0.88622692545275801).epsilon(1e-12));

    {
        std::ofstream spec(spec_path, std::ios::binary);
        spec << "a = 0\nb = 1\nalpha = 0.5\ny_a = 0\ny_b = 1\n"
                "lagrangian = expr: v^2 + 0*u\n";
    }
    const char* expr_out = "/tmp/fracvar_test_result_expr.txt";
    CHECK(run_cli(std::string("solve --spec ") + spec_path + " --out " +
                  expr_out)
              .exit_code == 0);
    CHECK(result_file_value(expr_out) ==
          doctest::Approx(v2_value).epsilon(1e-9));
    std::remove(expr_out);

    {
        std::ofstream spec(spec_path, std::ios::binary);
        spec << "a = 0\nb = 1\nalpha = half\ny_a = 0\ny_b = 1\n"
                "lagrangian = v2\n";
    }
    const RunResult bad = run_cli(std::string("solve --spec ") + spec_path +
                                  " --out " + out_path);
    CHECK(bad.exit_code == 2);
    CHECK(bad.output.find("line 3") != std::string::npos);

    CHECK(run_cli(std::string("solve --spec /tmp/fracvar_gone.txt --out ") +
                  out_path)
              .exit_code == 3);
    std::remove(spec_path);
    std::remove(out_path);
}

TEST_CASE("the quadrature override is validated before any work") {
    CHECK(run_cli("verify --suite lemma", "FRACVAR_QUAD_N=abc").exit_code ==
          2);
    const RunResult ok =
        run_cli("example1 --alpha 0.5", "FRACVAR_QUAD_N=64");
    CHECK(ok.exit_code == 0);
    CHECK(ok.output.find("result = pass") != std::string::npos);
}

TEST_CASE("usage errors never masquerade as success") {
    CHECK(run_cli("").exit_code == 2);
    CHECK(run_cli("unknown-command").exit_code == 2);
    CHECK(run_cli("sweep --alphas 0.5").exit_code == 2);
    CHECK(run_cli("solve --spec /tmp/x.txt").exit_code == 2);
    const RunResult help = run_cli("--help");
    CHECK(help.exit_code == 0);
    CHECK(help.output.find("example1") != std::string::npos);
}
