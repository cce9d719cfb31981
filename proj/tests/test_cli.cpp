#include <doctest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

// End-to-end checks of the command-line tool: exit codes, output files, and
// byte-identical reruns.

namespace {

struct RunResult {
    int exit_code;
    std::string output;
};

RunResult run(const std::string& args) {
    const std::string cmd = std::string(CURVNB_CLI_PATH) + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    std::array<char, 4096> buf;
    while (std::size_t n = fread(buf.data(), 1, buf.size(), pipe)) out.append(buf.data(), n);
    const int status = pclose(pipe);
    return {WEXITSTATUS(status), out};
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::filesystem::path scenario_dir() {
    return std::filesystem::path(CURVNB_SOURCE_DIR) / "scenarios";
}

}  // namespace

TEST_CASE("simulate: clean run exits 0 and writes the three outputs") {
    const auto out = std::filesystem::temp_directory_path() / "curvnb_cli_test_fp";
    std::filesystem::remove_all(out);
    const RunResult r = run("simulate " + (scenario_dir() / "tetrahedron.json").string() +
                            " --out-dir " + out.string());
    CHECK(r.exit_code == 0);
    CHECK(std::filesystem::exists(out / "tetrahedron_trajectory.csv"));
    CHECK(std::filesystem::exists(out / "tetrahedron_diagnostics.csv"));
    CHECK(std::filesystem::exists(out / "tetrahedron_summary.json"));
    const std::string summary = slurp(out / "tetrahedron_summary.json");
    CHECK(summary.find("\"stop\": \"reached_t_end\"") != std::string::npos);
}

TEST_CASE("simulate: singularity scenario exits 3 and still writes outputs") {
    const auto out = std::filesystem::temp_directory_path() / "curvnb_cli_test_sing";
    std::filesystem::remove_all(out);
    const RunResult r = run("simulate " + (scenario_dir() / "isosceles_m8m.json").string() +
                            " --out-dir " + out.string());
    CHECK(r.exit_code == 3);
    const std::string summary = slurp(out / "isosceles_m8m_summary.json");
    CHECK(summary.find("\"stop\": \"singularity_event\"") != std::string::npos);
    CHECK(summary.find("collision_antipodal") != std::string::npos);
}

TEST_CASE("simulate: invalid scenario exits 2") {
    const auto bad = std::filesystem::temp_directory_path() / "curvnb_bad_scenario.json";
    std::ofstream(bad) << R"({"kappa": 1.0, "t_end": 1.0, "bodies": [
        {"mass": 1.0, "position": [1.01, 0, 0], "velocity": [0, 0, 0]}]})";
    const RunResult r = run("simulate " + bad.string());
    CHECK(r.exit_code == 2);
    CHECK(r.output.find("invalid scenario") != std::string::npos);
}

TEST_CASE("simulate: identical scenario and config give byte-identical outputs") {
    const auto out1 = std::filesystem::temp_directory_path() / "curvnb_cli_det1";
    const auto out2 = std::filesystem::temp_directory_path() / "curvnb_cli_det2";
    std::filesystem::remove_all(out1);
    std::filesystem::remove_all(out2);
    const std::string sc = (scenario_dir() / "lagrangian_s2.json").string();
    CHECK(run("simulate " + sc + " --out-dir " + out1.string()).exit_code == 0);
    CHECK(run("simulate " + sc + " --out-dir " + out2.string()).exit_code == 0);
    for (const char* f : {"lagrangian_s2_trajectory.csv", "lagrangian_s2_diagnostics.csv",
                          "lagrangian_s2_summary.json"})
        CHECK(slurp(out1 / f) == slurp(out2 / f));
}

TEST_CASE("solve: root counts through the CLI") {
    const RunResult r = run("solve --equation eq4 --target 4");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("\"count\": 4") != std::string::npos);
    const RunResult r7 = run("solve --equation eq7 --target 0.7954951288348660");
    CHECK(r7.exit_code == 0);
    CHECK(r7.output.find("\"count\": 2") != std::string::npos);  // one positive, one mirror
}

TEST_CASE("scan: tabulates counts over targets") {
    const RunResult r = run("scan --equation eq4 --targets 2.5 4 5");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("\"count\": 0") != std::string::npos);
    CHECK(r.output.find("\"count\": 4") != std::string::npos);
    CHECK(r.output.find("\"count\": 2") != std::string::npos);
}

TEST_CASE("verify: theorem aliases resolve and pass") {
    CHECK(run("verify thpar").exit_code == 0);
    CHECK(run("verify rengon").exit_code == 0);
    const RunResult unknown = run("verify not-a-theorem");
    CHECK(unknown.exit_code == 2);
    CHECK(unknown.output.find("known ids") != std::string::npos);
}

TEST_CASE("verify: a failing check exits 1") {
    // root-counts carries the one assertion known to disagree with the
    // equation it tests (see the check's printed evidence), which makes it a
    // stable probe for the failure exit path.
    const RunResult r = run("verify root-counts");
    CHECK(r.exit_code == 1);
    CHECK(r.output.find("FAIL") != std::string::npos);
}

TEST_CASE("batch: runs scenarios in parallel") {
    const auto out = std::filesystem::temp_directory_path() / "curvnb_cli_batch";
    std::filesystem::remove_all(out);
    const RunResult r = run("batch " + (scenario_dir() / "tetrahedron.json").string() + " " +
                            (scenario_dir() / "lagrangian_s2.json").string() + " --jobs 2" +
                            " --out-dir " + out.string());
    CHECK(r.exit_code == 0);
    CHECK(std::filesystem::exists(out / "tetrahedron_summary.json"));
    CHECK(std::filesystem::exists(out / "lagrangian_s2_summary.json"));
}
