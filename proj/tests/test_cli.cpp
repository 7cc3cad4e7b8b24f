#include <gtest/gtest.h>

#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

namespace {

namespace fs = std::filesystem;

fs::path scratch() {
    const fs::path dir = fs::temp_directory_path() / "spectra_cli_test";
    fs::create_directories(dir);
    return dir;
}

fs::path write_config(const std::string& name, const std::string& text) {
    const fs::path path = scratch() / (name + ".json");
    std::ofstream(path) << text;
    return path;
}

int run(const std::string& command, const fs::path& config, const fs::path& out) {
    const std::string line = std::string(SPECTRA_CLI) + " " + command + " --config " + config.string() + " --out " +
                             out.string() + " > /dev/null 2>&1";
    const int status = std::system(line.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string read(const fs::path& path) {
    std::ifstream in(path);
    std::ostringstream text;
    text << in.rdbuf();
    return text.str();
}

const char* kDisk = R"({"n":3,"outer":{"series":[1.0]},"inner":{"series":[0.3]},"t_samples":5,)"
                    R"("mesh":{"target_h":0.08,"refinement_levels":1}})";

TEST(Cli, ValidateExitCodes) {
    const fs::path out = scratch() / "validate";
    EXPECT_EQ(run("validate", write_config("ok", kDisk), out), 0);
    const auto bad = write_config("blocked", R"({"n":3,"outer":{"series":[1.0,-0.2]},"inner":{"series":[0.9]}})");
    EXPECT_EQ(run("validate", bad, out), 1);
    const auto report = nlohmann::json::parse(read(out / "report.json"));
    EXPECT_NE(report["error"]["message"].get<std::string>().find("free rotation"), std::string::npos);
    EXPECT_EQ(report["exit_code"].get<int>(), 1);
    EXPECT_EQ(run("validate", scratch() / "missing.json", out), 1);
}

TEST(Cli, SchrodingerNeedsAlpha) {
    EXPECT_EQ(run("schrodinger", write_config("no_alpha", kDisk), scratch() / "schr"), 1);
}

TEST(Cli, UnknownCommandIsInputError) {
    const std::string line = std::string(SPECTRA_CLI) + " frobnicate > /dev/null 2>&1";
    const int status = std::system(line.c_str());
    EXPECT_EQ(WEXITSTATUS(status), 1);
}

TEST(Cli, DiskSweepWritesArtifactsDeterministically) {
    const auto cfg = write_config("disk", kDisk);
    const fs::path a = scratch() / "sweep_a";
    const fs::path b = scratch() / "sweep_b";
    ASSERT_EQ(run("sweep", cfg, a), 0);
    ASSERT_EQ(run("sweep", cfg, b), 0);
    EXPECT_TRUE(fs::exists(a / "lambda_vs_t.svg"));
    EXPECT_TRUE(fs::exists(a / "report.json"));
    const std::string csv = read(a / "sweep.csv");
    EXPECT_EQ(csv.rfind("t,lambda,dlambda_hadamard,dlambda_fd,mesh_h,residual,iterations\n", 0), 0u);
    EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 6);
    EXPECT_EQ(csv, read(b / "sweep.csv"));
    const auto report = nlohmann::json::parse(read(a / "report.json"));
    EXPECT_TRUE(report["report"]["all_passed"].get<bool>());
}

TEST(Cli, OracleOnConcentricDisks) {
    const auto cfg = write_config("oracle", R"({"n":3,"outer":{"series":[1.0]},"inner":{"series":[0.3]},)"
                                            R"("mesh":{"target_h":0.04,"refinement_levels":1}})");
    EXPECT_EQ(run("oracle", cfg, scratch() / "oracle"), 0);
    const auto report = nlohmann::json::parse(read(scratch() / "oracle" / "report.json"));
    EXPECT_NEAR(report["oracle"]["annulus_lambda"].get<double>(), 19.4692, 1e-3);
    const auto shaped = write_config("oracle_bad", R"({"n":3,"outer":{"series":[1.0,-0.2]},"inner":{"series":[0.3]}})");
    EXPECT_EQ(run("oracle", shaped, scratch() / "oracle_bad"), 1);
}

}  // namespace
