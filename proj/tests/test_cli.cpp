#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include <gtest/gtest.h>

namespace fs = std::filesystem;

namespace {

struct Outcome {
    int code = -1;
    std::string out; ///< stdout and stderr together
};

Outcome qwall(const std::string& args) {
    const std::string cmd = std::string("\"") + QWALL_CLI_PATH + "\" " + args + " 2>&1";
    Outcome r;
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) {
        return r;
    }
    std::array<char, 4096> buf{};
    while (const std::size_t n = std::fread(buf.data(), 1, buf.size(), pipe)) {
        r.out.append(buf.data(), n);
    }
    const int status = pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

fs::path scratch(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / ("qwall_cli_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

void write(const fs::path& p, const std::string& text) { std::ofstream(p) << text; }

const std::string example = std::string(QWALL_SOURCE_DIR) + "/configs/example.yaml";

} // namespace

TEST(Cli, ListsPresets) {
    const Outcome r = qwall("list-presets");
    EXPECT_EQ(r.code, 0);
    for (const char* name : {"fig1-initial", "fig4-force-long", "fig7-force-u"}) {
        EXPECT_NE(r.out.find(name), std::string::npos) << name;
    }
}

TEST(Cli, UsageErrorsExitTwo) {
    EXPECT_EQ(qwall("").code, 2);
    EXPECT_EQ(qwall("frobnicate").code, 2);
    EXPECT_EQ(qwall("run").code, 2);
    EXPECT_EQ(qwall("run --preset fig1-initial --config x.yaml").code, 2);
    EXPECT_EQ(qwall("run --preset fig1-initial --threads 0").code, 2);
    const Outcome r = qwall("run --preset fig9");
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.out.find("fig7-force-u"), std::string::npos);
}

TEST(Cli, ValidatesConfigs) {
    const Outcome ok = qwall("validate --config \"" + example + "\"");
    EXPECT_EQ(ok.code, 0);
    EXPECT_NE(ok.out.find("ok: example (8 curves)"), std::string::npos);

    const fs::path dir = scratch("validate");
    write(dir / "bad.yaml", "u: quick\n");
    EXPECT_EQ(qwall("validate --config \"" + (dir / "bad.yaml").string() + "\"").code, 2);
    write(dir / "unknown.yaml", "speed: 3\n");
    const Outcome unknown = qwall("validate --config \"" + (dir / "unknown.yaml").string() + "\"");
    EXPECT_EQ(unknown.code, 2);
    EXPECT_NE(unknown.out.find("speed"), std::string::npos);
    write(dir / "range.yaml", "sigma0: -1\n");
    EXPECT_EQ(qwall("validate --config \"" + (dir / "range.yaml").string() + "\"").code, 2);
    EXPECT_EQ(qwall("validate --config \"" + (dir / "missing.yaml").string() + "\"").code, 3);
    fs::remove_all(dir);
}

TEST(Cli, UnwritableOutputExitsThree) {
    const fs::path dir = scratch("blocked");
    write(dir / "file", "x");
    EXPECT_EQ(qwall("run --preset fig1-initial --out \"" + (dir / "file" / "sub").string() + "\"").code, 3);
    fs::remove_all(dir);
}

TEST(Cli, NumericFailureExitsFour) {
    const fs::path dir = scratch("numeric");
    write(dir / "coarse.yaml", "computations: pmean\nquad_panels: 200\nt1: 0.0001\nsamples: 2\n");
    const Outcome r = qwall("run --config \"" + (dir / "coarse.yaml").string() + "\" --out \"" +
                            (dir / "out").string() + "\"");
    EXPECT_EQ(r.code, 4);
    EXPECT_NE(r.out.find("error: observables/"), std::string::npos) << r.out;
    fs::remove_all(dir);
}

TEST(Cli, RunsAPresetWithPlots) {
    const fs::path dir = scratch("fig7");
    const Outcome r = qwall("run --preset fig7-force-u --svg --threads 3 --out \"" + dir.string() + "\"");
    ASSERT_EQ(r.code, 0) << r.out;
    for (const char* stem : {"force_tbs_dynamic_u20pi", "force_tbs_dynamic_u100pi", "force_tbs_dynamic_u200pi",
                             "force_tgp_dynamic_u20pi", "force_tgp_dynamic_u100pi", "force_tgp_dynamic_u200pi"}) {
        EXPECT_TRUE(fs::exists(dir / (std::string(stem) + ".csv"))) << stem;
        EXPECT_TRUE(fs::exists(dir / (std::string(stem) + ".svg"))) << stem;
    }
    EXPECT_TRUE(fs::exists(dir / "run_manifest.json"));
    fs::remove_all(dir);
}
