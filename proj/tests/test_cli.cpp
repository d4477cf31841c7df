#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <doctest.h>
#include <json.hpp>

#include <sys/wait.h>

namespace fs = std::filesystem;

namespace {

int run_cli(const std::string& args, const fs::path& log)
{
    const std::string cmd = std::string("\"") + PAIRSIM_CLI + "\" " + args + " > \"" + log.string() + "\" 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p)
{
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct TempDir {
    fs::path path;
    TempDir() : path(fs::temp_directory_path() / ("pairsim_cli_" + std::to_string(::getpid())))
    {
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

void write(const fs::path& p, const std::string& text)
{
    std::ofstream(p) << text;
}

} // namespace

TEST_CASE("cli lists presets")
{
    const TempDir tmp;
    CHECK(run_cli("list", tmp.path / "log") == 0);
    const auto out = slurp(tmp.path / "log");
    CHECK(out.find("fig2b") != std::string::npos);
    CHECK(out.find("fig7d") != std::string::npos);
}

TEST_CASE("cli exit codes for bad input")
{
    const TempDir tmp;
    write(tmp.path / "bad.ini", "[pump]\ncolour = red\n");
    CHECK(run_cli("run " + (tmp.path / "bad.ini").string(), tmp.path / "log") == 2);
    CHECK(slurp(tmp.path / "log").find("pump.colour") != std::string::npos);
    CHECK(run_cli("run " + (tmp.path / "missing.ini").string(), tmp.path / "log") == 2);
    CHECK(run_cli("preset nosuch", tmp.path / "log") == 2);
    CHECK(run_cli("frobnicate", tmp.path / "log") == 2);
    write(tmp.path / "noscan.ini", "[run]\ngrid_points = 60\n");
    CHECK(run_cli("scan " + (tmp.path / "noscan.ini").string(), tmp.path / "log") == 2);
}

TEST_CASE("cli reports an exhausted photon cutoff as a numerical failure")
{
    const TempDir tmp;
    write(tmp.path / "hot.ini", "[atom]\nn_th_k = 0.5\n[run]\ngrid_points = 60\nt_end = 0.5\n"
                                "[verify]\ncutoff_k = 1\ncutoff_q = 1\n");
    CHECK(run_cli("verify " + (tmp.path / "hot.ini").string(), tmp.path / "log") == 3);
}

TEST_CASE("cli run writes a series and a manifest")
{
    const TempDir tmp;
    write(tmp.path / "demo.ini", "[atom]\nrho_bb = 1/2\nrho_cc = 1/2\n"
                                 "[pump]\nshape = cw\nomega = 10\n"
                                 "[control]\nshape = cw\nomega = 10\n"
                                 "[run]\nt_end = 1\n");
    const std::string out = "--out " + tmp.path.string() + " --grid-points 80";
    REQUIRE(run_cli(out + " run " + (tmp.path / "demo.ini").string(), tmp.path / "log") == 0);
    const auto csv = slurp(tmp.path / "demo.csv");
    CHECK(csv.find("# run.grid_points = 80") != std::string::npos);
    const auto manifest = nlohmann::json::parse(slurp(tmp.path / "demo.manifest.json"));
    CHECK(manifest.at("name") == "demo");
    CHECK(manifest.at("files").at(0) == "demo.csv");
}

TEST_CASE("cli scan writes one row per value")
{
    const TempDir tmp;
    write(tmp.path / "sweep.ini", "[atom]\nrho_cc = 1\n[pump]\nshape = cw\nomega = 5\n"
                                  "[run]\nt_end = 1\ngrid_points = 60\n"
                                  "[scan]\nparameter = pump.omega\nvalues = 2, 4, 6\n");
    REQUIRE(run_cli("--out " + tmp.path.string() + " scan " + (tmp.path / "sweep.ini").string(),
                    tmp.path / "log") == 0);
    std::istringstream in(slurp(tmp.path / "sweep_scan.csv"));
    std::string line;
    int data = 0;
    while (std::getline(in, line)) {
        if (!line.empty() && line[0] != '#') {
            ++data;
        }
    }
    CHECK(data == 4); // header + three values
    CHECK(fs::exists(tmp.path / "sweep_2.csv"));
}
