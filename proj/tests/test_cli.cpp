#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#ifdef _WIN32
#error "the CLI test driver assumes a POSIX shell"
#endif
#include <sys/wait.h>

namespace {

int run(const std::string& args, const std::string& stdout_path = "/dev/null") {
    std::string cmd = std::string(NETSPREAD_CLI_PATH) + " " + args + " > " + stdout_path +
                      " 2> /dev/null";
    int status = std::system(cmd.c_str());
    REQUIRE(status != -1);
    REQUIRE(WIFEXITED(status));
    return WEXITSTATUS(status);
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    out << content;
}

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> lines;
    std::istringstream is(text);
    for (std::string line; std::getline(is, line);) lines.push_back(line);
    return lines;
}

struct TempFile {
    std::string path;
    explicit TempFile(std::string p) : path(std::move(p)) {}
    ~TempFile() { std::remove(path.c_str()); }
};

const char* kCompleteConfig = R"({
    "network": {"family": "complete", "M": 4, "p": 0.5, "q": 2.0, "I0": 0.0},
    "horizon": 2.0, "grid": 5, "replicates": 2000, "seed": 11
})";

} // namespace

TEST_CASE("simulate writes a CSV with one row per grid point") {
    TempFile cfg("cli_sim.json"), out("cli_sim.csv");
    write_file(cfg.path, kCompleteConfig);
    CHECK(run("simulate --config " + cfg.path + " --out " + out.path) == 0);
    auto lines = lines_of(slurp(out.path));
    REQUIRE(lines.size() == 6);
    CHECK(lines[0] == "t,mean_f,std_err");
    // Five comma-separated fields is a format error; expect exactly three.
    for (size_t i = 1; i < lines.size(); ++i)
        CHECK(std::count(lines[i].begin(), lines[i].end(), ',') == 2);
}

TEST_CASE("same seed gives byte-identical output, new seed does not") {
    TempFile cfg("cli_det.json"), a("cli_a.csv"), b("cli_b.csv"), c("cli_c.csv");
    write_file(cfg.path, kCompleteConfig);
    CHECK(run("simulate --config " + cfg.path + " --out " + a.path) == 0);
    CHECK(run("simulate --config " + cfg.path + " --out " + b.path) == 0);
    CHECK(run("simulate --config " + cfg.path + " --seed 12 --out " + c.path) == 0);
    CHECK(slurp(a.path) == slurp(b.path));
    CHECK(slurp(a.path) != slurp(c.path));
}

TEST_CASE("master: exact and reduced backends agree") {
    TempFile cfg("cli_master.json"), exact("cli_exact.csv"), reduced("cli_reduced.csv");
    write_file(cfg.path, kCompleteConfig);
    CHECK(run("master --backend exact --config " + cfg.path + " --out " + exact.path) == 0);
    CHECK(run("master --backend reduced --config " + cfg.path + " --out " + reduced.path) == 0);
    auto le = lines_of(slurp(exact.path));
    auto lr = lines_of(slurp(reduced.path));
    REQUIRE(le.size() == lr.size());
    CHECK(le[0].rfind("t,f", 0) == 0);
    for (size_t i = 1; i < le.size(); ++i) {
        double te, fe, tr, fr;
        REQUIRE(std::sscanf(le[i].c_str(), "%lf,%lf", &te, &fe) == 2);
        REQUIRE(std::sscanf(lr[i].c_str(), "%lf,%lf", &tr, &fr) == 2);
        CHECK(te == tr);
        CHECK(fe == doctest::Approx(fr).epsilon(1e-7));
    }
}

TEST_CASE("explicit --grid times appear verbatim in the first column") {
    TempFile cfg("cli_grid.json"), out("cli_grid.csv");
    write_file(cfg.path, kCompleteConfig);
    CHECK(run("master --config " + cfg.path + " --grid 0.25,0.5,1 --out " + out.path) == 0);
    auto lines = lines_of(slurp(out.path));
    REQUIRE(lines.size() == 4);
    CHECK(lines[1].rfind("0.25,", 0) == 0);
    CHECK(lines[2].rfind("0.5,", 0) == 0);
    CHECK(lines[3].rfind("1,", 0) == 0);
}

TEST_CASE("missing network object is a config error (exit 2)") {
    TempFile cfg("cli_nonet.json");
    write_file(cfg.path, R"({"horizon": 2.0})");
    CHECK(run("simulate --config " + cfg.path) == 2);
    CHECK(run("master --config " + cfg.path) == 2);
    CHECK(run("simulate --config cli_no_such_file.json") == 2);
}

TEST_CASE("exact solver over the node cap exits with the cap code (exit 3)") {
    TempFile cfg("cli_cap.json");
    write_file(cfg.path, R"({
        "network": {"family": "complete", "M": 18, "p": 0.5, "q": 2.0},
        "horizon": 1.0, "grid": 3
    })");
    CHECK(run("master --backend exact --config " + cfg.path) == 3);
    // The reduced backend has no such cap.
    CHECK(run("master --backend reduced --config " + cfg.path) == 0);
}

TEST_CASE("sweep emits f_M columns in list order plus the limit") {
    TempFile cfg("cli_sweep.json"), out("cli_sweep.csv");
    write_file(cfg.path, R"({
        "network": {"family": "complete", "M": 2, "p": 0.1, "q": 1.0},
        "horizon": 6.0, "grid": 10, "M_list": [2, 10, 30]
    })");
    CHECK(run("sweep --config " + cfg.path + " --out " + out.path) == 0);
    auto lines = lines_of(slurp(out.path));
    REQUIRE(lines.size() == 11);
    CHECK(lines[0] == "t,f_M2,f_M10,f_M30,f_limit");
    for (size_t i = 1; i < lines.size(); ++i) {
        double t, f2, f10, f30, fl;
        REQUIRE(std::sscanf(lines[i].c_str(), "%lf,%lf,%lf,%lf,%lf",
                            &t, &f2, &f10, &f30, &fl) == 5);
        CHECK(f2 < f10);
        CHECK(f10 < f30);
        CHECK(f30 < fl);
    }
}

TEST_CASE("limit family inference from the network") {
    TempFile cfg("cli_limit.json"), out("cli_limit.csv");
    write_file(cfg.path, R"({
        "network": {"family": "circle", "M": 6, "p": 0.2, "qL": 0.5, "qR": 0.5},
        "horizon": 3.0, "grid": 6
    })");
    CHECK(run("limit --config " + cfg.path + " --out " + out.path) == 0);
    CHECK(lines_of(slurp(out.path)).size() == 7);
    CHECK(run("limit --family compartmental --config " + cfg.path) == 2); // wrong family
}

TEST_CASE("verify subcommand emits JSON and exits 0 when checks pass") {
    TempFile out("cli_verify.json");
    CHECK(run("verify --suite equivalence --out " + out.path) == 0);
    auto text = slurp(out.path);
    CHECK(text.find("\"pass\": true") != std::string::npos);
    CHECK(text.find("si_bass_equivalence") != std::string::npos);
}
