#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const std::string kCli = IFCR_CLI_PATH;

struct RunResult {
    int exitCode = -1;
    std::string output;  // stdout
    std::string errors;  // stderr
};

fs::path scratch_dir() {
    static fs::path dir = [] {
        fs::path d = fs::temp_directory_path() / "ifcr_cli_tests";
        fs::remove_all(d);
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

RunResult run_cli(const std::string& args) {
    static int counter = 0;
    const fs::path outFile = scratch_dir() / ("stdout_" + std::to_string(counter) + ".txt");
    const fs::path errFile = scratch_dir() / ("stderr_" + std::to_string(counter) + ".txt");
    ++counter;
    const std::string cmd =
        kCli + " " + args + " > " + outFile.string() + " 2> " + errFile.string();
    const int status = std::system(cmd.c_str());
    RunResult res;
    res.exitCode = WEXITSTATUS(status);
    res.output = slurp(outFile);
    res.errors = slurp(errFile);
    return res;
}

fs::path write_file(const std::string& name, const std::string& content) {
    const fs::path p = scratch_dir() / name;
    std::ofstream out(p, std::ios::binary);
    out << content;
    return p;
}

fs::path gaussian_spec(const std::string& name, double h12, double h21) {
    json spec{{"kind", "gaussian"}, {"h11", 1.0}, {"h22", 1.0}, {"h1c", 1.0},
              {"h2c", 1.0},         {"h12", h12}, {"h21", h21}};
    return write_file(name, spec.dump());
}

int count_lines(const std::string& text) {
    int lines = 0;
    for (char c : text)
        if (c == '\n') ++lines;
    return lines;
}

}  // namespace

TEST_CASE("gaussian-check classifies the strong-interference example") {
    const fs::path spec = gaussian_spec("strong.json", 2.0, 0.5);
    const RunResult res = run_cli("gaussian-check --channel " + spec.string());
    REQUIRE(res.exitCode == 0);
    const json rep = json::parse(res.output);
    CHECK(rep["user1"]["label"] == "STRONG");
    CHECK(std::abs(rep["user1"]["strongMargin"].get<double>() + 1.0) <= 1e-9);
}

TEST_CASE("gaussian-check classifies the very-strong example") {
    const fs::path spec = gaussian_spec("very.json", 1.0, 2.0);
    const RunResult res = run_cli("gaussian-check --channel " + spec.string());
    REQUIRE(res.exitCode == 0);
    const json rep = json::parse(res.output);
    CHECK(rep["user1"]["label"] == "VERY_STRONG");
}

TEST_CASE("gaussian-check names the missing field and exits 2") {
    const fs::path spec = write_file(
        "missing.json", R"({"kind":"gaussian","h11":1,"h1c":1,"h2c":1,"h12":1,"h21":1})");
    const RunResult res = run_cli("gaussian-check --channel " + spec.string());
    CHECK(res.exitCode == 2);
    CHECK(res.errors.find("h22") != std::string::npos);
}

TEST_CASE("gaussian-check rejects a discrete spec with exit 2") {
    const fs::path spec = write_file("disc_for_check.json",
                                     R"({"kind":"discrete","sizes":[1,1,1,1,1],"t":[1.0]})");
    const RunResult res = run_cli("gaussian-check --channel " + spec.string());
    CHECK(res.exitCode == 2);
}

TEST_CASE("gaussian-map emits one row per cell plus a header") {
    const RunResult res = run_cli("gaussian-map --h12 0:10:20 --h21 0:10:20");
    REQUIRE(res.exitCode == 0);
    CHECK(count_lines(res.output) == 20 * 20 + 1);
    CHECK(res.output.rfind("h12,h21,label,strongMargin,veryStrongMargin\n", 0) == 0);
}

TEST_CASE("gaussian-map output does not depend on the parallelism degree") {
    const RunResult serial = run_cli("gaussian-map --h12 0:10:15 --h21 0:10:15 --jobs 1");
    const RunResult parallel = run_cli("gaussian-map --h12 0:10:15 --h21 0:10:15 --jobs 8");
    REQUIRE(serial.exitCode == 0);
    REQUIRE(parallel.exitCode == 0);
    CHECK(serial.output == parallel.output);
}

TEST_CASE("gaussian-map rejects reversed ranges with exit 2") {
    const RunResult res = run_cli("gaussian-map --h12 10:0:20 --h21 0:10:20");
    CHECK(res.exitCode == 2);
}

TEST_CASE("gaussian-region frontier for a relay-free channel is a single pentagon") {
    json spec{{"kind", "gaussian"}, {"h11", 1.0}, {"h22", 1.0}, {"h1c", 0.0},
              {"h2c", 0.0},         {"h12", 0.5}, {"h21", 0.5}};
    const fs::path specPath = write_file("norelay.json", spec.dump());
    const RunResult res =
        run_cli("gaussian-region --channel " + specPath.string() + " --beta-density 16");
    REQUIRE(res.exitCode == 0);
    // r1 = r2 = C(1) = 1: the frontier starts at (1, 0)
    CHECK(res.output.rfind("R1,R2\n1,0\n", 0) == 0);
}

TEST_CASE("gaussian-region frontier hits the single-user optimum") {
    const fs::path spec = gaussian_spec("unit.json", 1.0, 1.0);
    const RunResult res =
        run_cli("gaussian-region --channel " + spec.string() + " --beta-density 512");
    REQUIRE(res.exitCode == 0);
    std::istringstream in(res.output);
    std::string header, firstRow;
    std::getline(in, header);
    std::getline(in, firstRow);
    const double r1 = std::stod(firstRow.substr(0, firstRow.find(',')));
    CHECK(std::abs(r1 - std::log2(5.0)) <= 1e-9);
}

TEST_CASE("gaussian-region support converges as the split grid doubles") {
    const fs::path spec = gaussian_spec("unit2.json", 1.0, 1.0);
    auto support_from_csv = [](const std::string& csv, double w1, double w2) {
        std::istringstream in(csv);
        std::string line;
        std::getline(in, line);  // header
        double best = 0.0;
        while (std::getline(in, line)) {
            const auto comma = line.find(',');
            const double r1 = std::stod(line.substr(0, comma));
            const double r2 = std::stod(line.substr(comma + 1));
            best = std::max(best, w1 * r1 + w2 * r2);
        }
        return best;
    };
    const RunResult a =
        run_cli("gaussian-region --channel " + spec.string() + " --beta-density 2048");
    const RunResult b =
        run_cli("gaussian-region --channel " + spec.string() + " --beta-density 4096");
    REQUIRE(a.exitCode == 0);
    REQUIRE(b.exitCode == 0);
    for (double w1 : {0.0, 0.25, 0.5, 0.75, 1.0}) {
        const double sa = support_from_csv(a.output, w1, 1.0 - w1);
        const double sb = support_from_csv(b.output, w1, 1.0 - w1);
        CHECK(std::abs(sa - sb) < 1e-6);
    }
}

TEST_CASE("discrete-verify passes on the very-strong fixture") {
    const RunResult res = run_cli("discrete-verify --fixture VERY_STRONG --samples 200 --seed 5");
    REQUIRE(res.exitCode == 0);
    const json rep = json::parse(res.output);
    CHECK(rep["allPass"] == true);
    CHECK(rep["conditions"]["eq5Min"].get<double>() >= -1e-12);
    CHECK(rep["conditions"]["eq10Min"].get<double>() >= -1e-12);
}

TEST_CASE("discrete-verify reports the expected failure on the strong-only fixture") {
    const RunResult res = run_cli("discrete-verify --fixture STRONG_ONLY --samples 200 --seed 5");
    REQUIRE(res.exitCode == 0);  // the negative margin is the expected outcome
    const json rep = json::parse(res.output);
    CHECK(rep["conditions"]["eq10Min"].get<double>() < 0.0);
    bool sawWitnessProperty = false;
    for (const auto& p : rep["properties"])
        if (p["name"] == "eq10-negative-witness") {
            sawWitnessProperty = true;
            CHECK(p["pass"] == true);
        }
    CHECK(sawWitnessProperty);
}

TEST_CASE("discrete-verify rejects a tampered channel with exit 2") {
    json spec{{"kind", "discrete"}, {"sizes", {1, 1, 1, 2, 1}}, {"t", {0.45, 0.45}}};
    const fs::path specPath = write_file("tampered.json", spec.dump());
    const RunResult res = run_cli("discrete-verify --channel " + specPath.string());
    CHECK(res.exitCode == 2);
}

TEST_CASE("discrete-verify accepts an explicit channel and distribution") {
    json chSpec{{"kind", "discrete"}, {"sizes", {2, 2, 2, 2, 2}}, {"t", json::array()}};
    // y1 = x1, y2 = x2, relay ignored
    std::vector<double> t(2 * 2 * 2 * 2 * 2, 0.0);
    auto idx = [](int y1, int y2, int x1, int x2, int xc) {
        return ((((y1 * 2 + y2) * 2 + x1) * 2 + x2) * 2 + xc);
    };
    for (int x1 = 0; x1 < 2; ++x1)
        for (int x2 = 0; x2 < 2; ++x2)
            for (int xc = 0; xc < 2; ++xc) t[idx(x1, x2, x1, x2, xc)] = 1.0;
    chSpec["t"] = t;
    const fs::path chPath = write_file("plain.json", chSpec.dump());
    json distSpec{{"p1", {0.5, 0.5}},
                  {"p2", {0.25, 0.75}},
                  {"pc", {0.5, 0.5, 0.5, 0.5, 0.5, 0.5, 0.5, 0.5}}};
    const fs::path distPath = write_file("dist.json", distSpec.dump());
    const RunResult res = run_cli("discrete-verify --channel " + chPath.string() + " --dist " +
                                  distPath.string() + " --samples 50 --seed 3");
    REQUIRE(res.exitCode == 0);
    const json rep = json::parse(res.output);
    bool sawAtDist = false;
    for (const auto& p : rep["properties"])
        if (p["name"] == "inner-within-outer-at-dist") {
            sawAtDist = true;
            CHECK(p["pass"] == true);
        }
    CHECK(sawAtDist);
}

TEST_CASE("discrete-verify output is byte-stable for a fixed seed") {
    const std::string args = "discrete-verify --fixture STRONG_ONLY --samples 100 --seed 77";
    const RunResult a = run_cli(args);
    const RunResult b = run_cli(args);
    REQUIRE(a.exitCode == 0);
    CHECK(a.output == b.output);
}

TEST_CASE("rate base flag leaves power-unit margins unchanged") {
    const fs::path spec = gaussian_spec("basecheck.json", 2.0, 0.5);
    const RunResult bits = run_cli("gaussian-check --channel " + spec.string());
    const RunResult nats = run_cli("gaussian-check --channel " + spec.string() + " --base e");
    REQUIRE(bits.exitCode == 0);
    REQUIRE(nats.exitCode == 0);
    CHECK(json::parse(bits.output)["user1"]["strongMargin"] ==
          json::parse(nats.output)["user1"]["strongMargin"]);
}

TEST_CASE("unknown flags exit with the input-error code") {
    const RunResult res = run_cli("gaussian-map --definitely-not-a-flag 1");
    CHECK(res.exitCode == 2);
}

TEST_CASE("missing input file exits with the input-error code") {
    const RunResult res = run_cli("gaussian-check --channel /nonexistent/nope.json");
    CHECK(res.exitCode == 2);
}
