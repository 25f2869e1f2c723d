// End-to-end tests driving the installed command-line binary.
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>

#include "json.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct CliResult {
    int code = -1;
    std::string out;
    std::string err;
};

fs::path tmp_dir() {
    fs::path dir(SECRATE_TEST_TMPDIR);
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void spit(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    out << content;
}

CliResult run_cli(const std::string& args) {
    static int counter = 0;
    fs::path dir = tmp_dir();
    fs::path out = dir / ("stdout_" + std::to_string(counter) + ".txt");
    fs::path err = dir / ("stderr_" + std::to_string(counter) + ".txt");
    ++counter;
    std::string cmd = std::string("\"") + SECRATE_CLI_PATH + "\" " + args +
                      " > \"" + out.string() + "\" 2> \"" + err.string() +
                      "\"";
    int raw = std::system(cmd.c_str());
    CliResult result;
    if (raw == -1)
        result.code = -1;
    else if (WIFEXITED(raw))
        result.code = WEXITSTATUS(raw);
    else
        result.code = -2;
    result.out = slurp(out);
    result.err = slurp(err);
    return result;
}

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> lines;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) lines.push_back(line);
    return lines;
}

const char* kConstantScheme =
    "{\"variables\":[{\"name\":\"Q\",\"size\":1},{\"name\":\"U1\",\"size\":1},"
    "{\"name\":\"U2\",\"size\":1},{\"name\":\"X\",\"size\":1},"
    "{\"name\":\"Y1\",\"size\":1},{\"name\":\"Y2\",\"size\":1}],"
    "\"table\":[1.0]}";

}  // namespace

TEST_CASE("help and usage errors") {
    CHECK(run_cli("--help").code == 0);
    CHECK(run_cli("").code == 2);
    CHECK(run_cli("frobnicate").code == 2);
}

TEST_CASE("region command emits deterministic nested regions") {
    CliResult first = run_cli("region --example dueck1");
    REQUIRE(first.code == 0);
    CHECK(run_cli("region --example dueck1").out == first.out);

    auto lines = lines_of(first.out);
    REQUIRE(lines.size() > 3);
    CHECK(lines[0] ==
          "# rate regions: example=dueck1 p=0.05 q=0.05 r=0.05");
    CHECK(lines[2] == "section,kind,coeff_R1,coeff_R2,rhs,vertex_R1,vertex_R2");

    // All four bounds appear and the key-based square has the published
    // side length.
    double best_r1 = 0.0;
    int sections_seen = 0;
    for (const std::string& name :
         {"nofeedback", "inner1", "inner2", "outer"}) {
        bool seen = false;
        for (const auto& line : lines)
            if (line.rfind(name + ",", 0) == 0) seen = true;
        if (seen) ++sections_seen;
    }
    CHECK(sections_seen == 4);
    for (const auto& line : lines) {
        if (line.rfind("inner1,vertex,", 0) != 0) continue;
        std::string rest = line.substr(std::string("inner1,vertex,,,,").size());
        best_r1 = std::max(best_r1, std::stod(rest));
    }
    CHECK(best_r1 == doctest::Approx(0.833455).epsilon(1e-5));
}

TEST_CASE("region command reports bound coincidence exactly") {
    CliResult res = run_cli(
        "region --example dueck1 --p 0.25 --q 0.2 --r 0.3 --format json");
    REQUIRE(res.code == 0);
    json doc = json::parse(res.out);
    REQUIRE(doc["sections"].size() == 4);
    CHECK(doc["sections"][2]["name"] == "inner2");
    CHECK(doc["sections"][3]["name"] == "outer");
    // The hybrid inner bound and the outer bound print identical vertices.
    CHECK(doc["sections"][2]["vertices"] == doc["sections"][3]["vertices"]);
    CHECK(doc["sections"][1]["vertices"] != doc["sections"][3]["vertices"]);
}

TEST_CASE("region command collapses the useless channel to the origin") {
    CliResult res = run_cli("region --example blackwell --p 0.5 --format json");
    REQUIRE(res.code == 0);
    json doc = json::parse(res.out);
    for (const auto& section : doc["sections"]) {
        REQUIRE(section["vertices"].size() == 1);
        CHECK(section["vertices"][0][0].get<double>() == 0.0);
        CHECK(section["vertices"][0][1].get<double>() == 0.0);
    }
}

TEST_CASE("region command renders self-contained svg") {
    CliResult res = run_cli("region --example dueck1 --format svg");
    REQUIRE(res.code == 0);
    CHECK(res.out.find("<svg") != std::string::npos);
    CHECK(res.out.find("R1 (bits/use)") != std::string::npos);
    CHECK(res.out.find("inner2") != std::string::npos);
    CHECK(run_cli("region --example dueck1 --format svg").out == res.out);
}

TEST_CASE("region command validates its arguments") {
    CHECK(run_cli("region").code == 2);
    CHECK(run_cli("region --example nosuch").code == 2);
    CHECK(run_cli("region --example dueck --case 3").code == 2);
    CHECK(run_cli("region --example dueck1 --p 0.7").code == 2);
    CHECK(run_cli("region --example dueck1 --format yaml").code == 2);
    fs::path dist = tmp_dir() / "const_scheme.json";
    spit(dist, kConstantScheme);
    CHECK(run_cli("region --example dueck1 --dist \"" + dist.string() + "\"")
              .code == 2);
}

TEST_CASE("region command evaluates explicit distributions") {
    fs::path dist = tmp_dir() / "const_scheme.json";
    spit(dist, kConstantScheme);
    CliResult res =
        run_cli("region --dist \"" + dist.string() + "\" --format json");
    REQUIRE(res.code == 0);
    json doc = json::parse(res.out);
    // No extension: the hybrid bound is skipped.
    REQUIRE(doc["sections"].size() == 3);
    CHECK(doc["sections"][0]["name"] == "nofeedback");
    CHECK(doc["sections"][2]["name"] == "outer");

    // Unreadable and unparsable inputs use distinct exit codes.
    CHECK(run_cli("region --dist \"" + (tmp_dir() / "missing.json").string() +
                  "\"")
              .code == 3);
    fs::path broken = tmp_dir() / "broken.json";
    spit(broken, "{not json");
    CHECK(run_cli("region --dist \"" + broken.string() + "\"").code == 2);
}

TEST_CASE("sweep command emits one row per grid point") {
    CliResult res =
        run_cli("sweep --p-min 0 --p-max 0.5 --p-step 0.02 --grid 41");
    REQUIRE(res.code == 0);
    auto lines = lines_of(res.out);
    REQUIRE(lines.size() == 28);
    CHECK(lines[0] == "# sum-rate sweep, grid resolution 41");
    CHECK(lines[1] == "p,sum_in1,sum_in2,sum_out,sum_nofb");
    CHECK(lines[2].rfind("0,", 0) == 0);
    CHECK(lines[27] == "0.5,0,0,0,0");

    CHECK(run_cli("sweep --p-min 0 --p-max 0.5 --p-step 0.02 --grid 41").out ==
          res.out);
}

TEST_CASE("sweep command validates its grid") {
    CHECK(run_cli("sweep --p-step -0.1").code == 2);
    CHECK(run_cli("sweep --p-min 0.4 --p-max 0.1").code == 2);
    CHECK(run_cli("sweep --p-max 0.7 --grid 11").code == 2);
    CHECK(run_cli("sweep --grid 1").code == 2);
}

TEST_CASE("fme command projects systems in the text format") {
    fs::path in = tmp_dir() / "fme_in.txt";
    spit(in, "R1 + R2 <= 2\nR2 >= 1/2\n");
    CliResult res = run_cli("fme --in \"" + in.string() +
                            "\" --eliminate R2");
    REQUIRE(res.code == 0);
    CHECK(res.out == "R1 <= 3/2\n");

    // Round trip through a file.
    fs::path out = tmp_dir() / "fme_out.txt";
    CHECK(run_cli("fme --in \"" + in.string() + "\" --eliminate R2 --out \"" +
                  out.string() + "\"")
              .code == 0);
    CHECK(slurp(out) == "R1 <= 3/2\n");
}

TEST_CASE("fme command reads decimal bounds exactly") {
    fs::path in = tmp_dir() / "fme_decimal.txt";
    spit(in, "R1 + 2*R2 <= 3\nR1 - R2 <= 1\nR2 <= 0.75\n");
    CliResult res = run_cli("fme --in \"" + in.string() + "\" --eliminate R2");
    REQUIRE(res.code == 0);
    CHECK(res.out == "R1 <= 5/3\n");
}

TEST_CASE("fme command with no eliminate list prunes only") {
    fs::path in = tmp_dir() / "fme_prune.txt";
    spit(in, "x <= 1\nx <= 2\n");
    CliResult res = run_cli("fme --in \"" + in.string() + "\"");
    REQUIRE(res.code == 0);
    CHECK(res.out == "x <= 1\n");
}

TEST_CASE("fme command surfaces infeasibility without failing") {
    fs::path in = tmp_dir() / "fme_bad.txt";
    spit(in, "x <= 1\nx >= 2\n");
    CliResult res = run_cli("fme --in \"" + in.string() + "\" --eliminate x");
    REQUIRE(res.code == 0);
    CHECK(res.out.rfind("# system is infeasible\n", 0) == 0);
    CHECK(res.out.find("0 <= -1") != std::string::npos);
}

TEST_CASE("fme command error handling") {
    CHECK(run_cli("fme --in \"" + (tmp_dir() / "nofile.txt").string() + "\"")
              .code == 3);
    fs::path bad = tmp_dir() / "fme_parse.txt";
    spit(bad, "R1 <=\n");
    CliResult res = run_cli("fme --in \"" + bad.string() + "\"");
    CHECK(res.code == 2);
    CHECK(res.err.find("line 1") != std::string::npos);
    fs::path ok = tmp_dir() / "fme_ok.txt";
    spit(ok, "R1 <= 1\n");
    CHECK(run_cli("fme --in \"" + ok.string() + "\" --eliminate ZZ").code ==
          2);
}

TEST_CASE("simulate command reports key extraction") {
    CliResult res = run_cli(
        "simulate --blocklength 6 --rate 0.5 --seed 7 "
        "--channel uniform-independent");
    REQUIRE(res.code == 0);
    json doc = json::parse(res.out);
    CHECK(doc["config"]["blocklength"] == 6);
    CHECK(doc["config"]["channel"] == "uniform-independent");
    CHECK(doc["report"]["gamma"] == 8);
    CHECK(doc["report"]["exhaustive"] == true);
    CHECK(std::abs(doc["report"]["leakage"].get<double>()) <= 1e-9);
    CHECK(res.err.find("key extraction: gamma=8") != std::string::npos);

    CliResult same = run_cli(
        "simulate --blocklength 6 --rate 0.5 --seed 7 "
        "--channel uniform-independent");
    CHECK(same.out == res.out);

    CliResult burned = run_cli(
        "simulate --blocklength 6 --rate 0.5 --channel identical");
    json burned_doc = json::parse(burned.out);
    CHECK(burned_doc["report"]["conditional_key_entropy"].get<double>() ==
          0.0);
}

TEST_CASE("simulate command runs the sampled mode and custom channels") {
    fs::path channel = tmp_dir() / "channel.json";
    spit(channel,
         "{\"size1\":2,\"size2\":2,\"joint\":[0.4,0.1,0.1,0.4]}");
    CliResult res = run_cli("simulate --blocklength 6 --rate 0.5 --mode "
                            "monte_carlo --trials 2000 --channel \"" +
                            channel.string() + "\"");
    REQUIRE(res.code == 0);
    json doc = json::parse(res.out);
    CHECK(doc["report"]["exhaustive"] == false);
    CHECK(doc["report"]["conditional_entropy_stderr"].get<double>() > 0.0);

    CHECK(run_cli("simulate --channel \"" +
                  (tmp_dir() / "missing_channel.json").string() + "\"")
              .code == 3);
    CHECK(run_cli("simulate --mode sideways").code == 2);
}

TEST_CASE("simulate command runs the pad roundtrip") {
    CliResult res = run_cli(
        "simulate --blocklength 8 --rate 0.75 --seed 5 --otp --trials 300");
    REQUIRE(res.code == 0);
    json doc = json::parse(res.out);
    // Default message length fills the whole key: floor(8 * 0.75) = 6.
    CHECK(doc["otp"]["message_bits"] == 6);
    CHECK(doc["otp"]["decode_ok"] == true);
    CHECK(doc["otp"]["message_leakage"].get<double>() <= 0.05 * 6);
    CHECK(res.err.find("otp roundtrip: m=6") != std::string::npos);

    CliResult shorter = run_cli(
        "simulate --blocklength 8 --rate 0.75 --otp --message-bits 3 "
        "--trials 100");
    CHECK(json::parse(shorter.out)["otp"]["message_bits"] == 3);

    CHECK(run_cli("simulate --blocklength 8 --rate 0.75 --otp "
                  "--message-bits 9")
              .code == 2);
}

TEST_CASE("config files fill in unset flags only") {
    fs::path cfg = tmp_dir() / "sim_config.json";
    spit(cfg, "{\"blocklength\":6,\"rate\":0.5,\"seed\":9}");
    CliResult res = run_cli("simulate --rate 0.75 --config \"" +
                            cfg.string() + "\"");
    REQUIRE(res.code == 0);
    json doc = json::parse(res.out);
    CHECK(doc["config"]["blocklength"] == 6);  // from the config file
    CHECK(doc["config"]["rate"] == 0.75);      // flag wins
    CHECK(doc["config"]["seed"] == 9);

    spit(cfg, "{\"rate\":\"fast\"}");
    CHECK(run_cli("simulate --config \"" + cfg.string() + "\"").code == 2);
}

TEST_CASE("verify command runs selected checks") {
    fs::path out = tmp_dir() / "verify.json";
    CliResult res = run_cli("verify --only blackwell-inner1-grid --out \"" +
                            out.string() + "\"");
    REQUIRE(res.code == 0);
    json doc = json::parse(slurp(out));
    REQUIRE(doc["checks"].size() == 1);
    CHECK(doc["checks"][0]["name"] == "blackwell-inner1-grid");
    CHECK(doc["checks"][0]["pass"] == true);
    CHECK(doc["all_pass"] == true);
    CHECK(res.err.find("[PASS] blackwell-inner1-grid") != std::string::npos);

    CHECK(run_cli("verify --only no-such-check").code == 2);
}

TEST_CASE("verify command reports injected failures") {
    CliResult res =
        run_cli("verify --only inner1-dueck-grid --perturb-inner1");
    CHECK(res.code == 1);
    json doc = json::parse(res.out);
    CHECK(doc["all_pass"] == false);
    CHECK(res.err.find("[FAIL] inner1-dueck-grid") != std::string::npos);
}

TEST_CASE("write failures exit with the io code") {
    CHECK(run_cli("region --example dueck1 --out /nonexistent_dir_zz/x.csv")
              .code == 3);
}
