#include <doctest.h>

#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "qec/cli.hpp"

using namespace qec;

namespace {

std::filesystem::path temp_file(const std::string& name) {
    return std::filesystem::temp_directory_path() / name;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// Runs the CLI with stdout and stderr redirected to files.
struct CliRun {
    int exit_code;
    std::string out;
    std::string err;
};

CliRun run(const std::vector<std::string>& args) {
    std::fflush(stdout);
    std::fflush(stderr);
    auto outp = temp_file("qec_cli_stdout.txt");
    auto errp = temp_file("qec_cli_stderr.txt");
    int saved_out = dup(1), saved_err = dup(2);
    FILE* fo = std::freopen(outp.c_str(), "w", stdout);
    FILE* fe = std::freopen(errp.c_str(), "w", stderr);
    REQUIRE(fo != nullptr);
    REQUIRE(fe != nullptr);
    int code = run_cli(args);
    std::fflush(stdout);
    std::fflush(stderr);
    dup2(saved_out, 1);
    dup2(saved_err, 2);
    close(saved_out);
    close(saved_err);
    return {code, slurp(outp), slurp(errp)};
}

}  // namespace

TEST_CASE("epsilon list parsing") {
    CHECK(parse_eps_list("0.1,0.2") == std::vector<double>{0.1, 0.2});
    CHECK(parse_eps_list("0.3") == std::vector<double>{0.3});
    std::vector<double> range = parse_eps_list("0.14:0.20:0.01");
    REQUIRE(range.size() == 7);
    CHECK(range.front() == doctest::Approx(0.14));
    CHECK(range[3] == doctest::Approx(0.17));
    CHECK(range.back() == doctest::Approx(0.20));
    CHECK(parse_eps_list("0.1:0.1:0.05") == std::vector<double>{0.1});
    CHECK_THROWS_AS(parse_eps_list("0.2:0.1:0.05"), std::invalid_argument);
    CHECK_THROWS_AS(parse_eps_list("0.1:0.2:0"), std::invalid_argument);
    CHECK_THROWS_AS(parse_eps_list("0.1:0.2"), std::invalid_argument);
    CHECK_THROWS_AS(parse_eps_list("1.5"), std::invalid_argument);
    CHECK_THROWS_AS(parse_eps_list("-0.1,0.2"), std::invalid_argument);
    CHECK_THROWS_AS(parse_eps_list("abc"), std::invalid_argument);
    CHECK_THROWS_AS(parse_eps_list(""), std::invalid_argument);
}

TEST_CASE("distance list parsing") {
    CHECK(parse_d_list("3") == std::vector<int>{3});
    CHECK(parse_d_list("3,5,7") == std::vector<int>{3, 5, 7});
    CHECK_THROWS_AS(parse_d_list("3,x"), std::invalid_argument);
    CHECK_THROWS_AS(parse_d_list(""), std::invalid_argument);
}

TEST_CASE("family dispatch") {
    CHECK(build_family("toric", 3).name == "toric-3");
    CHECK(build_family("surface", 2).name == "surface-2");
    CHECK(build_family("color666", 3).name == "color666-3");
    CHECK(build_family("xzzx", 3).name == "xzzx-3");
    CHECK_THROWS_AS(build_family("steane", 3), std::invalid_argument);
}

TEST_CASE("decoder spec grammar") {
    DecoderConfig plain = parse_decoder_spec("bp4", "", 60);
    CHECK(plain.bp.alpha_mode == AlphaMode::plain);
    CHECK_FALSE(plain.use_osd);
    CHECK(plain.bp.max_iterations == 60);

    DecoderConfig osd2 = parse_decoder_spec("bp4+osd2", "", 60);
    CHECK(osd2.use_osd);
    CHECK(osd2.osd_order == 2);
    CHECK(osd2.osd_mode == OsdMode::osd4);

    DecoderConfig mosd0 = parse_decoder_spec("mbp4+mosd0", "", 100);
    CHECK(mosd0.use_osd);
    CHECK(mosd0.osd_order == 0);
    CHECK(mosd0.osd_mode == OsdMode::mosd4);
    CHECK(mosd0.bp.alpha_mode == AlphaMode::fixed);
    CHECK(mosd0.bp.alpha == doctest::Approx(1.6));  // default when unset

    DecoderConfig tuned = parse_decoder_spec("mbp4", "1.2", 100);
    CHECK(tuned.bp.alpha == doctest::Approx(1.2));
    DecoderConfig scaled = parse_decoder_spec("mbp4", "eps", 100);
    CHECK(scaled.bp.alpha_mode == AlphaMode::epsilon_scaled);

    CHECK_THROWS_AS(parse_decoder_spec("bp4", "1.5", 60), std::invalid_argument);
    CHECK_THROWS_AS(parse_decoder_spec("bp2", "", 60), std::invalid_argument);
    CHECK_THROWS_AS(parse_decoder_spec("bp4+osd", "", 60), std::invalid_argument);
    CHECK_THROWS_AS(parse_decoder_spec("bp4+posd2", "", 60), std::invalid_argument);
    CHECK_THROWS_AS(parse_decoder_spec("mbp4", "zero", 100), std::invalid_argument);
}

TEST_CASE("gen-code prints parameters and writes files") {
    auto p = temp_file("qec_cli_toric3.chk");
    CliRun r = run({"gen-code", "--family", "toric", "--d", "3", "--out", p.string()});
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("toric-3: n=18 k=2 rank=16") != std::string::npos);
    std::string file = slurp(p);
    CHECK(file.rfind("18 2 18\n", 0) == 0);
    std::filesystem::remove(p);

    CliRun steane = run({"gen-code", "--family", "color666", "--d", "3"});
    CHECK(steane.exit_code == 0);
    CHECK(steane.out.find("n=7 k=1") != std::string::npos);

    CliRun ghp = run({"gen-code", "--code-file", QEC_DATA_DIR "/ghp_882_48.chk"});
    CHECK(ghp.exit_code == 0);
    CHECK(ghp.out.find("n=882 k=48") != std::string::npos);
}

TEST_CASE("gen-code rejects bad arguments") {
    CHECK(run({"gen-code", "--family", "toric", "--d", "1"}).exit_code == 2);
    CHECK(run({"gen-code", "--family", "nope", "--d", "3"}).exit_code == 2);
    CHECK(run({"gen-code"}).exit_code == 2);  // neither family nor file
    CliRun both = run({"gen-code", "--family", "toric", "--d", "3", "--code-file",
                       QEC_DATA_DIR "/ghp_882_48.chk"});
    CHECK(both.exit_code == 2);
    // A malformed code file is a validation failure, not usage.
    auto p = temp_file("qec_cli_bad.chk");
    std::ofstream(p) << "1 0\n";
    CHECK(run({"gen-code", "--code-file", p.string()}).exit_code == 3);
    std::filesystem::remove(p);
}

TEST_CASE("decode paths") {
    CliRun zero = run({"decode", "--family", "surface", "--d", "3", "--decoder",
                       "bp4", "--syndrome", "000000000000"});
    CHECK(zero.exit_code == 0);
    CHECK(zero.out.find("converged=true iters=1") != std::string::npos);
    CHECK(zero.out.find("estimate=IIIIIIIIIIIII") != std::string::npos);

    CliRun inject = run({"decode", "--family", "surface", "--d", "3", "--decoder",
                         "bp4+osd2", "--error", "XIIIIIIIIIIII", "--eps", "0.1"});
    CHECK(inject.exit_code == 0);
    CHECK(inject.out.find("classification=stabilizer-equivalent") !=
          std::string::npos);

    CHECK(run({"decode", "--family", "surface", "--d", "3", "--decoder", "bp4",
               "--syndrome", "000"})
              .exit_code == 2);
    CHECK(run({"decode", "--family", "surface", "--d", "3", "--decoder", "bp4",
               "--syndrome", "000000000000", "--error", "XIIIIIIIIIIII"})
              .exit_code == 2);
    CHECK(run({"decode", "--family", "surface", "--d", "3", "--decoder", "bp4"})
              .exit_code == 2);
    CHECK(run({"decode", "--family", "surface", "--d", "3", "--decoder",
               "bp4+osd", "--syndrome", "000000000000"})
              .exit_code == 2);
    // bp4 with --alpha is a usage error per the grammar.
    CHECK(run({"decode", "--family", "surface", "--d", "3", "--decoder", "bp4",
               "--alpha", "1.6", "--syndrome", "000000000000"})
              .exit_code == 2);
    // Multiple distances make sense only for sweeps.
    CHECK(run({"decode", "--family", "surface", "--d", "3,5", "--decoder", "bp4",
               "--syndrome", "000000000000"})
              .exit_code == 2);
}

TEST_CASE("sweep output is deterministic across workers") {
    // The manifest embeds the output path, so reruns that should be
    // byte-identical must use the same --out.
    auto p = temp_file("qec_cli_sweep_det.csv");
    std::vector<std::string> base{"sweep",  "--family", "toric",      "--d",
                                  "3",      "--decoder", "bp4+osd2",  "--eps",
                                  "0.12",   "--events",  "20",        "--max-trials",
                                  "1024",   "--seed",    "9",         "--out",
                                  p.string()};
    auto args1 = base;
    args1.insert(args1.end(), {"--workers", "1"});
    auto args2 = base;
    args2.insert(args2.end(), {"--workers", "4"});
    CHECK(run(args1).exit_code == 0);
    std::string c1 = slurp(p);
    CHECK(run(args2).exit_code == 0);
    std::string c2 = slurp(p);
    CHECK(c1 == c2);
    CHECK(c1.rfind("# manifest: ", 0) == 0);
    CHECK(c1.find("\ncode,n,k,d,epsilon,trials,logical_errors,bp_converged,"
                  "osd_invoked,mean_iters,ler,ler_stderr\n") != std::string::npos);
    CHECK(c1.find("toric-3,18,2,3,0.12,") != std::string::npos);
    std::filesystem::remove(p);
}

TEST_CASE("sweep json format round-trips") {
    auto p = temp_file("qec_cli_sweep.json");
    CliRun r = run({"sweep", "--family", "surface", "--d", "2", "--decoder",
                    "bp4", "--eps", "0.05,0.1", "--events", "5", "--max-trials",
                    "600", "--seed", "4", "--format", "json", "--out", p.string()});
    CHECK(r.exit_code == 0);
    nlohmann::json j = nlohmann::json::parse(slurp(p));
    CHECK(j["manifest"]["command"] == "sweep");
    CHECK(j["manifest"]["seed"] == 4);
    CHECK(j["manifest"]["code"]["family"] == "surface");
    REQUIRE(j["points"].size() == 2);
    CHECK(j["points"][0]["epsilon"] == 0.05);
    CHECK(j["points"][1]["epsilon"] == 0.1);
    std::filesystem::remove(p);
}

TEST_CASE("threshold reports crossings and distinguishes no-crossing") {
    // Far below threshold the d=5 curve sits under d=3: no crossing, exit 1,
    // data still written.
    auto p = temp_file("qec_cli_thresh.csv");
    CliRun low = run({"threshold", "--family", "toric", "--d", "3,5",
                      "--decoder", "bp4+osd2", "--eps", "0.04,0.06", "--events",
                      "15", "--max-trials", "1536", "--seed", "12", "--out",
                      p.string()});
    CHECK(low.exit_code == 1);
    std::string data = slurp(p);
    CHECK(data.find("no-crossing") != std::string::npos);
    CHECK(data.find("toric-5,50,2,5,") != std::string::npos);
    std::filesystem::remove(p);
}

TEST_CASE("threshold requires at least two distances") {
    CHECK(run({"threshold", "--family", "toric", "--d", "3", "--decoder", "bp4",
               "--eps", "0.1,0.12", "--events", "5", "--max-trials", "512",
               "--seed", "1"})
              .exit_code == 2);
}

TEST_CASE("seed falls back to the environment variable") {
    auto p = temp_file("qec_cli_envseed.csv");
    setenv("QEC_BPOSD_SEED", "31337", 1);
    CliRun r = run({"sweep", "--family", "surface", "--d", "2", "--decoder",
                    "bp4", "--eps", "0.05", "--events", "3", "--max-trials",
                    "512", "--out", p.string()});
    unsetenv("QEC_BPOSD_SEED");
    CHECK(r.exit_code == 0);
    std::string data = slurp(p);
    CHECK(data.find("\"seed\":31337") != std::string::npos);
    std::filesystem::remove(p);
}

TEST_CASE("usage errors and help") {
    CHECK(run({}).exit_code == 2);
    CHECK(run({"frobnicate"}).exit_code == 2);
    CHECK(run({"--help"}).exit_code == 0);
    CHECK(run({"sweep", "--family", "toric", "--d", "3", "--decoder", "bp4",
               "--eps", "0.5,0.2:bad"})
              .exit_code == 2);
    // Unknown format value.
    CHECK(run({"sweep", "--family", "toric", "--d", "3", "--decoder", "bp4",
               "--eps", "0.1", "--format", "yaml"})
              .exit_code == 2);
}
