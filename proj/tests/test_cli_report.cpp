#include <doctest.h>

#include <cstdio>
#include <filesystem>

#include "grd/cli.hpp"
#include "grd/fixtures.hpp"
#include "grd/report.hpp"

using namespace grd;

namespace {

struct TempDir {
    std::filesystem::path path;
    TempDir() {
        path = std::filesystem::temp_directory_path() /
               ("grd-test-" + std::to_string(std::rand()));
        std::filesystem::create_directories(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

}  // namespace

TEST_SUITE("cli-report") {

TEST_CASE("json numbers are printed at 15 significant digits with sorted keys") {
    CHECK(Json::format_number(1.0 / 3.0) == "0.333333333333333");
    CHECK(Json::format_number(2.0) == "2.0");
    CHECK(Json::format_number(1e-9) == "1e-09");
    Json j = Json::object();
    j["zeta"] = 1;
    j["alpha"] = 2;
    j["mid"] = Json::array();
    CHECK(j.dump() == "{\"alpha\":2,\"mid\":[],\"zeta\":1}");
    Json esc = Json("line\n\"quote\"");
    CHECK(esc.dump() == "\"line\\n\\\"quote\\\"\"");
}

TEST_CASE("report verdict and sorting") {
    CheckReport r;
    r.command = "demo";
    r.add_inequality("b_check", "x", 1.0, 2.0, 0.0);
    r.add_inequality("a_check", "y", 3.0, 1.0, 1e-9);  // fails
    r.add_equality("a_check", "x", 1.0, 1.0 + 5e-10, 1e-9);
    CHECK_FALSE(r.pass());
    CHECK(r.failures() == 1);
    auto js = r.to_json().dump();
    // Rows sorted by (check, instance): a_check/x before a_check/y before b_check/x.
    auto ax = js.find("\"a_check\",\"instance\":\"x\"");
    auto ay = js.find("\"a_check\",\"instance\":\"y\"");
    auto bx = js.find("\"b_check\"");
    CHECK(ax < ay);
    CHECK(ay < bx);
    CHECK(js.find("\"verdict\":\"fail\"") != std::string::npos);
}

TEST_CASE("growth command emits the chain CSV row a,3,4") {
    TempDir tmp;
    int code = run({"growth", "--system", "af", "--counter", "preimage", "--radius", "6",
                    "--unit-sample", "1", "--out", tmp.file("af.csv")});
    CHECK(code == 0);
    auto csv = read_text_file(tmp.file("af.csv"));
    CHECK(csv.find("a,3,4\n") != std::string::npos);
}

TEST_CASE("classify-graph on the single loop") {
    TempDir tmp;
    write_text_file(tmp.file("loop.json"),
                    "{\"vertices\": [\"v\"], \"edges\": [{\"src\": \"v\", \"dst\": \"v\", "
                    "\"label\": \"l\"}]}");
    int code = run({"classify-graph", "--input", tmp.file("loop.json"), "--radius", "8",
                    "--report", tmp.file("loop-report.json")});
    CHECK(code == 0);
    auto report = read_text_file(tmp.file("loop-report.json"));
    CHECK(report.find("\"classification\": \"polynomial\"") != std::string::npos);
    CHECK(report.find("\"d_hat\": 1") != std::string::npos);
}

TEST_CASE("reports are byte-identical across runs and worker counts") {
    TempDir tmp;
    auto args = [&](const std::string& name, const std::string& workers) {
        return std::vector<std::string>{"rdtest", "--system", "pair",     "--n",     "3",
                                        "--samples", "10",    "--seed",   "7",       "--report",
                                        tmp.file(name),       "--workers", workers};
    };
    CHECK(run(args("a.json", "1")) == 0);
    CHECK(run(args("b.json", "1")) == 0);
    CHECK(run(args("c.json", "4")) == 0);
    CHECK(read_text_file(tmp.file("a.json")) == read_text_file(tmp.file("b.json")));
    CHECK(read_text_file(tmp.file("a.json")) == read_text_file(tmp.file("c.json")));
}

TEST_CASE("exit codes") {
    TempDir tmp;
    // Unknown flag.
    CHECK(run({"growth", "--no-such-flag"}) == 2);
    // Malformed input file.
    write_text_file(tmp.file("bad.json"), "{not json");
    CHECK(run({"classify-graph", "--input", tmp.file("bad.json")}) == 2);
    // Sinks are an input error naming the vertex.
    write_text_file(tmp.file("sink.json"),
                    "{\"vertices\": [\"a\", \"b\"], \"edges\": [{\"src\": \"a\", \"dst\": "
                    "\"b\"}]}");
    CHECK(run({"classify-graph", "--input", tmp.file("sink.json")}) == 2);
    // A failing check returns 1 and prints the negative slack row.
    int code = run({"rdtest", "--system", "full-shift", "--arity", "2", "--p", "2", "--level-lo",
                    "2", "--level-hi", "3", "--report", tmp.file("obs.json")});
    CHECK(code == 1);
    auto report = read_text_file(tmp.file("obs.json"));
    CHECK(report.find("\"verdict\": \"fail\"") != std::string::npos);
}

TEST_CASE("seed comes from the environment when no flag is given") {
    TempDir tmp;
    setenv("GRD_SEED", "99", 1);
    CHECK(run({"rdtest", "--system", "cyclic", "--n", "2", "--samples", "5", "--report",
               tmp.file("env.json")}) == 0);
    unsetenv("GRD_SEED");
    CHECK(run({"rdtest", "--system", "cyclic", "--n", "2", "--samples", "5", "--seed", "99",
               "--report", tmp.file("flag.json")}) == 0);
    CHECK(read_text_file(tmp.file("env.json")) == read_text_file(tmp.file("flag.json")));
}

}  // TEST_SUITE
