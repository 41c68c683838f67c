#include "cli.hpp"

#include <catch_amalgamated.hpp>

#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

using namespace greedy_morse;

namespace {

struct Outcome {
    int code = 0;
    std::string out;
    std::string err;
};

Outcome run_cli(std::vector<std::string> args)
{
    args.insert(args.begin(), "greedy-morse");
    std::vector<const char*> argv;
    for (const auto& a : args) {
        argv.push_back(a.c_str());
    }
    std::ostringstream out;
    std::ostringstream err;
    const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::string sample(const std::string& name) { return std::string(SAMPLES_DIR) + "/" + name; }

} // namespace

TEST_CASE("gradient of the path")
{
    const auto r = run_cli({"gradient", sample("path.json")});
    REQUIRE(r.code == cli::Pass);
    const auto j = Json::parse(r.out);
    CHECK(j.at("pairs") == Json::parse("[[[1], [0, 1]], [[2], [1, 2]]]"));
    CHECK(j.at("critical") == Json::parse("[[0]]"));
    CHECK(r.err.find("gradient:") != std::string::npos);
}

TEST_CASE("fast matcher output equals the greedy output on a subdivision")
{
    const auto dir = std::filesystem::temp_directory_path() / "greedy_morse_cli_test";
    std::filesystem::create_directories(dir);
    const auto sub = (dir / "sub.json").string();
    REQUIRE(run_cli({"subdivide", sample("two_triangles_rough.json"), "-o", sub}).code == cli::Pass);
    const auto greedy = run_cli({"gradient", sub});
    const auto fast = run_cli({"gradient", sub, "--fast"});
    REQUIRE(greedy.code == cli::Pass);
    REQUIRE(fast.code == cli::Pass);
    CHECK(greedy.out == fast.out);

    // The rough complex itself is not smooth.
    CHECK(run_cli({"gradient", sample("two_triangles_rough.json"), "--fast"}).code == cli::PropertyFailure);
    std::filesystem::remove_all(dir);
}

TEST_CASE("smoothcheck exit codes")
{
    CHECK(run_cli({"smoothcheck", sample("two_triangles.json")}).code == cli::Pass);
    const auto rough = run_cli({"smoothcheck", sample("two_triangles_rough.json")});
    CHECK(rough.code == cli::PropertyFailure);
    CHECK_FALSE(Json::parse(rough.out).at("witnesses").empty());
}

TEST_CASE("input errors exit with 2")
{
    const auto bad = run_cli({"gradient", sample("malformed.json")});
    CHECK(bad.code == cli::InputError);
    CHECK(bad.err.rfind("error:", 0) == 0);
    CHECK(run_cli({"gradient", sample("missing.json")}).code == cli::InputError);
    CHECK(run_cli({"gradient", sample("square.json"), "--fast"}).code == cli::InputError);
    CHECK(run_cli({"smoothcheck", sample("square.json")}).code == cli::InputError);
    CHECK(run_cli({"nonsense"}).code == cli::InputError);
    CHECK(run_cli({"gradient", sample("path.json"), "--format", "xml"}).code == cli::InputError);
}

TEST_CASE("polyhedral input")
{
    const auto r = run_cli({"gradient", sample("square.json")});
    REQUIRE(r.code == cli::Pass);
    CHECK(Json::parse(r.out).at("critical") == Json::parse("[[0]]"));
    const auto dot = run_cli({"export-dot", sample("square.json")});
    CHECK(dot.code == cli::Pass);
    CHECK(dot.out.rfind("digraph hasse", 0) == 0);
}

TEST_CASE("cat0 certificate")
{
    const auto r = run_cli({"cat0", sample("chain.json")});
    REQUIRE(r.code == cli::Pass);
    const auto j = Json::parse(r.out);
    CHECK(j.at("cells") == 5);
    CHECK(j.at("euler_characteristic") == 1);
    CHECK(j.at("critical") == Json::parse(R"([{"ideal": [], "marks": []}])"));
    CHECK(j.at("collapse_order").size() == 2);

    const auto dot = run_cli({"cat0", sample("antichain_inconsistent.json"), "--format", "dot"});
    CHECK(dot.code == cli::Pass);
    CHECK(dot.out.find("C({p,r},{p,r})") != std::string::npos);
    CHECK(run_cli({"cat0", sample("antichain_inconsistent.json"), "--seed", "3"}).code == cli::Pass);
}

TEST_CASE("verify is reproducible")
{
    const auto a = run_cli({"verify", "--seed", "5", "--trials", "4", "--max-vertices", "10"});
    const auto b = run_cli({"verify", "--seed", "5", "--trials", "4", "--max-vertices", "10", "--threads", "1"});
    REQUIRE(a.code == cli::Pass);
    CHECK(a.out == b.out);
    CHECK(run_cli({"verify", "--check", "no_such_property", "--trials", "1"}).code == cli::InputError);
}

TEST_CASE("repeat runs are byte-identical")
{
    for (const auto& args : std::vector<std::vector<std::string>>{
             {"gradient", sample("two_triangles.json"), "--vpaths"},
             {"gradient", sample("tetrahedron.off"), "--scalars", sample("tetrahedron.scalars"), "--modified-hasse"},
             {"export-dot", sample("two_triangles.json"), "--what", "vpaths"},
             {"subdivide", sample("path.json")},
         }) {
        const auto first = run_cli(args);
        REQUIRE(first.code == cli::Pass);
        CHECK(run_cli(args).out == first.out);
    }
}
