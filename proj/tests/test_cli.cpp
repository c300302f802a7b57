#include "opcarb/ingest.hpp"
#include "opcarb/report.hpp"

#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>
#include <unistd.h>

namespace fs = std::filesystem;

namespace {

std::string cli_path() {
    const char* path = std::getenv("OPCARB_CLI");
    return path == nullptr ? std::string() : std::string(path);
}

int run(const std::string& args, const std::string& stdout_path = "/dev/null") {
    const std::string command = cli_path() + " " + args + " > " + stdout_path + " 2>/dev/null";
    const int status = std::system(command.c_str());
    REQUIRE(status != -1);
    return WEXITSTATUS(status);
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("opcarb_cli_test_" + std::to_string(::getpid()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

} // namespace

TEST_CASE("command-line interface") {
    if (cli_path().empty()) {
        MESSAGE("OPCARB_CLI not set; skipping CLI tests");
        return;
    }
    TempDir tmp;

    const std::string macro = tmp.file("macro.csv");
    const std::string enduse = tmp.file("enduse.csv");
    REQUIRE(run("gen-fixture --regions 4 --years 5 --out-macro " + macro + " --out-enduse " +
                enduse) == 0);

    SUBCASE("validate is silent and green on clean fixtures") {
        const std::string report = tmp.file("report.txt");
        CHECK(run("validate " + macro + " " + enduse, report) == 0);
        CHECK(slurp(report).empty());
    }

    SUBCASE("validate flags findings and writes JSON") {
        std::ofstream(macro, std::ios::app) << "BAD,2000,1,0,1,1,1,1\n";
        const std::string json = tmp.file("report.json");
        CHECK(run("validate " + macro + " " + enduse + " --json-out " + json,
                  tmp.file("report.txt")) == 1);
        CHECK(slurp(tmp.file("report.txt")).find("NonPositiveValue") != std::string::npos);
        CHECK(slurp(json).find("\"kind\": \"validation\"") != std::string::npos);
    }

    SUBCASE("missing input exits with the I/O code") {
        CHECK(run("validate " + tmp.file("nope.csv") + " " + enduse) == 2);
        CHECK(run("decompose " + tmp.file("nope.csv") + " " + enduse +
                  " --sector residential") == 2);
    }

    SUBCASE("usage errors exit with the I/O code") {
        CHECK(run("decompose " + macro + " " + enduse + " --sector industrial") == 2);
        CHECK(run("bogus-subcommand") == 2);
    }

    SUBCASE("unknown region exits with the findings code") {
        CHECK(run("decompose " + macro + " " + enduse +
                  " --sector residential --region NOWHERE") == 1);
    }

    SUBCASE("decompose is deterministic byte for byte") {
        const std::string out1 = tmp.file("c1.csv");
        const std::string out2 = tmp.file("c2.csv");
        const std::string flags = "decompose " + macro + " " + enduse +
                                  " --sector residential --from 2000 --to 2004 --out ";
        REQUIRE(run(flags + out1) == 0);
        REQUIRE(run(flags + out2) == 0);
        const std::string bytes = slurp(out1);
        CHECK(bytes == slurp(out2));
        CHECK(bytes.rfind("region,sector,year_from,year_to,factor,end_use,contribution,"
                          "share_of_delta,residual\n",
                          0) == 0);
    }

    SUBCASE("export round trips across formats") {
        const std::string csv1 = tmp.file("m.csv");
        REQUIRE(run("assess " + macro + " " + enduse + " --sector commercial --out " + csv1) ==
                0);
        const std::string json = tmp.file("m.json");
        REQUIRE(run("export --in " + csv1 + " --format json --out " + json) == 0);
        const std::string csv2 = tmp.file("m2.csv");
        REQUIRE(run("export --in " + json + " --format csv --out " + csv2) == 0);
        CHECK(slurp(csv1) == slurp(csv2));
    }

    SUBCASE("rank emits all three scales") {
        const std::string out = tmp.file("rank.csv");
        REQUIRE(run("rank " + macro + " " + enduse +
                    " --sector residential --metric all --top 3 --out " + out) == 0);
        const auto rows = opcarb::rank_from_csv(slurp(out));
        REQUIRE(rows.size() == 9);
        CHECK(rows[0].scale == "total");
        CHECK(rows[3].scale == "intensity");
        CHECK(rows[6].scale == "per_capita");
        CHECK(rows[0].rank == 1);
    }

    SUBCASE("stage mode runs from the command line") {
        CHECK(run("decompose " + macro + " " + enduse +
                  " --sector residential --from 2000 --to 2004 --mode stage --stages "
                  "2000-2002,2002-2004 --out " +
                  tmp.file("stages.csv")) == 0);
        // A stage list that fails to partition the window is a usage error.
        CHECK(run("assess " + macro + " " + enduse +
                  " --sector residential --mode stage --stages 2000-2002,2002-2003") == 2);
    }
}
