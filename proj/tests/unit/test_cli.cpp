#include "cli.hpp"

#include <doctest.h>
#include <json.hpp>

#include <cstdio>
#include <fstream>

using perspectra::cli::run;

TEST_CASE("group complement") {
    auto r = run({"group", "complement", "Z2+Z4", "gens[(1,0)]", "gens[(1,2)]"});
    CHECK(r.exit_code == 0);
    CHECK(r.out == "U = gens[(0,1)]\n");
    auto bad = run({"group", "complement", "Z2+Z4", "gens[(0,2)]", "gens[(0,2)]"});
    CHECK(bad.exit_code == 2);
    CHECK(bad.err.find("no complement exists") != std::string::npos);
    CHECK(run({"group", "complement", "Z2+Z4", "gens[(1,0", "gens[(1,2)]"}).exit_code == 1);
    CHECK(run({"group", "complement", "Z2+Z4"}).exit_code == 1);
}

TEST_CASE("verify sweep") {
    auto r = run({"--json", "verify", "--max-order", "16"});
    REQUIRE(r.exit_code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["groups"] == 25);
    CHECK(j["perspective"] == 25);
    CHECK(j["anomalies"] == 0);
    CHECK(j["pairs"] == j["constructive_verified"]);
    auto one = nlohmann::json::parse(run({"--json", "verify", "--max-order", "1"}).out);
    CHECK(one["groups"] == 1);
    CHECK(run({"verify", "--max-order", "100000"}).exit_code == 3);
}

TEST_CASE("rank1, ring and vector-space commands") {
    auto r = run({"--json", "rank1", "check", "div{11}", "--not-div", "2,5"});
    REQUIRE(r.exit_code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["status"] == "NotPerspective");
    CHECK(j["certificate"]["modulus"] == 10);
    CHECK(run({"rank1", "check", "div{11}", "--not-div", "11"}).exit_code == 2);

    auto ring = nlohmann::json::parse(run({"--json", "ring", "check", "Mat(2,Zn(2))", "--brute"}).out);
    CHECK(ring["perspective"] == true);
    CHECK(ring["bruteforce"] == true);
    CHECK(run({"ring", "check", "End(Z2+Z2+Z2+Z2+Z2)"}).exit_code == 3);

    CHECK(run({"vecspace", "complement", "2", "[(1,0)]", "[(0,1)]"}).out == "H = span[(1,1)]\n");
    CHECK(run({"vecspace", "complement", "2", "[(1,0)]", "[(0,1);(1,1)]"}).exit_code == 2);
    CHECK(run({"localized", "complement", "Qp(5)^2", "[(1,5)]", "[(1,0)]"}).exit_code == 0);
    CHECK(run({"localized", "complement", "Zp(2,N=3)^2", "[(1,0)]", "[(1,2)]"}).out == "U = [(0,1)] (stable at N+1)\n");
}

TEST_CASE("results file is deterministic JSON lines") {
    const std::string path = "cli_test_records.jsonl";
    std::remove(path.c_str());
    std::vector<std::string> cmd{"--out", path, "--seed", "9", "rank1", "check", "div{}"};
    CHECK(run(cmd).exit_code == 0);
    CHECK(run(cmd).exit_code == 0);
    std::ifstream in(path);
    std::string l1, l2;
    std::getline(in, l1);
    std::getline(in, l2);
    auto a = nlohmann::json::parse(l1), b = nlohmann::json::parse(l2);
    CHECK(a["result"].dump() == b["result"].dump());
    CHECK(a["seed"] == 9);
    CHECK(a["version"] == "0.1.0");
    std::remove(path.c_str());
}
