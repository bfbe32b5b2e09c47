#include <doctest.h>

#include <cstdlib>
#include <random>
#include <string>

#include <nlohmann/json.hpp>

#include "bilap/report.hpp"

using namespace bilap;

TEST_CASE("full-precision formatting round-trips") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> mant(-1.0, 1.0);
    std::uniform_int_distribution<int> expo(-300, 300);
    for (int i = 0; i < 2000; ++i) {
        const double x = std::ldexp(mant(rng), expo(rng));
        const std::string s = format_full(x);
        CHECK(std::strtod(s.c_str(), nullptr) == x);
    }
    CHECK(format_full(0.1) == std::string("0.10000000000000001"));
}

TEST_CASE("csv quoting follows rfc 4180") {
    Report r;
    r.command = "classify";
    ReportRecord rec;
    rec.add("name", std::string("plain"));
    rec.add("quoted", std::string("a,b"));
    rec.add("inner", std::string("say \"hi\""));
    rec.add("value", 1.5);
    r.records.push_back(rec);
    const std::string csv = to_csv(r);
    CHECK(csv ==
          "name,quoted,inner,value\r\n"
          "plain,\"a,b\",\"say \"\"hi\"\"\",1.5\r\n");
}

TEST_CASE("csv unions columns across heterogeneous records") {
    Report r;
    ReportRecord a, b;
    a.add("x", 1.0);
    b.add("x", 2.0).add("y", 3.0);
    r.records = {a, b};
    const std::string csv = to_csv(r);
    CHECK(csv == "x,y\r\n1,\r\n2,3\r\n");
}

TEST_CASE("error rows appear in the csv") {
    Report r;
    ReportRecord a;
    a.add("x", 1.0);
    r.records = {a};
    r.errors = {"broken"};
    CHECK(to_csv(r) == "x,error\r\n1,\r\n,broken\r\n");
}

TEST_CASE("json layout and verdict logic") {
    Report r;
    r.command = "pohozaev";
    r.inputs = {{"n", "6"}};
    ReportRecord rec;
    rec.add("R", 1.0).add("pass", true);
    r.records.push_back(rec);
    r.verdicts.push_back({"check", true, 0.5, true});
    CHECK(r.all_passed());
    r.verdicts.push_back({"other", false, -0.25, true});
    CHECK_FALSE(r.all_passed());

    const auto doc = nlohmann::json::parse(to_json(r));
    CHECK(doc["schema_version"] == kReportSchemaVersion);
    CHECK(doc["command"] == "pohozaev");
    CHECK(doc["records"].size() == 1);
    CHECK(doc["verdicts"][1]["pass"] == false);
    CHECK(doc["all_passed"] == false);
    CHECK_FALSE(doc.contains("wall_clock_seconds"));
    const auto timed = nlohmann::json::parse(to_json(r, true));
    CHECK(timed.contains("wall_clock_seconds"));
}

TEST_CASE("errors force failure even without verdicts") {
    Report r;
    r.errors.push_back("no singular solution: ell2 <= 0");
    CHECK_FALSE(r.all_passed());
}
