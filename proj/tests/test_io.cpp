#include "doctest.h"
#include "kstab/catalog.hpp"
#include "kstab/errors.hpp"
#include "kstab/io.hpp"

using namespace kstab;

TEST_CASE("report round trip") {
    for (std::uint64_t i = 0; i < 12; ++i) {
        auto rc = random_case(7, i);
        auto r = compute_report(rc.phi, rc.pair);
        auto doc = json::parse(report_document(rc.phi, rc.pair, r).dump());
        auto phi = metric_from_json(doc.at("metric"));
        auto pair = pair_from_json(doc.at("pair"));
        CHECK(phi == rc.phi);
        auto again = compute_report(phi, pair);
        CHECK(to_json(again) == doc.at("report"));
        CHECK(to_json(report_from_json(doc.at("report"))) == doc.at("report"));
    }
}

TEST_CASE("value encodings") {
    CHECK(to_json(Rat(-3, 4)) == json("-3/4"));
    CHECK(rat_from_json(json(5)) == 5);
    CHECK(rat_from_json(json("1/3")) == Rat(1, 3));
    CHECK_THROWS_AS(rat_from_json(json("x")), InputError);
    auto P = polytope_from_json(to_json(anticanonical_p2()));
    CHECK(P == anticanonical_p2());
}

TEST_CASE("malformed documents") {
    CHECK_THROWS(metric_from_json(json::parse(R"({"polytope": {"dim": 1, "vertices": [["0"], ["1"]]}})")));
    CHECK_THROWS_AS(read_json_file("/nonexistent/file.json"), InputError);
}

TEST_CASE("random cases are reproducible") {
    auto a = random_case(42, 3), b = random_case(42, 3);
    CHECK(a.phi == b.phi);
    CHECK(to_json(a.pair) == to_json(b.pair));
    CHECK(a.seed == case_seed(42, 3));
}
