#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "eclrc/artifact.hpp"

using namespace eclrc;

TEST_CASE("artifact JSON round trip is byte-stable") {
    auto code = build_locality2(Field::create(2, 2), 1, 2);
    ordered_json j = code_to_json(code);
    LrcCode re = code_from_json(j);
    CHECK(code_to_json(re).dump(2) == j.dump(2));
    CHECK(re.generator == code.generator);
    CHECK(re.repair_groups == code.repair_groups);
    CHECK(re.prov.z == code.prov.z);
    CHECK(re.prov.basis.size() == code.prov.basis.size());

    // the loaded code verifies identically
    auto r1 = certify(code);
    auto r2 = certify(re);
    CHECK(report_to_json(r1).dump() == report_to_json(r2).dump());

    // construction is deterministic at the byte level
    auto again = build_locality2(Field::create(2, 2), 1, 2);
    CHECK(code_to_json(again).dump(2) == j.dump(2));
}

TEST_CASE("general artifacts round trip too") {
    auto code = build_general(Field::create(2, 4), 3, 2, 4);
    ordered_json j = code_to_json(code);
    LrcCode re = code_from_json(j);
    CHECK(code_to_json(re).dump(2) == j.dump(2));
    CHECK(certify(re).optimal);
}

TEST_CASE("malformed artifacts are rejected") {
    auto code = build_locality2(Field::create(2, 2), 1, 2);
    ordered_json j = code_to_json(code);
    ordered_json bad = j;
    bad.erase("generator");
    CHECK_THROWS_MATCHES(code_from_json(bad), error,
                         Catch::Matchers::Predicate<error>([](const error& e) {
                             return e.code() == errc::format_error;
                         }));
    ordered_json bad2 = j;
    bad2["format_version"] = 2;
    CHECK_THROWS_AS(code_from_json(bad2), error);
    ordered_json bad3 = j;
    bad3["field"]["modulus"] = std::vector<int>{1, 0, 1};
    CHECK_THROWS_AS(code_from_json(bad3), error);
}

TEST_CASE("symbol packing widths") {
    CHECK(symbol_bytes(*Field::create(2, 2)) == 1);
    CHECK(symbol_bytes(*Field::create(2, 8)) == 1);
    CHECK(symbol_bytes(*Field::create(3, 6)) == 2);   // q = 729
    CHECK(symbol_bytes(*Field::create(2, 12)) == 2);  // q = 4096
}

TEST_CASE("shard encode and repair round trip") {
    std::mt19937_64 rng(414);
    auto F256 = Field::create(2, 8);
    auto code = build_locality2(F256, 1, 2);
    std::string input(10000, '\0');
    for (auto& ch : input) ch = static_cast<char>(rng());
    auto shards = encode_to_shards(code, input);
    REQUIRE(shards.size() == static_cast<size_t>(code.n));
    for (size_t lost = 0; lost < shards.size(); ++lost) {
        std::map<size_t, ShardPayload> present;
        for (size_t j = 0; j < shards.size(); ++j)
            if (j != lost) present.emplace(j, parse_shard(shards[j], "shard"));
        CHECK(repair_shard(code, present, lost) == shards[lost]);
    }
    // missing sibling
    std::map<size_t, ShardPayload> partial;
    partial.emplace(2, parse_shard(shards[2], "shard"));
    CHECK_THROWS_MATCHES(repair_shard(code, partial, 0), error,
                         Catch::Matchers::Predicate<error>([](const error& e) {
                             return e.code() == errc::missing_shards;
                         }));
}

TEST_CASE("empty input gives header-only shards") {
    auto code = build_locality2(Field::create(2, 8), 1, 2);
    auto shards = encode_to_shards(code, "");
    for (const auto& s : shards) CHECK(s.size() == 8);
    std::map<size_t, ShardPayload> present;
    for (size_t j = 1; j < shards.size(); ++j) present.emplace(j, parse_shard(shards[j], "shard"));
    CHECK(repair_shard(code, present, 0) == shards[0]);
}

TEST_CASE("oversized byte groups are rejected for small fields") {
    auto code = build_locality2(Field::create(2, 2), 1, 2);  // q = 4 < 256
    CHECK_THROWS_MATCHES(encode_to_shards(code, std::string(3, '\xff')), error,
                         Catch::Matchers::Predicate<error>([](const error& e) {
                             return e.code() == errc::range_error;
                         }));
}
