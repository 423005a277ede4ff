#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "eclrc/verify.hpp"

using namespace eclrc;

TEST_CASE("singleton-type bound") {
    CHECK(singleton_type_bound(6, 3, 2) == 3);
    CHECK(singleton_type_bound(10, 4, 4) == 7);  // classical Singleton n-k+1
    CHECK(singleton_type_bound(80, 4, 3) == 76);
    CHECK(singleton_type_bound(3, 1, 2) == 3);  // constants code: bound = n
    CHECK_THROWS_MATCHES(singleton_type_bound(3, 4, 2), error,
                         Catch::Matchers::Predicate<error>([](const error& e) {
                             return e.code() == errc::range_error;
                         }));
    CHECK_THROWS_MATCHES(singleton_type_bound(3, 0, 2), error,
                         Catch::Matchers::Predicate<error>([](const error& e) {
                             return e.code() == errc::range_error;
                         }));
}

TEST_CASE("rate bound") {
    CHECK(rate_bound_check(6, 3, 2));
    CHECK(!rate_bound_check(4, 4, 2));
}

TEST_CASE("locality check: positive and negative controls") {
    auto code = build_locality2(Field::create(2, 2), 1, 2);
    CHECK(check_locality(code));

    LrcCode shuffled = code;
    std::swap(shuffled.repair_groups[0][0], shuffled.repair_groups[1][0]);
    CHECK(!check_locality(shuffled));

    auto constants = build_locality2(Field::create(2, 2), 0, 2);
    CHECK(check_locality(constants));
}

TEST_CASE("submatrix condition: positive, negative, degenerate") {
    auto code = build_general(Field::create(2, 4), 3, 2, 3);
    CHECK(check_submatrix_condition(code));

    LrcCode broken = code;
    broken.prov.w[1] = fn_const(code.prov.entry.curve, 1);  // duplicates column 0
    CHECK(!check_submatrix_condition(broken));

    // r = 1 degenerate: M has a single all-ones column, vacuously invertible
    LrcCode tiny = code;
    tiny.prov.w = {fn_const(code.prov.entry.curve, 1)};
    CHECK(check_submatrix_condition(tiny));

    LrcCode missing = code;
    missing.prov.w.clear();
    CHECK_THROWS_MATCHES(check_submatrix_condition(missing), error,
                         Catch::Matchers::Predicate<error>([](const error& e) {
                             return e.code() == errc::missing_provenance;
                         }));
}

TEST_CASE("exhaustive minimum distance") {
    auto code = build_locality2(Field::create(2, 2), 1, 2);
    auto d = exhaustive_min_distance(code);
    REQUIRE(d.has_value());
    CHECK(*d == 3);

    auto constants = build_locality2(Field::create(2, 2), 0, 2);
    auto dc = exhaustive_min_distance(constants);
    REQUIRE(dc.has_value());
    CHECK(*dc == constants.n);

    // [9,5,3] over F_9 (t=2, ell=3): 9^5 - 1 codewords enumerated
    auto code9 = build_locality2(Field::create(3, 2), 2, 3);
    auto d9 = exhaustive_min_distance(code9);
    REQUIRE(d9.has_value());
    CHECK(*d9 == 3);

    CHECK(!exhaustive_min_distance(code9, 100).has_value());  // Skipped above the cap
}

TEST_CASE("certify: paper instances are optimal") {
    auto code = build_locality2(Field::create(2, 2), 1, 2);
    auto rep = certify(code);
    CHECK(rep.n == 6);
    CHECK(rep.k_actual == 3);
    CHECK(rep.singleton_bound == 3);
    REQUIRE(rep.d_exhaustive.has_value());
    CHECK(*rep.d_exhaustive == 3);
    CHECK(rep.rate_ok);
    CHECK(rep.locality_ok);
    CHECK(rep.submatrix_ok);
    CHECK(rep.optimal);
    CHECK(rep.work_bound == 63);

    auto g = certify(build_general(Field::create(2, 4), 3, 2, 3));
    CHECK(g.optimal);
    REQUIRE(g.d_exhaustive.has_value());
    CHECK(*g.d_exhaustive == 8);
}

TEST_CASE("certify: tampered codes are rejected") {
    auto code = build_locality2(Field::create(2, 2), 1, 2);
    LrcCode tampered = code;
    tampered.generator.at(1, 2) = tampered.field->add(tampered.generator.at(1, 2), 1);
    auto rep = certify(tampered);
    CHECK(!rep.optimal);

    // dropping a row shrinks k_actual, so the recomputed bound moves away
    LrcCode truncated = code;
    Mat small(code.field.get(), 2, 6);
    for (size_t r = 0; r < 2; ++r)
        for (size_t c = 0; c < 6; ++c) small.at(r, c) = code.generator.at(r, c);
    truncated.generator = small;
    truncated.k = 2;
    auto rep2 = certify(truncated);
    CHECK(rep2.k_actual == 2);
    CHECK(!rep2.optimal);  // declared d=3 < bound n-k-1+2 = 5
}

TEST_CASE("certify is read-only") {
    auto code = build_locality2(Field::create(3, 2), 1, 3);
    auto before = code.generator;
    auto groups = code.repair_groups;
    certify(code);
    CHECK(code.generator == before);
    CHECK(code.repair_groups == groups);
}
