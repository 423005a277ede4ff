#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "eclrc/automorphisms.hpp"

using namespace eclrc;

TEST_CASE("automorphism group sizes match the lemmas") {
    CHECK(enumerate_automorphisms(maximal_curve(Field::create(2, 2))).order() == 24);
    CHECK(enumerate_automorphisms(maximal_curve(Field::create(2, 4))).order() == 24);
    CHECK(enumerate_automorphisms(maximal_curve(Field::create(3, 2))).order() == 12);
    CHECK(enumerate_automorphisms(maximal_curve(Field::create(3, 4))).order() == 12);
    CHECK(enumerate_automorphisms(maximal_curve(Field::create(5, 2))).order() == 6);
    CHECK(enumerate_automorphisms(maximal_curve(Field::create(7, 2))).order() == 4);
}

TEST_CASE("every enumerated automorphism preserves the curve and composes closed") {
    std::mt19937_64 rng(406);
    for (auto [p, a] : std::vector<std::pair<uint64_t, unsigned>>{{2, 2}, {3, 2}, {5, 2}, {7, 2}}) {
        auto entry = maximal_curve(Field::create(p, a));
        Subgroup full = enumerate_automorphisms(entry);
        CHECK(full.elements.front().is_identity());
        // construction already verifies preservation; check closure + inverses
        std::set<std::array<uint64_t, 5>> keys;
        for (const auto& s : full.elements) keys.insert(s.affine_key());
        for (int i = 0; i < 200; ++i) {
            const auto& s = full.elements[rng() % full.order()];
            const auto& t = full.elements[rng() % full.order()];
            CHECK(keys.count(compose(s, t).affine_key()) == 1);
        }
        for (const auto& s : full.elements) {
            CHECK(compose(s, inverse(s)).is_identity());
            CHECK(compose(inverse(s), s).is_identity());
            CHECK(compose(full.elements.front(), s) == s);
        }
    }
}

TEST_CASE("order of sigma_{u,0,0} divides 3 in char 2") {
    auto entry = maximal_curve(Field::create(2, 2));
    Subgroup full = enumerate_automorphisms(entry);
    for (const auto& s : full.elements) {
        if (s.s != 0 || s.t != 0 || s.is_identity()) continue;
        if (s.bx != 0 || s.dy != 0 || s.ey != 0) continue;
        CHECK(compose(compose(s, s), s).is_identity());
    }
}

TEST_CASE("composition across curves is rejected") {
    auto e4 = maximal_curve(Field::create(2, 2));
    auto e9 = maximal_curve(Field::create(3, 2));
    auto a = enumerate_automorphisms(e4).elements[1];
    auto b = enumerate_automorphisms(e9).elements[1];
    CHECK_THROWS_MATCHES(compose(a, b), error, Catch::Matchers::Predicate<error>([](const error& e) {
                             return e.code() == errc::shape_mismatch;
                         }));
}

TEST_CASE("point action: sigma_{alpha,0,0} maps (1,alpha) to (alpha+1,alpha)") {
    auto entry = maximal_curve(Field::create(2, 2));
    Subgroup full = enumerate_automorphisms(entry);
    const Automorphism* sigma = nullptr;
    for (const auto& s : full.elements)
        if (s.u == 2 && s.s == 0 && s.t == 0) sigma = &s;
    REQUIRE(sigma != nullptr);
    CHECK(apply_to_point(*sigma, Point::affine(1, 2)) == Point::affine(3, 2));
    CHECK(apply_to_point(*sigma, Point::infinity()) == Point::infinity());
    // the orbit of (1,alpha) is the paper's first fiber
    std::set<Point> orbit;
    Point P = Point::affine(1, 2);
    for (int i = 0; i < 3; ++i) {
        orbit.insert(P);
        P = apply_to_point(*sigma, P);
    }
    CHECK(orbit == std::set<Point>{Point::affine(1, 2), Point::affine(2, 2), Point::affine(3, 2)});
}

TEST_CASE("orbit sizes divide the group order") {
    std::mt19937_64 rng(407);
    for (auto [p, a] : std::vector<std::pair<uint64_t, unsigned>>{{2, 2}, {3, 2}, {5, 2}}) {
        auto entry = maximal_curve(Field::create(p, a));
        Subgroup full = enumerate_automorphisms(entry);
        auto pts = enumerate_points(entry.curve);
        for (const auto& P : pts) {
            std::set<Point> orbit;
            for (const auto& s : full.elements) orbit.insert(apply_to_point(s, P));
            CHECK(full.order() % orbit.size() == 0);
        }
    }
}

TEST_CASE("orbits of the order-3 subgroup over F_4 match the worked example") {
    auto entry = maximal_curve(Field::create(2, 2));
    Subgroup full = enumerate_automorphisms(entry);
    auto groups = order3_y_fixing_subgroups(full);
    REQUIRE(!groups.empty());
    const Subgroup& G = groups.front();
    REQUIRE(G.order() == 3);
    auto part = orbits(G, enumerate_points(entry.curve));
    REQUIRE(part.ramified.size() == 3);
    CHECK(part.ramified[0] == Point::infinity());
    CHECK(part.ramified[1] == Point::affine(0, 0));
    CHECK(part.ramified[2] == Point::affine(0, 1));
    REQUIRE(part.fibers.size() == 2);
    CHECK(part.fibers[0] ==
          std::vector<Point>{Point::affine(1, 2), Point::affine(2, 2), Point::affine(3, 2)});
    CHECK(part.fibers[1] ==
          std::vector<Point>{Point::affine(1, 3), Point::affine(2, 3), Point::affine(3, 3)});
}

TEST_CASE("q=64 order-4 subgroup: O is the only ramified point, 20 fibers") {
    auto entry = maximal_curve(Field::create(2, 6));
    Subgroup full = enumerate_automorphisms(entry);
    auto subs = subgroups_with_half_x_orbit(full, 4);
    REQUIRE(!subs.empty());
    auto part = orbits(subs.front(), enumerate_points(entry.curve));
    CHECK(part.ramified == std::vector<Point>{Point::infinity()});
    CHECK(part.fibers.size() == 20);
    for (const auto& fib : part.fibers) CHECK(fib.size() == 4);
}

TEST_CASE("identity-only group makes every point a fiber") {
    auto entry = maximal_curve(Field::create(2, 2));
    Subgroup full = enumerate_automorphisms(entry);
    Subgroup trivial;
    trivial.elements.push_back(full.elements.front());
    auto part = orbits(trivial, enumerate_points(entry.curve));
    CHECK(part.fibers.size() == 9);
    CHECK(part.ramified.empty());
}

TEST_CASE("subgroup search finds the construction subgroups") {
    auto full4 = enumerate_automorphisms(maximal_curve(Field::create(2, 2)));
    // m = 4: the Theorem 1.2 subgroup {sigma_{1,s,t}} with x-set {x, x+1}
    auto subs4 = subgroups_with_half_x_orbit(full4, 4);
    REQUIRE(!subs4.empty());
    bool has_thm12 = false;
    for (const auto& g : subs4) {
        auto xs = g.x_action_set();
        CHECK(xs.size() == 2);
        if (xs.count({1, 0}) && xs.count({1, 1})) has_thm12 = true;
    }
    CHECK(has_thm12);
    // m = 2: the hyperelliptic involution acts trivially on x
    auto subs2 = subgroups_with_half_x_orbit(full4, 2);
    REQUIRE(!subs2.empty());
    CHECK(subs2.front().x_action_set().size() == 1);
    // m = 8 (Q8) and m = 24 (the full group) qualify; m = 12 has no subgroup
    CHECK(subgroups_with_half_x_orbit(full4, 8).size() == 1);
    CHECK(subgroups_with_half_x_orbit(full4, 24).size() == 1);
    CHECK(subgroups_with_half_x_orbit(full4, 12).empty());
    // char 3 full group of order 12: qualifying order-6 subgroup exists
    auto full81 = enumerate_automorphisms(maximal_curve(Field::create(3, 4)));
    auto subs6 = subgroups_with_half_x_orbit(full81, 6);
    REQUIRE(!subs6.empty());
    CHECK(subs6.front().x_action_set().size() == 3);
}
