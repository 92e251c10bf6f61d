#include "doctest.h"
#include "gen.hpp"
#include "proglab/nil.hpp"
#include "proglab/verify.hpp"

using namespace proglab;

namespace {
NilPoint q3(mpq_class a, mpq_class b, mpq_class c) { return {a, b, c}; }
}  // namespace

TEST_SUITE("nil") {

// Heisenberg values from a Python Fraction implementation of the group law.
TEST_CASE("Heisenberg sequence values") {
    const auto G = NilGroup::heisenberg();
    PolySeq2 s{q3(mpq_class(1, 2), mpq_class(1, 3), mpq_class(1, 5)), q3(2, mpq_class(-1, 2), mpq_class(3, 4)),
               q3(0, 0, mpq_class(7, 3))};
    CHECK(polyseq_eval(G, s, 5) == q3(mpq_class(21, 2), mpq_class(-13, 6), mpq_class(481, 30)));
    CHECK(polyseq_eval(G, s, -3) == q3(mpq_class(-11, 2), mpq_class(11, 6), mpq_class(67, 10)));
    CHECK(polyseq_eval(G, s, 12) == q3(mpq_class(49, 2), mpq_class(-17, 3), mpq_class(471, 5)));
    CHECK(nil_commutator(G, s.g0, s.g1) == q3(0, 0, mpq_class(-11, 12)));
}

TEST_CASE("fundamental domain") {
    const auto G = NilGroup::heisenberg();
    auto [f, l] = fundamental_domain(G, q3(mpq_class(7, 3), mpq_class(-5, 2), mpq_class(11, 4)));
    CHECK(f == q3(mpq_class(1, 3), mpq_class(1, 2), mpq_class(3, 4)));
    CHECK(l == q3(2, -3, 3));
    auto [f2, l2] = fundamental_domain(G, q3(mpq_class(1, 2), 0, 0));
    CHECK(f2 == q3(mpq_class(1, 2), 0, 0));
    CHECK(l2 == nil_identity(G));
}

TEST_CASE("tau and the vertical system") {
    CHECK(tau(1, 0) == std::array<int64_t, 4>{2, 3, 0, 6});
    CHECK(tau(0, 1) == std::array<int64_t, 4>{4, 3, 6, 0});
    auto v = vertical_freq_system(1);
    CHECK(v[0] == -9);
    CHECK(v[1] == 8);
    CHECK(v[2] == 2);
    auto z = vertical_freq_system(0);
    CHECK((z[0] == 0 && z[1] == 0 && z[2] == 0));
    auto two = vertical_freq_system(2);
    CHECK((two[0] == -18 && two[1] == 16 && two[2] == 4));
    CHECK(flag_span_check().passed());
}

TEST_CASE("orbit constraint on random sequences") {
    Rng rng(31);
    const auto G = NilGroup::heisenberg();
    for (int t = 0; t < 100; ++t) {
        PolySeq2 s{q3(testgen::rational(rng), testgen::rational(rng), testgen::rational(rng)),
                   q3(testgen::rational(rng), testgen::rational(rng), testgen::rational(rng)),
                   q3(0, 0, testgen::rational(rng))};
        CHECK(constraint_check(G, s, rng.uniform_int(-9, 9), rng.uniform_int(-9, 9)));
    }
}

TEST_CASE("G^tau membership is decided exactly") {
    const auto G = NilGroup::heisenberg();
    GTau t{q3(1, 2, 3), q3(mpq_class(1, 2), 0, 1), q3(0, 0, mpq_class(-2, 7))};
    auto quad = gtau_compose(G, t);
    auto back = gtau_decompose(G, quad);
    REQUIRE(back.has_value());
    CHECK(back->g1 == t.g1);
    CHECK(back->g2 == t.g2);
    quad[3][0] += 1;
    CHECK_FALSE(gtau_decompose(G, quad).has_value());
}

TEST_CASE("horizontal characters") {
    const auto G = NilGroup::heisenberg();
    PolySeq2 s{nil_identity(G), q3(mpq_class(1, 2), 0, 0), nil_identity(G)};
    auto p = horiz_char_apply(G, {2, 0}, s);
    CHECK(cinf_norm(p, 1000) == 0);
    PolySeq2 central{nil_identity(G), nil_identity(G), q3(0, 0, mpq_class(1, 3))};
    auto z = horiz_char_apply(G, {3, -1}, central);
    for (const auto& c : *z.exact) CHECK(c == 0);
    CHECK_THROWS_AS(horiz_char_apply(G, {1, 0, 1}, s), Error);
    auto ob = low_freq_obstruction(G, s, 1000, 5);
    REQUIRE(ob.has_value());
    CHECK(ob->k == std::vector<int64_t>{2, 0});
}

TEST_CASE("serialisation") {
    const auto G = NilGroup::heisenberg();
    auto x = q3(mpq_class(-7, 3), 0, mpq_class(5, 2));
    auto j = nil_point_to_json(G, x);
    CHECK(j.dump() == R"({"group":"heisenberg3","coords":[[-7,3],[0,1],[5,2]]})");
    CHECK(nil_point_from_json(j) == x);
}

TEST_CASE("module suite passes") {
    auto r = verify_nil(1);
    for (const auto& c : r.checks) CHECK_MESSAGE(c.passed, c.name);
}

}
