#include "doctest.h"

#include "gen.hpp"
#include "icn/fixtures.hpp"
#include "icn/matroid.hpp"

using namespace icn;

namespace {

// Independent axiom oracle: straight from the definitions, no shortcuts.
bool axioms_hold(const Matroid& m)
{
    const Mask full = m.ground();
    if (m.rank(0) != 0)
        return false;
    for (Mask a = 0; a <= full; ++a) {
        if (m.rank(a) > popcount(a))
            return false;
        for (Mask b = 0; b <= full; ++b) {
            if ((a & b) == a && m.rank(a) > m.rank(b))
                return false;
            if (m.rank(a | b) + m.rank(a & b) > m.rank(a) + m.rank(b))
                return false;
        }
    }
    return true;
}

std::vector<Mask> brute_circuits(const Matroid& m)
{
    std::vector<Mask> out;
    for (Mask c = 1; c <= m.ground(); ++c) {
        if (m.rank(c) == popcount(c))
            continue;
        bool minimal = true;
        for (std::size_t e : elements_of(c))
            minimal = minimal && m.rank(c & ~(Mask(1) << e)) == popcount(c) - 1;
        if (minimal)
            out.push_back(c);
    }
    return out;
}

Mask set(std::initializer_list<std::size_t> oneBased)
{
    Mask s = 0;
    for (auto e : oneBased)
        s |= Mask(1) << (e - 1);
    return s;
}

} // namespace

TEST_CASE("uniform U23")
{
    auto u = Matroid::uniform(2, 3);
    CHECK(check_axioms(u).ok);
    CHECK(bases(u) == std::vector<Mask>{set({1, 2}), set({1, 3}), set({2, 3})});
    CHECK(circuits(u) == std::vector<Mask>{set({1, 2, 3})});
}

TEST_CASE("free matroid")
{
    auto fr = Matroid::uniform(3, 3);
    CHECK(bases(fr) == std::vector<Mask>{set({1, 2, 3})});
    CHECK(circuits(fr).empty());
}

TEST_CASE("M1 violation is reported")
{
    Matroid bad(1, {0, 2});
    auto r = check_axioms(bad);
    CHECK_FALSE(r.ok);
    CHECK(r.axiom == "M1");
    CHECK(r.a == 1);
    CHECK_THROWS_AS(Matroid(2, {0, 1, 1}), DomainError);
}

TEST_CASE("non-Pappus")
{
    auto np = *fixtures::get("non-pappus").matroid;
    CHECK(check_axioms(np).ok);
    CHECK(axioms_hold(np));
    CHECK(bases(np).size() == 76);
    auto cs = circuits(np);
    CHECK(cs == brute_circuits(np));
    CHECK(cs.size() == 86);
    std::size_t triples = 0;
    for (Mask c : cs)
        triples += popcount(c) == 3;
    CHECK(triples == 8);
    CHECK(np.rank(set({1, 2, 3})) == 2);
    CHECK(np.rank(set({1, 2, 4})) == 3);
}

TEST_CASE("representations")
{
    auto u = Matroid::uniform(2, 3);
    auto f2 = Field::get(2, 1);
    for (const auto& rep : fixtures::get("u23").representations) {
        CHECK(verify_representation(u, rep).ok);
        CHECK(verify_representation_serial(u, rep).ok);
    }
    Representation typo{f2, 1, {Matrix(f2, 2, 1, {0, 1}), Matrix(f2, 2, 1, {0, 1}), Matrix(f2, 2, 1, {1, 1})}};
    auto r = verify_representation(u, typo);
    CHECK_FALSE(r.ok);
    CHECK(r.failing == set({1, 2}));
    CHECK(r.expected == 2);
    CHECK(r.actual == 1);

    auto npfx = fixtures::get("non-pappus");
    CHECK(verify_representation(*npfx.matroid, npfx.representations.at(0), 4).ok);
    CHECK(Matroid::from_matrices(npfx.representations.at(0).mats, 2) == *npfx.matroid);
}

TEST_CASE("scalar search")
{
    auto u = Matroid::uniform(2, 3);
    auto f2 = Field::get(2, 1);
    auto r = search_representation_scalar(u, f2);
    REQUIRE(r.status == SearchStatus::found);
    CHECK(verify_representation(u, *r.rep).ok);
    CHECK(r.rep->mats[0] == Matrix(f2, 2, 1, {1, 0}));
    CHECK(r.rep->mats[1] == Matrix(f2, 2, 1, {0, 1}));
    CHECK(r.rep->mats[2] == Matrix(f2, 2, 1, {1, 1}));

    // U24 needs four pairwise independent vectors; GF(2)^2 has three nonzero ones
    CHECK(search_representation_scalar(Matroid::uniform(2, 4), f2).status == SearchStatus::none);
    auto r3 = search_representation_scalar(Matroid::uniform(2, 4), Field::get(3, 1));
    CHECK(r3.status == SearchStatus::found);

    auto np = *fixtures::get("non-pappus").matroid;
    for (unsigned q : {2u, 3u})
        CHECK(search_representation_scalar(np, Field::of_order(q), {}, 2).status == SearchStatus::none);
}

TEST_CASE("property: representable rank tables are matroids")
{
    gen::Rng rng(31337);
    for (int t = 0; t < 100; ++t) {
        auto f = Field::of_order(t % 2 ? 3 : 2);
        const std::size_t m = 1 + rng() % 6;
        const std::size_t k = 1 + rng() % 3;
        std::vector<Matrix> mats;
        for (std::size_t i = 0; i < m; ++i)
            mats.push_back(gen::matrix(rng, f, k, 1));
        auto mt = Matroid::from_matrices(mats, 1);
        CHECK(check_axioms(mt).ok);
        CHECK(axioms_hold(mt));
        // bases and circuits are consistent
        auto bs = bases(mt);
        auto cs = circuits(mt);
        for (Mask b : bs)
            for (Mask c : cs)
                CHECK((b & c) != c);
        for (Mask c : cs)
            for (std::size_t e : elements_of(c))
                CHECK(mt.rank(c & ~(Mask(1) << e)) == popcount(c) - 1);
        if (mt.rank() != k)
            continue;
        Representation rep{f, 1, mats};
        CHECK(verify_representation_serial(mt, rep).ok);
        CHECK(verify_representation(mt, rep, 2).ok == verify_representation_serial(mt, rep).ok);
    }
}

TEST_CASE("property: scalar search finds every representable matroid")
{
    gen::Rng rng(77);
    int found = 0;
    for (int t = 0; t < 60; ++t) {
        auto f = Field::of_order(t % 2 ? 3 : 4);
        const std::size_t k = 2 + rng() % 2;
        const std::size_t m = k + 1 + rng() % 4;
        std::vector<Matrix> mats;
        for (std::size_t i = 0; i < m; ++i)
            mats.push_back(gen::matrix(rng, f, k, 1));
        auto mt = Matroid::from_matrices(mats, 1);
        if (mt.rank() != k)
            continue;
        auto r = search_representation_scalar(mt, f);
        REQUIRE(r.status == SearchStatus::found);
        CHECK(verify_representation(mt, *r.rep).ok);
        ++found;
    }
    CHECK(found > 30);
}
