#include "doctest.h"

#include "gen.hpp"
#include "icn/fixtures.hpp"
#include "icn/netcode.hpp"

using namespace icn;

namespace {

std::size_t internal(const NetworkInstance& net, std::size_t original)
{
    for (std::size_t e = 0; e < net.m(); ++e)
        if (net.original_index(e) == original)
            return e;
    throw std::logic_error("no such edge");
}

std::vector<Elem> random_xi(gen::Rng& rng, unsigned q, std::size_t len)
{
    std::vector<Elem> xi(len);
    for (auto& v : xi)
        v = Elem(rng() % q);
    return xi;
}

} // namespace

TEST_CASE("re-indexing puts inputs first and outputs last")
{
    auto net = *fixtures::get("butterfly-network").network;
    CHECK(net.m() == 11);
    CHECK(net.k() == 2);
    CHECK(net.d() == 2);
    CHECK(net.outputs() == std::vector<std::size_t>{9, 10});
    CHECK(net.demand(9) == 1);
    CHECK(net.demand(10) == 0);
    std::vector<int> pos(net.m());
    for (std::size_t i = 0; i < net.m(); ++i)
        pos[net.topo_order()[i]] = int(i);
    for (std::size_t e = 0; e < net.m(); ++e)
        for (std::size_t p : net.parents(e))
            CHECK(pos[p] < pos[e]);
}

TEST_CASE("malformed networks")
{
    CHECK_THROWS_AS(NetworkInstance(2, {{std::nullopt, 0}, {0, 1}, {1, 0}, {1, std::nullopt}}, {{3, 0}}),
                    DomainError);
    CHECK_THROWS_AS(NetworkInstance(1, {{std::nullopt, std::nullopt}}, {}), DomainError);
    CHECK_THROWS_AS(NetworkInstance(1, {{std::nullopt, 0}, {0, std::nullopt}}, {}), DomainError);
    CHECK_THROWS_AS(NetworkInstance(1, {{std::nullopt, 0}, {0, std::nullopt}}, {{1, 1}}), DomainError);
}

TEST_CASE("butterfly code and a broken variant")
{
    auto fx = fixtures::get("butterfly-network");
    const auto& net = *fx.network;
    auto code = *fx.network_code;
    auto rep = verify(net, code);
    CHECK(rep.valid);
    auto f2 = code.field;
    const auto sum = block_selector(f2, 2, 1, 0) + block_selector(f2, 2, 1, 1);
    CHECK(code.F[internal(net, 2)] == sum);
    CHECK(verify(net, to_table(net, code)).valid);

    auto broken = code;
    for (std::size_t orig : {2u, 7u, 8u})
        broken.F[internal(net, orig)] = block_selector(f2, 2, 1, 0);
    auto bad = verify(net, broken);
    CHECK_FALSE(bad.valid);
    CHECK((bad.condition == "N2" || bad.condition == "N3"));
    CHECK_FALSE(verify(net, to_table(net, broken)).valid);

    auto wrong_input = code;
    wrong_input.F[0] = block_selector(f2, 2, 1, 1);
    auto r1 = verify(net, wrong_input);
    CHECK_FALSE(r1.valid);
    CHECK(r1.condition == "N1");
}

TEST_CASE("path network")
{
    NetworkInstance path(1, {{std::nullopt, 0}, {0, std::nullopt}}, {{1, 0}});
    auto f3 = Field::get(3, 1);
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        auto code = random_code(path, f3, 2, seed);
        REQUIRE(code);
        CHECK(code->F[1] == code->F[0]);
        CHECK(verify(path, *code).valid);
    }
}

TEST_CASE("random_code")
{
    auto net = *fixtures::get("butterfly-network").network;
    auto f2 = Field::get(2, 1);
    bool any = false;
    for (std::uint64_t seed = 0; seed < 10 && !any; ++seed)
        if (auto c = random_code(net, f2, 1, seed)) {
            CHECK(verify(net, *c).valid);
            any = true;
        }
    CHECK(any);

    // two messages through a single unit edge to a sink that wants both
    NetworkInstance cut(2, {{std::nullopt, 0}, {std::nullopt, 0}, {0, 1}, {1, std::nullopt}, {1, std::nullopt}},
                        {{3, 0}, {4, 1}});
    for (std::uint64_t seed = 0; seed < 10; ++seed)
        CHECK_FALSE(random_code(cut, f2, 1, seed));
}

TEST_CASE("property: local encoders reproduce global ones")
{
    gen::Rng rng(17);
    int tried = 0;
    for (int t = 0; t < 400 && tried < 100; ++t) {
        auto g = gen::network(rng);
        if (!g)
            continue;
        NetworkInstance net(g->nodes, g->edges, g->delta);
        auto f = Field::of_order(t % 2 ? 3 : 2);
        const std::size_t n = 1 + rng() % 2;
        auto code = random_code(net, f, n, rng());
        if (!code)
            continue;
        ++tried;
        auto rep = verify(net, *code);
        REQUIRE(rep.valid);
        for (int s = 0; s < 100; ++s) {
            auto xi = random_xi(rng, f->q(), n * net.k());
            auto vals = evaluate_local(net, *code, rep.local, xi);
            for (std::size_t e = 0; e < net.m(); ++e)
                CHECK(vals[e] == vec_mul(xi, code->F[e]));
        }
        if (n * net.k() <= 8)
            CHECK(verify(net, to_table(net, *code)).valid);
    }
    CHECK(tried >= 50);
}

TEST_CASE("property: linear and table verify agree on perturbed codes")
{
    gen::Rng rng(23);
    int checked = 0;
    for (int t = 0; t < 400 && checked < 100; ++t) {
        auto g = gen::network(rng);
        if (!g)
            continue;
        NetworkInstance net(g->nodes, g->edges, g->delta);
        auto f = Field::of_order(2);
        auto code = random_code(net, f, 1, rng());
        if (!code)
            continue;
        auto broken = *code;
        const std::size_t e = rng() % net.m();
        broken.F[e] = gen::matrix(rng, f, net.k(), 1);
        CHECK(verify(net, broken).valid == verify(net, to_table(net, broken)).valid);
        ++checked;
    }
    CHECK(checked >= 50);
}
