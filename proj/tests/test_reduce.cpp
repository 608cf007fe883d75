#include "doctest.h"

#include <algorithm>

#include "gen.hpp"
#include "icn/fixtures.hpp"
#include "icn/reduce.hpp"
#include "icn/solve.hpp"

using namespace icn;

namespace {

std::size_t count_tag(const ReductionTrace& t, const std::string& tag)
{
    return std::size_t(std::count(t.tags.begin(), t.tags.end(), tag));
}

} // namespace

TEST_CASE("net_to_index on the single-edge network")
{
    NetworkInstance one(1, {{std::nullopt, 0}}, {{0, 0}});
    auto red = net_to_index(one, Field::get(2, 1));
    const auto& inst = red.instance;
    CHECK(inst.k() == 2);
    CHECK(inst.names() == std::vector<std::string>{"x1", "y1"});
    CHECK(inst.clients() == std::vector<Client>{{0, {1}}, {1, {0}}});
    CHECK(red.trace.tags == std::vector<std::string>{"R1", "R2"});
    CHECK(mu(inst) == 1);
}

TEST_CASE("net_to_index on the butterfly")
{
    auto net = *fixtures::get("butterfly-network").network;
    auto red = net_to_index(net, Field::get(2, 1));
    // 2k + (m - k) + d + m families, none overlapping here
    CHECK(red.instance.clients().size() == 2 * 2 + 9 + 2 + 11);
    CHECK(red.trace.tags.size() == red.instance.clients().size());
    CHECK(count_tag(red.trace, "R3") == 9);
    CHECK(mu(red.instance) == net.m());
}

TEST_CASE("matroid_to_index counts")
{
    auto u = Matroid::uniform(2, 3);
    auto red = matroid_to_index(u, Field::get(2, 1));
    CHECK(red.instance.k() == 5);
    CHECK(count_tag(red.trace, "R1") == 6);
    CHECK(count_tag(red.trace, "R2") == 3);
    CHECK(count_tag(red.trace, "R3") == 3);
    CHECK(mu(red.instance) == 3);
    CHECK(describe_client(red.instance, red.instance.clients()[0]) == "(x1,{y1,y2})");

    auto np = *fixtures::get("non-pappus").matroid;
    auto rnp = matroid_to_index(np, Field::get(3, 1), 2);
    CHECK(rnp.instance.k() == 12);
    CHECK(count_tag(rnp.trace, "R1") == 228);
    CHECK(mu(rnp.instance) == 9);
    auto small = matroid_to_index(np, Field::get(3, 1), 2, 3);
    CHECK(count_tag(small.trace, "R2") == 24);

    auto free2 = matroid_to_index(Matroid::uniform(2, 2), Field::get(2, 1));
    CHECK(count_tag(free2.trace, "R2") == 0);
}

TEST_CASE("index_to_network")
{
    auto inst = *fixtures::get("butterfly-index").instance;
    auto red = index_to_network(inst, 2);
    const auto& net = red.network;
    CHECK(net.k() == 4);
    CHECK(net.nodes() == 4 + 2 + 4);
    std::size_t bottlenecks = 0;
    for (const auto& r : red.roles)
        bottlenecks += r.kind == EdgeRole::bottleneck;
    CHECK(bottlenecks == 2);
    CHECK(red.trace.node_labels.size() == net.nodes());
    CHECK_THROWS_AS(index_to_network(inst, 0), DomainError);

    auto f2 = Field::get(2, 1);
    IndexInstance lone(f2, 1, 1, {{0, {}}});
    auto r1 = index_to_network(lone, 1);
    auto s = search_network_code(r1.network, f2, 1);
    CHECK(s.status == SearchStatus::found);
}

TEST_CASE("matroid_to_network shape and induced code")
{
    auto u = Matroid::uniform(2, 3);
    auto red = matroid_to_network(u);
    CHECK(red.trace.node_labels.size() == 5 + 3 + 3 + 12);
    CHECK(red.network.k() == 5);
    CHECK(red.trace.node_labels[0] == "s1 x1");
    CHECK(red.trace.node_labels[2] == "s3 y1");
    for (const auto& rep : fixtures::get("u23").representations) {
        auto code = matroid_network_code(u, red, rep);
        CHECK(verify(red.network, code).valid);
    }
}

TEST_CASE("network transports on the fixtures")
{
    for (const char* name : {"butterfly-network", "m-network"}) {
        CAPTURE(name);
        auto fx = fixtures::get(name);
        const auto& net = *fx.network;
        const auto& code = *fx.network_code;
        auto idx = net_to_index(net, code.field, code.n);
        auto lin = transport_net_to_index(net, code);
        CHECK(lin.c() == net.m() * code.n);
        CHECK(verify_linear(idx.instance, lin).valid);
        CHECK(is_perfect(idx.instance, lin));
        auto back = transport_index_to_net(net, lin);
        CHECK(verify(net, back).valid);
    }
}

TEST_CASE("index_to_net rejects bad inputs")
{
    auto net = *fixtures::get("butterfly-network").network;
    auto f2 = Field::get(2, 1);
    const std::size_t k = net.k(), m = net.m();
    // y's in clear: the x-part is zero, so (x_i,{y_i}) cannot decode
    Matrix L(f2, k + m, m);
    L.set_block(k, 0, Matrix::identity(f2, m));
    CHECK_THROWS_AS(transport_index_to_net(net, {f2, 1, L}), InvalidCode);
    CHECK_THROWS_AS(transport_index_to_net(net, {f2, 1, Matrix(f2, k + m, m - 1)}), PreconditionError);
    // singular y-part
    Matrix S(f2, k + m, m);
    CHECK_THROWS_AS(transport_index_to_net(net, {f2, 1, S}), InvalidCode);
}

TEST_CASE("representation transports")
{
    auto u = Matroid::uniform(2, 3);
    for (const auto& rep : fixtures::get("u23").representations) {
        auto idx = matroid_to_index(u, rep.field, rep.n);
        auto out = transport_rep_to_index(u, rep, idx.instance);
        CHECK(out.code.c() == 3 * rep.n);
        CHECK(verify_linear(idx.instance, out.code).valid);
        CHECK(is_perfect(idx.instance, out.code));
        auto back = transport_index_to_rep(u, out.code);
        CHECK(verify_representation(u, back).ok);
    }

    auto np = fixtures::get("non-pappus");
    const auto& rep = np.representations.at(0);
    auto idx = matroid_to_index(*np.matroid, rep.field, rep.n);
    auto out = transport_rep_to_index(*np.matroid, rep, idx.instance);
    CHECK(out.code.c() == 18);
    CHECK(verify_linear(idx.instance, out.code).valid);
    CHECK(is_perfect(idx.instance, out.code));
    CHECK(verify_representation(*np.matroid, transport_index_to_rep(*np.matroid, out.code)).ok);

    auto f2 = Field::get(2, 1);
    auto u_idx = matroid_to_index(u, f2, 1);
    LinearIndexCode clear{f2, 1, Matrix::identity(f2, 5)};
    CHECK_THROWS_AS(transport_index_to_rep(u, clear), PreconditionError);
}

TEST_CASE("property: network round trip on random DAGs")
{
    gen::Rng rng(4242);
    int done = 0;
    for (int t = 0; t < 1000 && done < 100; ++t) {
        auto g = gen::network(rng);
        if (!g)
            continue;
        NetworkInstance net(g->nodes, g->edges, g->delta);
        auto f = Field::of_order(t % 2 ? 3 : 2);
        const std::size_t n = 1 + rng() % 2;
        auto code = random_code(net, f, n, rng());
        if (!code)
            continue;
        auto idx = net_to_index(net, f, n);
        CHECK(mu(idx.instance) == net.m());
        auto lin = transport_net_to_index(net, *code);
        CHECK(verify_linear(idx.instance, lin).valid);
        CHECK(is_perfect(idx.instance, lin));
        CHECK(verify(net, transport_index_to_net(net, lin)).valid);
        ++done;
    }
    CHECK(done == 100);
}
