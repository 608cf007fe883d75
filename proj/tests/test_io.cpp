#include "doctest.h"

#include "icn/fixtures.hpp"
#include "icn/io.hpp"

using namespace icn;

TEST_CASE("every fixture bundle passes")
{
    for (const auto& name : fixtures::names()) {
        CAPTURE(name);
        auto fx = fixtures::get(name);
        for (const auto& c : fixtures::check(fx, true, 2)) {
            CAPTURE(c.what);
            CHECK(c.pass);
        }
    }
    CHECK_THROWS_AS(fixtures::get("nope"), DomainError);
}

TEST_CASE("round trips")
{
    auto bi = fixtures::get("butterfly-index");
    auto inst_j = io::to_json(*bi.instance);
    CHECK(io::to_json(io::instance_from_json(inst_j)) == inst_j);
    auto code_j = io::to_json(*bi.index_code);
    auto code = std::get<LinearIndexCode>(io::index_code_from_json(code_j, *bi.instance));
    CHECK(code.L == bi.index_code->L);
    auto table = to_table(*bi.index_code, 4);
    auto tj = io::to_json(table);
    CHECK(std::get<TableCode>(io::index_code_from_json(tj, *bi.instance)).outputs == table.outputs);

    for (const char* name : {"butterfly-network", "m-network"}) {
        auto fx = fixtures::get(name);
        auto nj = io::to_json(*fx.network);
        auto net2 = io::network_from_json(nj);
        CHECK(io::to_json(net2) == nj);
        CHECK(nj == io::parse(*fixtures::file(std::string(name) + ".json")));
        auto cj = io::to_json(*fx.network, *fx.network_code);
        auto c2 = std::get<NetworkCode>(io::network_code_from_json(cj, net2));
        CHECK(c2.F == fx.network_code->F);
    }

    auto np = fixtures::get("non-pappus");
    auto mj = io::to_json(*np.matroid);
    CHECK(io::matroid_from_json(mj) == *np.matroid);
    auto rj = io::to_json(np.representations[0]);
    CHECK(io::representation_from_json(rj).mats == np.representations[0].mats);
}

TEST_CASE("one-based clients in files")
{
    auto j = io::parse(R"({"field": 3, "n": 1, "k": 2, "clients": [{"demand": 2, "side": [1]}]})");
    auto inst = io::instance_from_json(j);
    CHECK(inst.field()->q() == 3);
    CHECK(inst.clients()[0] == Client{1, {0}});
}

TEST_CASE("malformed input")
{
    CHECK_THROWS_AS(io::parse("{"), MalformedInput);
    CHECK_THROWS_AS(io::instance_from_json(io::parse(R"({"field": 2, "n": 1})")), MalformedInput);
    CHECK_THROWS_AS(io::instance_from_json(io::parse(R"({"field": 2, "n": 1, "k": "x", "clients": []})")),
                    MalformedInput);
    CHECK_THROWS_AS(io::matroid_from_json(io::parse(R"({"m": 3, "kind": "weird"})")), MalformedInput);
    CHECK_THROWS_AS(io::load("/nonexistent/file.json"), MalformedInput);
}
