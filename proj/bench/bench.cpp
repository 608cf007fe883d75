// Serial reference vs parallel kernels on the shipped fixtures.
// usage: icn_bench [threads] [repeats]

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>

#include "icn/fixtures.hpp"
#include "icn/reduce.hpp"
#include "icn/solve.hpp"

using namespace icn;

namespace {

double time_it(int repeats, const std::function<bool()>& body, bool& ok)
{
    const auto t0 = std::chrono::steady_clock::now();
    for (int i = 0; i < repeats; ++i)
        ok = body() && ok;
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count() / repeats;
}

void row(const char* name, double serial, double parallel, bool same)
{
    std::printf("%-34s %10.3f %10.3f %7.2fx %s\n", name, serial, parallel, parallel > 0 ? serial / parallel : 0.0,
                same ? "same" : "DIFFERENT");
}

} // namespace

int main(int argc, char** argv)
{
    const int threads = argc > 1 ? std::atoi(argv[1]) : default_threads();
    const int repeats = argc > 2 ? std::atoi(argv[2]) : 20;
    std::printf("threads=%d repeats=%d\n", threads, repeats);
    std::printf("%-34s %10s %10s %8s\n", "kernel", "serial ms", "par ms", "speedup");

    auto np = fixtures::get("non-pappus");
    const auto& mat = *np.matroid;
    const auto& rep = np.representations.at(0);
    {
        bool a = true, b = true;
        const double s = time_it(repeats, [&] { return verify_representation_serial(mat, rep).ok; }, a);
        const double p = time_it(repeats, [&] { return verify_representation(mat, rep, threads).ok; }, b);
        row("verify_representation non-pappus", s, p, a == b);
    }

    const auto idx = matroid_to_index(mat, rep.field, rep.n);
    const auto code = transport_rep_to_index(mat, rep, idx.instance).code;
    {
        bool a = true, b = true;
        const double s = time_it(repeats, [&] { return verify_linear(idx.instance, code, 1).valid; }, a);
        const double p = time_it(repeats, [&] { return verify_linear(idx.instance, code, threads).valid; }, b);
        row("verify_linear non-pappus (2,3)", s, p, a == b);
    }

    const auto nred = matroid_to_network(mat);
    const auto ncode = matroid_network_code(mat, nred, rep);
    {
        bool a = true, b = true;
        const int r = repeats / 4 + 1;
        const double s = time_it(r, [&] { return verify(nred.network, ncode, 1).valid; }, a);
        const double p = time_it(r, [&] { return verify(nred.network, ncode, threads).valid; }, b);
        row("network verify non-pappus (2,3)", s, p, a == b);
    }

    auto mnet = *fixtures::get("m-network").network;
    auto f2 = Field::get(2, 1);
    for (std::size_t n : {1, 2}) {
        NetSearchResult rs, rp;
        bool ok = true;
        const double s = time_it(repeats, [&] { rs = search_network_code(mnet, f2, n, {}, 1); return true; }, ok);
        const double p = time_it(repeats, [&] { rp = search_network_code(mnet, f2, n, {}, threads); return true; }, ok);
        const bool same = rs.status == rp.status && rs.visited == rp.visited &&
                          (!rs.code || rs.code->F == rp.code->F);
        row(n == 1 ? "search_network_code m-net (1,2)" : "search_network_code m-net (2,2)", s, p, same);
    }

    for (unsigned q : {3u, 4u}) {
        ScalarSearchResult rs, rp;
        bool ok = true;
        const auto F = Field::of_order(q);
        const double s = time_it(repeats, [&] { rs = search_representation_scalar(mat, F, {}, 1); return true; }, ok);
        const double p =
            time_it(repeats, [&] { rp = search_representation_scalar(mat, F, {}, threads); return true; }, ok);
        row(q == 3 ? "scalar search non-pappus GF(3)" : "scalar search non-pappus GF(4)", s, p,
            rs.status == rp.status && rs.visited == rp.visited);
    }

    const auto bidx = *fixtures::get("butterfly-index").instance;
    for (unsigned q : {4u, 5u}) {
        MinIndexResult rs, rp;
        bool ok = true;
        const auto F = Field::of_order(q);
        const double s = time_it(repeats, [&] { rs = min_linear_index(bidx, F, 1, {}, 1); return true; }, ok);
        const double p = time_it(repeats, [&] { rp = min_linear_index(bidx, F, 1, {}, threads); return true; }, ok);
        row(q == 4 ? "min_linear_index butterfly (1,4)" : "min_linear_index butterfly (1,5)", s, p,
            rs.status == rp.status && rs.visited == rp.visited && rs.witness->L == rp.witness->L);
    }
    return 0;
}
