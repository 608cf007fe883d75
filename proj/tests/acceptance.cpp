// Acceptance run: one line per criterion, non-zero exit if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "gen.hpp"
#include "icn/fixtures.hpp"
#include "icn/reduce.hpp"
#include "icn/solve.hpp"

using namespace icn;

namespace {

constexpr double fast_budget_s = 1.0;
constexpr double scalar_search_budget_s = 60.0;
constexpr double m_network_budget_s = 600.0;
constexpr std::size_t random_dags = 100;
constexpr std::size_t table_guard = std::size_t(1) << 12;
constexpr std::uint64_t seed = 20240611;

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0)
{
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
    bool pass = true;
    std::string detail;

    void require(bool cond, const std::string& what)
    {
        if (!cond) {
            pass = false;
            if (!detail.empty())
                detail += "; ";
            detail += what;
        }
    }
};

// Every linear index code produced along the way, for the oracle cross-check.
struct Sample {
    IndexInstance inst;
    LinearIndexCode code;
};
std::vector<Sample> samples;

void keep(const IndexInstance& inst, const LinearIndexCode& code)
{
    samples.push_back({inst, code});
}

std::size_t table_inputs(const IndexInstance& inst)
{
    std::size_t x = 1;
    for (std::size_t i = 0; i < inst.n() * inst.k(); ++i) {
        x *= inst.field()->q();
        if (x > table_guard)
            return x;
    }
    return x;
}

bool has_separation(const RateReport& r, unsigned q, std::size_t fast_n, std::size_t slow_n)
{
    for (const auto& s : r.separations) {
        const auto& a = r.entries[s.fast];
        const auto& b = r.entries[s.slow];
        if (a.q == q && b.q == q && a.n == fast_n && b.n == slow_n)
            return true;
    }
    return false;
}

const int threads = default_threads();

Outcome butterfly()
{
    Outcome o;
    const auto t0 = Clock::now();
    auto fx = fixtures::get("butterfly-index");
    const auto& inst = *fx.instance;
    const auto& code = *fx.index_code;
    o.require(verify_linear(inst, code).valid, "shipped code rejected");
    keep(inst, code);
    auto r = min_linear_index(inst, Field::get(2, 1), 1, {}, threads);
    o.require(r.c() == 2, "c_min != 2");
    o.require(!r.levels.empty() && r.levels[0].c == 1 && r.levels[0].status == SearchStatus::none &&
                  r.levels[0].visited == 15,
              "length-1 level not exhausted over 15 candidates");
    if (r.witness) {
        o.require(verify_linear(inst, *r.witness).valid, "witness rejected");
        keep(inst, *r.witness);
    }
    o.require(mu(inst) == 1, "mu != 1");
    const double s = since(t0);
    o.require(s < fast_budget_s, "took " + std::to_string(s) + " s");
    o.detail = o.pass ? "c_min=2 after 15 length-1 candidates, mu=1, " + std::to_string(s) + " s" : o.detail;
    return o;
}

Outcome u23()
{
    Outcome o;
    const auto t0 = Clock::now();
    auto fx = fixtures::get("u23");
    const auto& mat = *fx.matroid;
    o.require(fx.representations.size() == 2, "expected two representations");
    for (const auto& rep : fx.representations) {
        const std::string tag = "n=" + std::to_string(rep.n) + ": ";
        o.require(verify_representation(mat, rep, threads).ok, tag + "representation rejected");
        auto idx = matroid_to_index(mat, rep.field, rep.n);
        auto out = transport_rep_to_index(mat, rep, idx.instance);
        o.require(verify_linear(idx.instance, out.code).valid, tag + "index code rejected");
        o.require(out.code.c() == 3 * rep.n && mu(idx.instance) == 3, tag + "not perfect");
        o.require(is_perfect(idx.instance, out.code), tag + "is_perfect false");
        keep(idx.instance, out.code);
        auto back = transport_index_to_rep(mat, out.code);
        o.require(verify_representation(mat, back).ok, tag + "round trip rejected");
    }
    const double s = since(t0);
    o.require(s < fast_budget_s, "took " + std::to_string(s) + " s");
    o.detail = o.pass ? "both representations verify and round-trip, c=3n, " + std::to_string(s) + " s" : o.detail;
    return o;
}

Outcome non_pappus()
{
    Outcome o;
    auto fx = fixtures::get("non-pappus");
    const auto& mat = *fx.matroid;
    const auto& rep = fx.representations.at(0);

    auto t0 = Clock::now();
    o.require(verify_representation(mat, rep, threads).ok, "2-linear representation rejected");
    const double vs = since(t0);
    o.require(vs < fast_budget_s, "rank check took " + std::to_string(vs) + " s");

    std::string times;
    for (unsigned q : {2u, 3u, 4u}) {
        t0 = Clock::now();
        auto r = search_representation_scalar(mat, Field::of_order(q), {50'000'000, scalar_search_budget_s}, threads);
        const double s = since(t0);
        o.require(r.status == SearchStatus::none, "GF(" + std::to_string(q) + ") search not exhausted as none");
        o.require(s < scalar_search_budget_s, "GF(" + std::to_string(q) + ") search took " + std::to_string(s) + " s");
        times += " GF(" + std::to_string(q) + ") " + std::to_string(s) + " s";
    }

    auto idx = matroid_to_index(mat, rep.field, rep.n);
    auto out = transport_rep_to_index(mat, rep, idx.instance);
    o.require(verify_linear(idx.instance, out.code).valid, "transported code rejected");
    o.require(out.code.c() == 18 && mu(idx.instance) == 9, "lambda != mu = 9");
    keep(idx.instance, out.code);

    auto report = fixtures::report("non-pappus", {}, threads);
    o.require(has_separation(report, 3, 2, 1), "no (2,3) vs (1,3) separation in the rate report");
    o.detail = o.pass ? "512 subsets verify, scalar search none:" + times + "; perfect (2,3) code, lambda=mu=9" : o.detail;
    return o;
}

Outcome m_network()
{
    Outcome o;
    const auto t0 = Clock::now();
    auto fx = fixtures::get("m-network");
    const auto& net = *fx.network;
    const SearchBudget budget{500'000'000, m_network_budget_s};
    auto f2 = Field::get(2, 1);
    o.require(search_network_code(net, f2, 1, budget, threads).status == SearchStatus::none, "(1,2) not none");
    o.require(search_network_code(net, Field::get(3, 1), 1, budget, threads).status == SearchStatus::none,
              "(1,3) not none");
    auto r = search_network_code(net, f2, 2, budget, threads);
    o.require(r.status == SearchStatus::found, "(2,2) not found");
    if (r.code) {
        o.require(verify(net, *r.code).valid, "(2,2) code rejected");
        auto idx = net_to_index(net, f2, 2);
        auto lin = transport_net_to_index(net, *r.code);
        o.require(verify_linear(idx.instance, lin).valid, "transported code rejected");
        o.require(mu(idx.instance) == net.m() && lin.c() == 2 * net.m(), "lambda != mu = m");
        keep(idx.instance, lin);
    }
    auto report = fixtures::report("m-network", budget, threads);
    o.require(has_separation(report, 2, 2, 1), "no (2,2) vs (1,2) separation in the rate report");
    const double s = since(t0);
    o.require(s < m_network_budget_s, "took " + std::to_string(s) + " s");
    o.detail = o.pass ? "(1,2) none, (1,3) none, (2,2) found, lambda=mu=34, " + std::to_string(s) + " s" : o.detail;
    return o;
}

struct DagCase {
    NetworkInstance net;
    NetworkCode code;
};
std::vector<DagCase> dags;

Outcome round_trip()
{
    Outcome o;
    gen::Rng rng(seed);
    std::size_t failures = 0, tries = 0;
    while (dags.size() < random_dags && tries < 20 * random_dags) {
        ++tries;
        auto g = gen::network(rng);
        if (!g)
            continue;
        NetworkInstance net(g->nodes, g->edges, g->delta);
        auto f = Field::of_order(rng() % 2 ? 3 : 2);
        const std::size_t n = 1 + rng() % 2;
        auto code = random_code(net, f, n, rng());
        if (!code)
            continue;
        auto idx = net_to_index(net, f, n);
        auto lin = transport_net_to_index(net, *code);
        bool ok = verify_linear(idx.instance, lin).valid && is_perfect(idx.instance, lin);
        try {
            ok = ok && verify(net, transport_index_to_net(net, lin)).valid;
        } catch (const std::exception&) {
            ok = false;
        }
        failures += !ok;
        keep(idx.instance, lin);
        dags.push_back({net, *code});
    }
    o.require(dags.size() >= random_dags, "only " + std::to_string(dags.size()) + " coded DAGs generated");
    o.require(failures == 0, std::to_string(failures) + " round-trip failures");
    o.detail = o.pass ? std::to_string(dags.size()) + " random DAGs, 0 failures" : o.detail;
    return o;
}

Outcome table_transport()
{
    Outcome o;
    std::size_t checked = 0, failures = 0;
    for (const auto& d : dags) {
        auto idx = net_to_index(d.net, d.code.field, d.code.n);
        if (table_inputs(idx.instance) > table_guard)
            continue;
        auto tab = transport_net_to_index(d.net, to_table(d.net, d.code));
        failures += !verify_table(idx.instance, tab).valid;
        ++checked;
    }
    o.require(checked > 0, "no instance within the table guard");
    o.require(failures == 0, std::to_string(failures) + " table failures");
    o.detail = o.pass ? std::to_string(checked) + " table codes verify (of " + std::to_string(dags.size()) + " DAGs)"
                      : o.detail;
    return o;
}

Outcome mu_bound()
{
    Outcome o;
    const auto& st = mu_bound_stats();
    o.require(st.checked.load() > 0, "no verified codes recorded");
    o.require(st.violations.load() == 0, std::to_string(st.violations.load()) + " violations");
    o.detail = o.pass ? std::to_string(st.checked.load()) + " verified codes, 0 violations" : o.detail;
    return o;
}

Outcome bottleneck_equivalence()
{
    Outcome o;
    auto inst = *fixtures::get("butterfly-index").instance;
    auto f2 = Field::get(2, 1);
    auto two = index_to_network(inst, 2);
    auto r2 = search_network_code(two.network, f2, 1, {}, threads);
    o.require(r2.status == SearchStatus::found, "c=2 network has no (1,2) code");
    if (r2.code)
        o.require(verify(two.network, *r2.code).valid, "c=2 code rejected");
    auto one = index_to_network(inst, 1);
    o.require(search_network_code(one.network, f2, 1, {}, threads).status == SearchStatus::none,
              "c=1 network not certified infeasible");
    o.detail = o.pass ? "c=2 found, c=1 none" : o.detail;
    return o;
}

Outcome matroid_networks()
{
    Outcome o;
    auto u = fixtures::get("u23");
    auto ured = matroid_to_network(*u.matroid);
    const auto& scalar = u.representations.at(0);
    o.require(scalar.n == 1 && scalar.field->q() == 2, "u23 scalar representation missing");
    o.require(verify(ured.network, matroid_network_code(*u.matroid, ured, scalar)).valid, "U23 network code rejected");

    auto np = fixtures::get("non-pappus");
    auto nred = matroid_to_network(*np.matroid);
    const auto& rep = np.representations.at(0);
    auto code = matroid_network_code(*np.matroid, nred, rep);
    o.require(verify(nred.network, code, threads).valid, "non-Pappus network code rejected");
    o.detail = o.pass ? "U23 (1,2) and non-Pappus (2,3) codes verify on " + std::to_string(ured.network.m()) + " and " +
                            std::to_string(nred.network.m()) + " edges"
                      : o.detail;
    return o;
}

Outcome oracles()
{
    Outcome o;
    std::size_t compared = 0, disagree = 0;
    for (const auto& s : samples) {
        if (table_inputs(s.inst) > table_guard)
            continue;
        const bool lin = verify_linear(s.inst, s.code).valid;
        const bool tab = verify_table(s.inst, to_table(s.code, s.inst.k())).valid;
        disagree += lin != tab;
        ++compared;
    }
    o.require(compared > 0, "no code within the table guard");
    o.require(disagree == 0, std::to_string(disagree) + " disagreements");

    gen::Rng rng(seed + 1);
    std::size_t bad = 0;
    for (int t = 0; t < 100; ++t) {
        auto f = Field::of_order(t % 2 ? 3 : 2);
        const std::size_t m = 1 + rng() % 6;
        const std::size_t k = 1 + rng() % 3;
        std::vector<Matrix> mats;
        for (std::size_t i = 0; i < m; ++i)
            mats.push_back(gen::matrix(rng, f, k, 1));
        bad += !check_axioms(Matroid::from_matrices(mats, 1)).ok;
    }
    o.require(bad == 0, std::to_string(bad) + " rank tables fail the axioms");
    o.detail = o.pass ? std::to_string(compared) + " codes agree, 100 matrix families are matroids" : o.detail;
    return o;
}

} // namespace

int main()
{
    struct Criterion {
        const char* name;
        std::function<Outcome()> run;
        Outcome outcome;
    };
    std::vector<Criterion> criteria{
        {"butterfly", butterfly, {}},
        {"U23 representations", u23, {}},
        {"non-Pappus", non_pappus, {}},
        {"M-network", m_network, {}},
        {"network/index round trip", round_trip, {}},
        {"table transport", table_transport, {}},
        {"index code bound", mu_bound, {}},
        {"bottleneck equivalence", bottleneck_equivalence, {}},
        {"matroid networks", matroid_networks, {}},
        {"verifier oracles", oracles, {}},
    };
    // the bound tally must see every code the other criteria verified
    const std::size_t order[] = {0, 1, 2, 3, 4, 5, 7, 8, 9, 6};
    for (std::size_t i : order) {
        try {
            criteria[i].outcome = criteria[i].run();
        } catch (const std::exception& e) {
            criteria[i].outcome.pass = false;
            criteria[i].outcome.detail = std::string("exception: ") + e.what();
        }
    }
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto& o = criteria[i].outcome;
        failed += !o.pass;
        std::printf("[%s] %zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].name, o.detail.c_str());
    }
    std::printf("%d of %zu criteria failed\n", failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
