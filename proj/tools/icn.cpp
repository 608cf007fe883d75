// icn: command line front end for the index/network coding library.
#include <fstream>
#include <iostream>
#include <random>
#include <string>

#include "CLI11.hpp"

#include "icn/fixtures.hpp"
#include "icn/io.hpp"
#include "icn/reduce.hpp"
#include "icn/solve.hpp"

using namespace icn;
using io::json;

namespace {

enum Exit { ok = 0, failure = 1, malformed = 2, inconclusive = 3 };

struct Options {
    std::uint64_t seed = 1;
    std::uint64_t budget = SearchBudget{}.max_nodes;
    double seconds = 0;
    int threads = 1;
    std::string format = "json";
    std::string out;
    std::string trace;
    std::size_t n = 0;
    unsigned q = 0;
    std::size_t c = 0;
    std::size_t max_circuit = 0;
    bool searches = false;
    std::vector<std::string> files;
    std::string name;
};

SearchBudget budget_of(const Options& o) { return {o.budget, o.seconds}; }

void emit(const Options& o, const json& j, const std::string& path = "")
{
    std::string text;
    if (o.format == "text") {
        for (const auto& [k, v] : j.items())
            text += k + ": " + (v.is_string() ? v.get<std::string>() : v.dump()) + "\n";
    } else {
        text = j.dump(2) + "\n";
    }
    const std::string& target = path.empty() ? o.out : path;
    if (target.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(target);
    if (!f)
        throw std::runtime_error("cannot write " + target);
    f << text;
}

FieldPtr field_or(const Options& o, const json& j, FieldPtr fallback)
{
    if (o.q)
        return Field::of_order(o.q);
    if (j.is_object() && j.contains("field"))
        return io::field_from_json(j.at("field"));
    return fallback;
}

std::size_t n_or(const Options& o, const json& j, std::size_t fallback)
{
    if (o.n)
        return o.n;
    if (j.is_object() && j.contains("n"))
        return j.at("n").get<std::size_t>();
    return fallback;
}

// Samples random inputs and checks that each decoder reproduces its demand.
std::size_t spot_check_decoders(const IndexInstance& inst, const LinearIndexCode& code, const LinearVerifyReport& rep,
                                std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::size_t failures = 0;
    const unsigned q = code.field->q();
    for (int t = 0; t < 100; ++t) {
        std::vector<Elem> xi(code.n * inst.k());
        for (auto& x : xi)
            x = Elem(rng() % q);
        const auto f = encode(code, xi);
        for (std::size_t r = 0; r < inst.clients().size(); ++r) {
            const auto& cl = inst.clients()[r];
            const auto got = apply_decoder(*rep.decoders[r], f, side_packets(xi, cl.side, code.n));
            const std::vector<std::size_t> want_idx{cl.demand};
            if (got != side_packets(xi, want_idx, code.n))
                ++failures;
        }
    }
    return failures;
}

std::size_t spot_check_locals(const NetworkInstance& net, const NetworkCode& code, const NetworkVerifyReport& rep,
                              std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::size_t failures = 0;
    const unsigned q = code.field->q();
    for (int t = 0; t < 100; ++t) {
        std::vector<Elem> xi(code.n * net.k());
        for (auto& x : xi)
            x = Elem(rng() % q);
        const auto vals = evaluate_local(net, code, rep.local, xi);
        for (std::size_t e = 0; e < net.m(); ++e)
            if (vals[e] != vec_mul(xi, code.F[e]))
                ++failures;
    }
    return failures;
}

json search_verdict(SearchStatus s, std::optional<std::size_t> c, json witness, std::uint64_t visited)
{
    return json{{"status", io::status_name(s)},
                {"c", c ? json(*c) : json(nullptr)},
                {"witness", std::move(witness)},
                {"visited", visited}};
}

int run_verb(const std::string& verb, const std::string& sub, const Options& o)
{
    const auto& f = o.files;
    if (verb == "axioms") {
        const Matroid mat = io::matroid_from_json(io::load(f.at(0)));
        const auto r = check_axioms(mat);
        json j{{"ok", r.ok}, {"m", mat.size()}, {"rank", mat.rank()}};
        if (!r.ok) {
            j["axiom"] = r.axiom;
            auto set = [](Mask s) {
                json a = json::array();
                for (std::size_t e : elements_of(s))
                    a.push_back(e + 1);
                return a;
            };
            j["A"] = set(r.a);
            j["B"] = set(r.b);
        } else {
            j["bases"] = bases(mat).size();
            j["circuits"] = circuits(mat).size();
        }
        emit(o, j);
        return ok;
    }
    if (verb == "mu") {
        const auto inst = io::instance_from_json(io::load(f.at(0)));
        emit(o, json{{"mu", mu(inst)}, {"k", inst.k()}, {"clients", inst.clients().size()}});
        return ok;
    }
    if (verb == "verify-index") {
        const auto inst = io::instance_from_json(io::load(f.at(0)));
        const auto cj = io::load(f.at(1));
        const auto code = io::index_code_from_json(cj, inst);
        json j;
        if (const auto* lin = std::get_if<LinearIndexCode>(&code)) {
            const auto at = inst.with_block(lin->field, lin->n);
            const auto rep = verify_linear(at, *lin);
            j = json{{"valid", rep.valid}, {"c", lin->c()}, {"n", lin->n}, {"lambda", rate_string(lin->c(), lin->n)},
                     {"mu", mu(at)}};
            json failing = json::array();
            for (std::size_t r = 0; r < rep.client_ok.size(); ++r)
                if (!rep.client_ok[r])
                    failing.push_back(describe_client(at, at.clients()[r]));
            j["failing_clients"] = failing;
            if (rep.valid) {
                j["perfect"] = is_perfect(at, *lin);
                j["decoder_spot_failures"] = spot_check_decoders(at, *lin, rep, o.seed);
            }
        } else {
            const auto& t = std::get<TableCode>(code);
            const auto at = inst.with_block(t.field, t.n);
            const auto rep = verify_table(at, t, o.threads);
            j = json{{"valid", rep.valid}, {"c", t.c}, {"n", t.n}, {"lambda", rate_string(t.c, t.n)}, {"mu", mu(at)}};
            if (rep.failing_client)
                j["failing_client"] = describe_client(at, at.clients()[*rep.failing_client]);
            if (rep.valid)
                j["perfect"] = is_perfect(at, t);
        }
        emit(o, j);
        return ok;
    }
    if (verb == "verify-net") {
        const auto net = io::network_from_json(io::load(f.at(0)));
        const auto code = io::network_code_from_json(io::load(f.at(1)), net);
        NetworkVerifyReport rep;
        const NetworkCode* lin = std::get_if<NetworkCode>(&code);
        rep = lin ? verify(net, *lin, o.threads) : verify(net, std::get<NetworkTableCode>(code));
        json j{{"valid", rep.valid}};
        if (!rep.valid) {
            j["edge"] = net.original_index(*rep.failing_edge) + 1;
            j["condition"] = rep.condition;
        } else if (lin) {
            j["local_spot_failures"] = spot_check_locals(net, *lin, rep, o.seed);
        }
        emit(o, j);
        return ok;
    }
    if (verb == "verify-rep") {
        const Matroid mat = io::matroid_from_json(io::load(f.at(0)));
        const auto rep = io::representation_from_json(io::load(f.at(1)));
        const auto r = verify_representation(mat, rep, o.threads);
        json j{{"valid", r.ok}, {"n", rep.n}, {"subsets", std::size_t(1) << mat.size()}};
        if (!r.ok) {
            json set = json::array();
            for (std::size_t e : elements_of(r.failing))
                set.push_back(e + 1);
            j["failing"] = set;
            j["expected_rank"] = r.expected;
            j["actual_rank"] = r.actual;
        }
        emit(o, j);
        return ok;
    }
    if (verb == "reduce") {
        if (sub == "net2idx") {
            const auto net = io::network_from_json(io::load(f.at(0)));
            auto red = net_to_index(net, o.q ? Field::of_order(o.q) : Field::get(2, 1), o.n ? o.n : 1);
            json j = io::to_json(red.instance);
            j["mu"] = mu(red.instance);
            emit(o, j);
            if (!o.trace.empty()) {
                json t = io::to_json(red.trace);
                json edges = json::array();
                for (std::size_t e = 0; e < net.m(); ++e)
                    edges.push_back(net.original_index(e) + 1);
                t["y_edges"] = edges;
                emit(o, t, o.trace);
            }
            return ok;
        }
        if (sub == "mat2idx") {
            const Matroid mat = io::matroid_from_json(io::load(f.at(0)));
            std::optional<std::size_t> mc;
            if (o.max_circuit)
                mc = o.max_circuit;
            auto red = matroid_to_index(mat, o.q ? Field::of_order(o.q) : Field::get(2, 1), o.n ? o.n : 1, mc);
            json j = io::to_json(red.instance);
            j["mu"] = mu(red.instance);
            emit(o, j);
            if (!o.trace.empty())
                emit(o, io::to_json(red.trace), o.trace);
            return ok;
        }
        if (sub == "idx2net" || sub == "mat2net") {
            NetworkReduction red = [&] {
                if (sub == "idx2net")
                    return index_to_network(io::instance_from_json(io::load(f.at(0))), o.c ? o.c : 1);
                std::optional<std::size_t> mc;
                if (o.max_circuit)
                    mc = o.max_circuit;
                return matroid_to_network(io::matroid_from_json(io::load(f.at(0))), mc);
            }();
            emit(o, io::to_json(red.network));
            if (!o.trace.empty())
                emit(o, io::to_json(red.trace), o.trace);
            return ok;
        }
    }
    if (verb == "transport") {
        if (sub == "net2idx") {
            const auto net = io::network_from_json(io::load(f.at(0)));
            const auto code = io::network_code_from_json(io::load(f.at(1)), net);
            if (const auto* lin = std::get_if<NetworkCode>(&code))
                emit(o, io::to_json(transport_net_to_index(net, *lin)));
            else
                emit(o, io::to_json(transport_net_to_index(net, std::get<NetworkTableCode>(code))));
            return ok;
        }
        if (sub == "idx2net") {
            const auto net = io::network_from_json(io::load(f.at(0)));
            const auto cj = io::load(f.at(1));
            const auto inst = net_to_index(net, field_or(o, cj, Field::get(2, 1)), n_or(o, cj, 1)).instance;
            const auto code = std::get<LinearIndexCode>(io::index_code_from_json(cj, inst));
            emit(o, io::to_json(net, transport_index_to_net(net, code)));
            return ok;
        }
        if (sub == "rep2idx") {
            const Matroid mat = io::matroid_from_json(io::load(f.at(0)));
            const auto rep = io::representation_from_json(io::load(f.at(1)));
            const auto inst = matroid_to_index(mat, rep.field, rep.n).instance;
            emit(o, io::to_json(transport_rep_to_index(mat, rep, inst).code));
            return ok;
        }
        if (sub == "idx2rep") {
            const Matroid mat = io::matroid_from_json(io::load(f.at(0)));
            const auto cj = io::load(f.at(1));
            const auto inst = matroid_to_index(mat, field_or(o, cj, Field::get(2, 1)), n_or(o, cj, 1)).instance;
            const auto code = std::get<LinearIndexCode>(io::index_code_from_json(cj, inst));
            emit(o, io::to_json(transport_index_to_rep(mat, code)));
            return ok;
        }
    }
    if (verb == "solve") {
        const FieldPtr F = Field::of_order(o.q ? o.q : 2);
        const std::size_t n = o.n ? o.n : 1;
        if (sub == "index") {
            const auto inst = io::instance_from_json(io::load(f.at(0)));
            std::optional<std::size_t> cmax;
            if (o.c)
                cmax = o.c;
            const auto r = min_linear_index(inst, F, n, budget_of(o), o.threads, cmax);
            json j = search_verdict(r.status, r.c(), r.witness ? io::to_json(*r.witness) : json(nullptr), r.visited);
            j["c_exhausted"] = r.c_exhausted ? json(*r.c_exhausted) : json(nullptr);
            emit(o, j);
            return r.status == SearchStatus::inconclusive ? inconclusive : ok;
        }
        if (sub == "net") {
            const auto net = io::network_from_json(io::load(f.at(0)));
            const auto r = search_network_code(net, F, n, budget_of(o), o.threads);
            emit(o, search_verdict(r.status, r.code ? std::optional<std::size_t>(n * net.m()) : std::nullopt,
                                   r.code ? io::to_json(net, *r.code) : json(nullptr), r.visited));
            return r.status == SearchStatus::inconclusive ? inconclusive : ok;
        }
        if (sub == "rep") {
            const Matroid mat = io::matroid_from_json(io::load(f.at(0)));
            const auto r = search_representation_scalar(mat, F, budget_of(o), o.threads);
            emit(o, search_verdict(r.status, std::nullopt, r.rep ? io::to_json(*r.rep) : json(nullptr), r.visited));
            return r.status == SearchStatus::inconclusive ? inconclusive : ok;
        }
    }
    if (verb == "fixture") {
        if (o.name == "list") {
            emit(o, json{{"fixtures", fixtures::names()}});
            return ok;
        }
        const auto fx = fixtures::get(o.name);
        json checks = json::array();
        bool all = true;
        for (const auto& c : fixtures::check(fx, o.searches, o.threads)) {
            checks.push_back(json{{"check", c.what}, {"expected", io::parse(c.expected)}, {"actual", io::parse(c.actual)},
                                  {"pass", c.pass}});
            all = all && c.pass;
        }
        emit(o, json{{"fixture", o.name}, {"pass", all}, {"checks", checks}});
        return ok;
    }
    if (verb == "report") {
        emit(o, io::to_json(fixtures::report(o.name, budget_of(o), o.threads)));
        return ok;
    }
    throw DomainError("unknown command");
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Index coding, network coding and matroid representation toolkit"};
    app.require_subcommand(1);
    Options o;
    auto globals = [&](CLI::App* c) {
        c->add_option("--seed", o.seed, "Seed for randomized spot checks");
        c->add_option("--budget", o.budget, "Node budget for exhaustive searches");
        c->add_option("--seconds", o.seconds, "Wall-clock budget for searches (0 = none)");
        c->add_option("--threads", o.threads, "Worker threads for searches and verification");
        c->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "text"}));
        c->add_option("--out", o.out, "Write the result to this file");
    };
    auto files = [&](CLI::App* c, const char* desc, std::size_t count) {
        c->add_option("files", o.files, desc)->required()->expected(static_cast<int>(count));
    };
    auto block = [&](CLI::App* c) {
        c->add_option("--n", o.n, "Block length");
        c->add_option("--q", o.q, "Field order");
    };

    std::string verb;
    std::string sub;
    auto simple = [&](const char* name, const char* desc, const char* fdesc, std::size_t count) {
        auto* c = app.add_subcommand(name, desc);
        globals(c);
        files(c, fdesc, count);
        c->callback([&verb, name] { verb = name; });
        return c;
    };
    simple("axioms", "Check the matroid axioms", "MATROID", 1);
    simple("mu", "Compute mu of an index coding instance", "INSTANCE", 1);
    simple("verify-index", "Verify an index code", "INSTANCE CODE", 2);
    simple("verify-net", "Verify a network code", "NETWORK CODE", 2);
    simple("verify-rep", "Verify a multilinear representation", "MATROID REPRESENTATION", 2);

    auto group = [&](const char* name, const char* desc, std::vector<std::pair<const char*, std::size_t>> subs) {
        auto* g = app.add_subcommand(name, desc);
        g->require_subcommand(1);
        std::vector<CLI::App*> out;
        for (auto [s, count] : subs) {
            auto* c = g->add_subcommand(s);
            globals(c);
            block(c);
            files(c, "input files", count);
            c->callback([&verb, &sub, name, s] {
                verb = name;
                sub = s;
            });
            out.push_back(c);
        }
        return out;
    };
    auto red = group("reduce", "Build a reduced instance", {{"net2idx", 1}, {"mat2idx", 1}, {"idx2net", 1}, {"mat2net", 1}});
    for (auto* c : red)
        c->add_option("--trace", o.trace, "Write the provenance trace to this file");
    red[1]->add_option("--max-circuit", o.max_circuit, "Only use circuits up to this size");
    red[3]->add_option("--max-circuit", o.max_circuit, "Only use circuits up to this size");
    red[2]->add_option("--c", o.c, "Number of bottleneck edges");
    group("transport", "Transport a code or representation", {{"net2idx", 2}, {"idx2net", 2}, {"rep2idx", 2}, {"idx2rep", 2}});
    auto solve = group("solve", "Exhaustive search", {{"index", 1}, {"net", 1}, {"rep", 1}});
    solve[0]->add_option("--c", o.c, "Largest code length to try");

    auto* fx = app.add_subcommand("fixture", "Load a shipped fixture and check its verdicts");
    globals(fx);
    fx->add_option("name", o.name, "Fixture name, or \"list\"")->required();
    fx->add_flag("--searches", o.searches, "Also run the exhaustive searches");
    fx->callback([&] { verb = "fixture"; });
    auto* rp = app.add_subcommand("report", "Rate report for a fixture");
    globals(rp);
    rp->add_option("name", o.name, "Fixture name")->required();
    rp->callback([&] { verb = "report"; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return malformed;
    }

    auto fail = [&](const char* kind, const std::string& what, int code) {
        std::cerr << "icn: " << what << "\n";
        json j{{"error", kind}, {"message", what}};
        std::cout << j.dump(2) << "\n";
        return code;
    };
    try {
        return run_verb(verb, sub, o);
    } catch (const MalformedInput& e) {
        return fail("malformed-input", e.what(), malformed);
    } catch (const json::exception& e) {
        return fail("malformed-input", e.what(), malformed);
    } catch (const std::out_of_range& e) {
        return fail("malformed-input", e.what(), malformed);
    } catch (const BudgetExceeded& e) {
        return fail("budget-exceeded", e.what(), inconclusive);
    } catch (const InvalidCode& e) {
        emit(o, json{{"status", "invalid"}, {"reason", e.what()}});
        return ok;
    } catch (const std::exception& e) {
        return fail("error", e.what(), failure);
    }
}
