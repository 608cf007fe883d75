#include "icn/fixtures.hpp"

#include <string_view>
#include <utility>

namespace icn::fixtures {

namespace detail {
extern const std::pair<std::string_view, std::string_view> embedded[];
extern const unsigned embedded_count;
} // namespace detail

namespace {

const io::json& manifest()
{
    static const io::json m = io::parse(*file("manifest.json"));
    return m;
}

io::json load_embedded(const std::string& filename)
{
    auto text = file(filename);
    if (!text)
        throw DomainError("fixture file " + filename + " is not embedded");
    return io::parse(*text);
}

template <class T>
std::string show(const T& v)
{
    return io::json(v).dump();
}

} // namespace

std::vector<std::string> names()
{
    std::vector<std::string> out;
    for (const auto& [k, v] : manifest().items())
        out.push_back(k);
    return out;
}

std::optional<std::string> file(const std::string& filename)
{
    for (unsigned i = 0; i < detail::embedded_count; ++i)
        if (detail::embedded[i].first == filename)
            return std::string(detail::embedded[i].second);
    return std::nullopt;
}

Fixture get(const std::string& name)
{
    const auto& m = manifest();
    if (!m.contains(name))
        throw DomainError("unknown fixture \"" + name + "\"");
    const auto& entry = m.at(name);
    const auto& files = entry.at("files");
    Fixture fx;
    fx.name = name;
    fx.expect = entry.at("expect");
    if (files.contains("instance")) {
        fx.instance = io::instance_from_json(load_embedded(files.at("instance")));
        if (files.contains("index_code"))
            fx.index_code = std::get<LinearIndexCode>(io::index_code_from_json(load_embedded(files.at("index_code")), *fx.instance));
    }
    if (files.contains("network")) {
        fx.network = io::network_from_json(load_embedded(files.at("network")));
        if (files.contains("network_code"))
            fx.network_code = std::get<NetworkCode>(io::network_code_from_json(load_embedded(files.at("network_code")), *fx.network));
    }
    if (files.contains("matroid"))
        fx.matroid = io::matroid_from_json(load_embedded(files.at("matroid")));
    if (files.contains("representations"))
        for (const auto& f : files.at("representations"))
            fx.representations.push_back(io::representation_from_json(load_embedded(f)));
    return fx;
}

std::vector<VerdictCheck> check(const Fixture& fx, bool searches, int threads)
{
    std::vector<VerdictCheck> out;
    auto record = [&](std::string what, const io::json& expected, const io::json& actual) {
        out.push_back({std::move(what), expected.dump(), actual.dump(), expected == actual});
    };
    const auto& ex = fx.expect;

    if (fx.instance) {
        const auto& inst = *fx.instance;
        if (ex.contains("mu"))
            record("mu", ex["mu"], mu(inst));
        if (fx.index_code) {
            const bool valid = verify_linear(inst, *fx.index_code).valid;
            if (ex.contains("index_code_valid"))
                record("index code verifies", ex["index_code_valid"], valid);
            if (ex.contains("perfect") && valid)
                record("index code perfect", ex["perfect"], is_perfect(inst, *fx.index_code));
        }
        if (searches && ex.contains("min_linear_index"))
            for (const auto& e : ex["min_linear_index"]) {
                const std::size_t n = e["n"];
                const auto F = Field::of_order(e["q"]);
                const auto r = min_linear_index(inst, F, n, {}, threads);
                record("min linear index c at (" + show(n) + "," + show(F->q()) + ")", e["c"],
                       r.witness ? io::json(r.witness->c()) : io::json(io::status_name(r.status)));
            }
    }

    if (fx.network) {
        const auto& net = *fx.network;
        if (ex.contains("edges"))
            record("edges", ex["edges"], net.m());
        if (fx.network_code && ex.contains("network_code_valid"))
            record("network code verifies", ex["network_code_valid"], verify(net, *fx.network_code).valid);
        if (ex.contains("reduced_mu") || ex.contains("transport_perfect")) {
            const auto red = net_to_index(net, fx.network_code ? fx.network_code->field : Field::get(2, 1),
                                          fx.network_code ? fx.network_code->n : 1);
            if (ex.contains("reduced_mu"))
                record("mu of the reduced index instance", ex["reduced_mu"], mu(red.instance));
            if (fx.network_code && ex.contains("transport_perfect")) {
                const auto code = transport_net_to_index(net, *fx.network_code);
                const bool ok = verify_linear(red.instance, code).valid && is_perfect(red.instance, code);
                record("transported index code is perfect", ex["transport_perfect"], ok);
            }
        }
        if (searches && ex.contains("search_network_code"))
            for (const auto& e : ex["search_network_code"]) {
                const std::size_t n = e["n"];
                const auto F = Field::of_order(e["q"]);
                const auto r = search_network_code(net, F, n, {}, threads);
                record("network code search at (" + show(n) + "," + show(F->q()) + ")", e["status"],
                       io::status_name(r.status));
            }
    }

    if (fx.matroid) {
        const auto& mat = *fx.matroid;
        if (ex.contains("axioms"))
            record("matroid axioms", ex["axioms"], check_axioms(mat).ok);
        if (ex.contains("bases"))
            record("bases", ex["bases"], bases(mat).size());
        if (ex.contains("circuits"))
            record("circuits", ex["circuits"], circuits(mat).size());
        if (ex.contains("representations_valid")) {
            io::json got = io::json::array();
            for (const auto& rep : fx.representations)
                got.push_back(verify_representation(mat, rep).ok);
            record("representations verify", ex["representations_valid"], got);
        }
        if (ex.contains("reduced_mu") || ex.contains("reduced_clients")) {
            const auto red = matroid_to_index(mat, Field::get(2, 1));
            if (ex.contains("reduced_mu"))
                record("mu of the reduced index instance", ex["reduced_mu"], mu(red.instance));
            if (ex.contains("reduced_clients"))
                record("clients of the reduced index instance", ex["reduced_clients"], red.instance.clients().size());
        }
        if (searches && ex.contains("scalar_search"))
            for (const auto& e : ex["scalar_search"]) {
                const auto F = Field::of_order(e["q"]);
                const auto r = search_representation_scalar(mat, F, {}, threads);
                record("scalar representation search over GF(" + show(F->q()) + ")", e["status"],
                       io::status_name(r.status));
            }
    }
    return out;
}

RateReport report(const std::string& name, const SearchBudget& budget, int threads)
{
    const Fixture fx = get(name);
    std::vector<RateEvidence> ev;
    const auto& ex = fx.expect;

    if (fx.instance) {
        const std::size_t mu_value = mu(*fx.instance);
        if (fx.index_code)
            ev.push_back({fx.index_code->n, fx.index_code->field, fx.index_code, mu_value * fx.index_code->n,
                          "shipped code"});
        if (ex.contains("min_linear_index"))
            for (const auto& e : ex["min_linear_index"]) {
                const std::size_t n = e["n"];
                const auto F = Field::of_order(e["q"]);
                ev.push_back(evidence_from(min_linear_index(*fx.instance, F, n, budget, threads), F, n, mu_value));
            }
        return rate_report(name, *fx.instance, ev);
    }

    if (fx.network) {
        const auto& net = *fx.network;
        const auto red = net_to_index(net, Field::get(2, 1), 1);
        const std::size_t mu_value = mu(red.instance);
        if (fx.network_code)
            ev.push_back({fx.network_code->n, fx.network_code->field, transport_net_to_index(net, *fx.network_code),
                          mu_value * fx.network_code->n, "transport of the shipped network code"});
        if (ex.contains("search_network_code"))
            for (const auto& e : ex["search_network_code"]) {
                const std::size_t n = e["n"];
                const auto F = Field::of_order(e["q"]);
                const auto r = search_network_code(net, F, n, budget, threads);
                if (r.status == SearchStatus::found)
                    ev.push_back({n, F, transport_net_to_index(net, *r.code), mu_value * n,
                                  "transport of a searched network code"});
                else if (r.status == SearchStatus::none)
                    ev.push_back(perfect_refuted(F, n, mu_value, "network code search, via equivalence"));
            }
        return rate_report(name, red.instance, ev);
    }

    if (fx.matroid) {
        const auto& mat = *fx.matroid;
        const auto red = matroid_to_index(mat, Field::get(2, 1));
        const std::size_t mu_value = mu(red.instance);
        for (const auto& rep : fx.representations)
            ev.push_back({rep.n, rep.field, transport_rep_to_index(mat, rep, red.instance).code, mu_value * rep.n,
                          "transport of a shipped representation"});
        if (ex.contains("scalar_search"))
            for (const auto& e : ex["scalar_search"]) {
                const auto F = Field::of_order(e["q"]);
                const auto r = search_representation_scalar(mat, F, budget, threads);
                if (r.status == SearchStatus::found)
                    ev.push_back({1, F, transport_rep_to_index(mat, *r.rep, red.instance).code, mu_value,
                                  "transport of a searched representation"});
                else if (r.status == SearchStatus::none)
                    ev.push_back(perfect_refuted(F, 1, mu_value, "scalar representation search, via equivalence"));
            }
        return rate_report(name, red.instance, ev);
    }
    throw DomainError("fixture \"" + name + "\" has nothing to report on");
}

} // namespace icn::fixtures
