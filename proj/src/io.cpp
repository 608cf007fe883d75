#include "icn/io.hpp"

#include <fstream>
#include <sstream>

namespace icn::io {

namespace {

[[noreturn]] void bad(const std::string& what) { throw MalformedInput(what); }

const json& need(const json& j, const char* key)
{
    if (!j.is_object() || !j.contains(key))
        bad(std::string("missing key \"") + key + "\"");
    return j.at(key);
}

std::size_t count(const json& j, const char* what)
{
    if (!j.is_number_integer() || j.get<long long>() < 0)
        bad(std::string(what) + " must be a non-negative integer");
    return j.get<std::size_t>();
}

std::size_t index1(const json& j, std::size_t limit, const char* what)
{
    const std::size_t v = count(j, what);
    if (v < 1 || v > limit)
        bad(std::string(what) + " " + std::to_string(v) + " outside 1.." + std::to_string(limit));
    return v - 1;
}

std::vector<Elem> elements(const json& j, const Field& f, const char* what)
{
    if (!j.is_array())
        bad(std::string(what) + " must be an array");
    std::vector<Elem> out;
    out.reserve(j.size());
    for (const auto& v : j) {
        const std::size_t x = count(v, what);
        if (x >= f.q())
            bad(std::string(what) + ": element " + std::to_string(x) + " outside the field");
        out.push_back(Elem(x));
    }
    return out;
}

} // namespace

json parse(const std::string& text)
{
    try {
        return json::parse(text);
    } catch (const json::exception& e) {
        bad(std::string("invalid JSON: ") + e.what());
    }
}

json load(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        bad("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse(ss.str());
}

FieldPtr field_from_json(const json& j)
{
    if (j.is_number_integer())
        return Field::of_order(static_cast<unsigned>(count(j, "field order")));
    if (!j.is_array() || j.size() != 2)
        bad("field must be [p, m]");
    try {
        return Field::get(static_cast<unsigned>(count(j[0], "p")), static_cast<unsigned>(count(j[1], "m")));
    } catch (const DomainError& e) {
        bad(e.what());
    }
}

json to_json(const Field& f) { return json::array({f.p(), f.m()}); }

Matrix matrix_from_json(const json& j, const FieldPtr& field)
{
    const std::size_t r = count(need(j, "rows"), "rows");
    const std::size_t c = count(need(j, "cols"), "cols");
    auto e = elements(need(j, "entries"), *field, "matrix entries");
    if (e.size() != r * c)
        bad("matrix has " + std::to_string(e.size()) + " entries, expected rows*cols = " + std::to_string(r * c));
    return Matrix(field, r, c, std::move(e));
}

json to_json(const Matrix& m)
{
    return json{{"rows", m.rows()}, {"cols", m.cols()}, {"entries", m.entries()}};
}

json to_json(const Client& cl)
{
    json side = json::array();
    for (std::size_t h : cl.side)
        side.push_back(h + 1);
    return json{{"demand", cl.demand + 1}, {"side", side}};
}

IndexInstance instance_from_json(const json& j)
{
    auto field = field_from_json(need(j, "field"));
    const std::size_t n = j.contains("n") ? count(j.at("n"), "n") : 1;
    const std::size_t k = count(need(j, "k"), "k");
    const auto& cs = need(j, "clients");
    if (!cs.is_array())
        bad("clients must be an array");
    std::vector<Client> clients;
    for (const auto& c : cs) {
        Client cl;
        cl.demand = index1(need(c, "demand"), k, "demand");
        const auto& side = need(c, "side");
        if (!side.is_array())
            bad("side must be an array");
        for (const auto& h : side)
            cl.side.push_back(index1(h, k, "side message"));
        clients.push_back(std::move(cl));
    }
    std::vector<std::string> names;
    if (j.contains("names"))
        names = j.at("names").get<std::vector<std::string>>();
    try {
        return IndexInstance(field, n, k, std::move(clients), std::move(names));
    } catch (const DomainError& e) {
        bad(e.what());
    }
}

json to_json(const IndexInstance& inst)
{
    json clients = json::array();
    for (const auto& cl : inst.clients())
        clients.push_back(to_json(cl));
    return json{{"field", to_json(*inst.field())},
                {"n", inst.n()},
                {"k", inst.k()},
                {"names", inst.names()},
                {"clients", clients}};
}

IndexCode index_code_from_json(const json& j, const IndexInstance& inst)
{
    auto field = j.contains("field") ? field_from_json(j.at("field")) : inst.field();
    const std::size_t n = j.contains("n") ? count(j.at("n"), "n") : inst.n();
    if (j.contains("L")) {
        Matrix L = matrix_from_json(j.at("L"), field);
        if (j.contains("c") && count(j.at("c"), "c") != L.cols())
            bad("c disagrees with the columns of L");
        return LinearIndexCode{field, n, std::move(L)};
    }
    const auto& t = need(j, "table");
    const std::size_t c = count(need(j, "c"), "c");
    TableCode code{field, n, inst.k(), c, elements(need(t, "outputs"), *field, "table outputs")};
    return code;
}

json to_json(const LinearIndexCode& code)
{
    return json{{"field", to_json(*code.field)}, {"n", code.n}, {"c", code.c()}, {"L", to_json(code.L)}};
}

json to_json(const TableCode& code)
{
    return json{{"field", to_json(*code.field)},
                {"n", code.n},
                {"c", code.c},
                {"table", json{{"outputs", code.outputs}}}};
}

Matroid matroid_from_json(const json& j)
{
    const std::size_t m = count(need(j, "m"), "m");
    if (m > Matroid::max_elements)
        bad("matroid has more than 20 elements");
    const std::string kind = need(j, "kind").get<std::string>();
    try {
        if (kind == "uniform")
            return Matroid::uniform(count(need(j, "k"), "k"), m);
        if (kind == "table") {
            const auto& r = need(j, "ranks");
            if (!r.is_array() || r.size() != (std::size_t(1) << m))
                bad("rank table must list 2^m values");
            std::vector<std::uint8_t> ranks;
            for (const auto& v : r)
                ranks.push_back(static_cast<std::uint8_t>(count(v, "rank")));
            return Matroid(m, std::move(ranks));
        }
        if (kind == "lines") {
            std::vector<std::vector<std::size_t>> lines;
            for (const auto& l : need(j, "lines")) {
                std::vector<std::size_t> line;
                for (const auto& e : l)
                    line.push_back(index1(e, m, "line element"));
                lines.push_back(std::move(line));
            }
            return Matroid::from_lines(m, lines);
        }
        if (kind == "matrix") {
            const auto rep = representation_from_json(j);
            if (rep.mats.size() != m)
                bad("matrix matroid needs m matrices");
            return Matroid::from_matrices(rep.mats, rep.n);
        }
    } catch (const DomainError& e) {
        bad(e.what());
    }
    bad("unknown matroid kind \"" + kind + "\"");
}

json to_json(const Matroid& mat)
{
    return json{{"m", mat.size()}, {"kind", "table"}, {"ranks", mat.rank_table()}};
}

Representation representation_from_json(const json& j)
{
    auto field = field_from_json(need(j, "field"));
    const std::size_t n = count(need(j, "n"), "n");
    Representation rep{field, n, {}};
    for (const auto& mj : need(j, "mats"))
        rep.mats.push_back(matrix_from_json(mj, field));
    return rep;
}

json to_json(const Representation& rep)
{
    json mats = json::array();
    for (const auto& m : rep.mats)
        mats.push_back(to_json(m));
    return json{{"field", to_json(*rep.field)}, {"n", rep.n}, {"mats", mats}};
}

NetworkInstance network_from_json(const json& j)
{
    const std::size_t nodes = count(need(j, "nodes"), "nodes");
    const auto& ej = need(j, "edges");
    if (!ej.is_array())
        bad("edges must be an array");
    std::vector<Edge> edges;
    for (const auto& e : ej) {
        if (!e.is_array() || e.size() != 2)
            bad("edge must be [tail, head]");
        Edge edge;
        if (!e[0].is_null())
            edge.tail = index1(e[0], nodes, "tail node");
        if (!e[1].is_null())
            edge.head = index1(e[1], nodes, "head node");
        edges.push_back(edge);
    }
    std::map<std::size_t, std::size_t> delta;
    for (const auto& [key, value] : need(j, "delta").items()) {
        std::size_t out = 0;
        try {
            out = std::stoul(key);
        } catch (const std::exception&) {
            bad("delta key \"" + key + "\" is not an edge number");
        }
        if (out < 1 || out > edges.size())
            bad("delta key " + key + " is not an edge");
        delta[out - 1] = index1(value, edges.size(), "delta value");
    }
    try {
        NetworkInstance net(nodes, edges, delta);
        auto check_list = [&](const char* key, auto pred) {
            if (!j.contains(key))
                return;
            std::vector<std::size_t> listed;
            for (const auto& v : j.at(key))
                listed.push_back(index1(v, edges.size(), key));
            std::sort(listed.begin(), listed.end());
            std::vector<std::size_t> actual;
            for (std::size_t e = 0; e < net.m(); ++e)
                if (pred(e))
                    actual.push_back(net.original_index(e));
            std::sort(actual.begin(), actual.end());
            if (listed != actual)
                bad(std::string(key) + " do not match the graph's zero in/out-degree edges");
        };
        check_list("inputs", [&](std::size_t e) { return net.is_input(e); });
        check_list("outputs", [&](std::size_t e) { return net.is_output(e); });
        return net;
    } catch (const DomainError& e) {
        bad(e.what());
    }
}

json to_json(const NetworkInstance& net)
{
    std::vector<std::size_t> at(net.m());
    for (std::size_t e = 0; e < net.m(); ++e)
        at[net.original_index(e)] = e;
    json edges = json::array();
    json inputs = json::array();
    json outputs = json::array();
    json delta = json::object();
    for (std::size_t f = 0; f < net.m(); ++f) {
        const std::size_t e = at[f];
        const auto& ed = net.edges()[e];
        edges.push_back(json::array({ed.tail ? json(*ed.tail + 1) : json(nullptr), ed.head ? json(*ed.head + 1) : json(nullptr)}));
        if (net.is_input(e))
            inputs.push_back(f + 1);
        if (net.is_output(e)) {
            outputs.push_back(f + 1);
            delta[std::to_string(f + 1)] = net.original_index(net.demand(e)) + 1;
        }
    }
    return json{{"nodes", net.nodes()}, {"edges", edges}, {"inputs", inputs}, {"outputs", outputs}, {"delta", delta}};
}

NetCode network_code_from_json(const json& j, const NetworkInstance& net)
{
    auto field = field_from_json(need(j, "field"));
    const std::size_t n = count(need(j, "n"), "n");
    if (j.contains("F")) {
        const auto& fj = j.at("F");
        if (!fj.is_array() || fj.size() != net.m())
            bad("F must list one matrix per edge");
        NetworkCode code{field, n, std::vector<Matrix>(net.m())};
        for (std::size_t e = 0; e < net.m(); ++e)
            code.F[e] = matrix_from_json(fj[net.original_index(e)], field);
        return code;
    }
    const auto& fj = need(j, "f");
    if (!fj.is_array() || fj.size() != net.m())
        bad("f must list one table per edge");
    NetworkTableCode code{field, n, net.k(), std::vector<std::vector<Elem>>(net.m())};
    for (std::size_t e = 0; e < net.m(); ++e)
        code.f[e] = elements(fj[net.original_index(e)], *field, "edge table");
    return code;
}

json to_json(const NetworkInstance& net, const NetworkCode& code)
{
    json F = json::array();
    std::vector<json> by_file(net.m());
    for (std::size_t e = 0; e < net.m(); ++e)
        by_file[net.original_index(e)] = to_json(code.F[e]);
    for (auto& f : by_file)
        F.push_back(std::move(f));
    return json{{"field", to_json(*code.field)}, {"n", code.n}, {"F", F}};
}

json to_json(const ReductionTrace& trace)
{
    json j{{"source", trace.source}, {"tags", trace.tags}};
    if (!trace.node_labels.empty())
        j["nodes"] = trace.node_labels;
    return j;
}

std::string status_name(SearchStatus s)
{
    switch (s) {
    case SearchStatus::found: return "found";
    case SearchStatus::none: return "none";
    case SearchStatus::inconclusive: return "inconclusive";
    }
    return "";
}

json to_json(const RateReport& rep)
{
    json entries = json::array();
    for (const auto& e : rep.entries) {
        json j{{"n", e.n}, {"q", e.q}, {"lambda_lower", rate_string(e.lower, e.n)}};
        j["lambda_upper"] = e.upper ? json(rate_string(*e.upper, e.n)) : json(nullptr);
        j["exact"] = e.exact();
        j["perfect"] = e.upper && *e.upper == rep.mu * e.n;
        j["methods"] = e.methods;
        entries.push_back(std::move(j));
    }
    json seps = json::array();
    for (const auto& s : rep.separations)
        seps.push_back(s.text);
    return json{{"instance", rep.instance}, {"mu", rep.mu}, {"entries", entries}, {"separations", seps}};
}

} // namespace icn::io
