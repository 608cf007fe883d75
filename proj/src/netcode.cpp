#include "icn/netcode.hpp"

#include <algorithm>
#include <random>
#include <string>
#include <unordered_map>

#include "icn/index_code.hpp"

namespace icn {

NetworkInstance::NetworkInstance(std::size_t nodes, const std::vector<Edge>& edges,
                                 const std::map<std::size_t, std::size_t>& delta)
    : nodes_(nodes)
{
    const std::size_t m = edges.size();
    std::vector<std::size_t> indeg(nodes, 0);
    std::vector<std::size_t> outdeg(nodes, 0);
    for (const auto& e : edges) {
        if ((e.tail && *e.tail >= nodes) || (e.head && *e.head >= nodes))
            throw DomainError("edge endpoint outside node range");
        if (!e.tail && !e.head)
            throw DomainError("edge with neither tail nor head");
        if (e.head)
            ++indeg[*e.head];
        if (e.tail)
            ++outdeg[*e.tail];
    }

    // Topological order of nodes (Kahn); rejects cycles.
    std::vector<std::size_t> node_rank(nodes, 0);
    {
        std::vector<std::vector<std::size_t>> succ(nodes);
        std::vector<std::size_t> pending(nodes, 0);
        for (const auto& e : edges)
            if (e.tail && e.head) {
                succ[*e.tail].push_back(*e.head);
                ++pending[*e.head];
            }
        std::vector<std::size_t> ready;
        for (std::size_t v = 0; v < nodes; ++v)
            if (pending[v] == 0)
                ready.push_back(v);
        std::size_t next = 0;
        for (std::size_t i = 0; i < ready.size(); ++i) {
            const std::size_t v = ready[i];
            node_rank[v] = next++;
            for (std::size_t w : succ[v])
                if (--pending[w] == 0)
                    ready.push_back(w);
        }
        if (next != nodes)
            throw DomainError("network graph has a cycle");
    }

    auto in_s = [&](const Edge& e) { return !e.tail || indeg[*e.tail] == 0; };
    auto in_d = [&](const Edge& e) { return !e.head || outdeg[*e.head] == 0; };

    std::vector<std::size_t> order;
    for (std::size_t i = 0; i < m; ++i)
        if (in_s(edges[i]))
            order.push_back(i);
    k_ = order.size();
    for (std::size_t i = 0; i < m; ++i)
        if (!in_s(edges[i]) && !in_d(edges[i]))
            order.push_back(i);
    for (std::size_t i = 0; i < m; ++i)
        if (!in_s(edges[i]) && in_d(edges[i]))
            order.push_back(i);

    std::vector<std::size_t> new_index(m);
    for (std::size_t j = 0; j < m; ++j)
        new_index[order[j]] = j;
    original_ = order;
    edges_.reserve(m);
    for (std::size_t j = 0; j < m; ++j)
        edges_.push_back(edges[order[j]]);

    is_output_.assign(m, 0);
    delta_.assign(m, 0);
    for (std::size_t j = 0; j < m; ++j)
        if (in_d(edges_[j])) {
            is_output_[j] = 1;
            outputs_.push_back(j);
        }
    std::vector<char> covered(k_, 0);
    for (const auto& [out, in] : delta) {
        if (out >= m || in >= m)
            throw DomainError("demand function refers to an unknown edge");
        const std::size_t o = new_index[out];
        const std::size_t s = new_index[in];
        if (!is_output_[o])
            throw DomainError("demand given for edge " + std::to_string(out + 1) + " which is not an output edge");
        if (s >= k_)
            throw DomainError("edge " + std::to_string(in + 1) + " demanded but is not an input edge");
        delta_[o] = s;
        covered[s] = 1;
    }
    for (std::size_t o : outputs_) {
        bool found = false;
        for (const auto& [out, in] : delta)
            found = found || new_index[out] == o;
        if (!found)
            throw DomainError("output edge " + std::to_string(original_[o] + 1) + " has no demand");
    }
    if (std::find(covered.begin(), covered.end(), 0) != covered.end())
        throw DomainError("demand function is not onto the input edges");

    parents_.assign(m, {});
    for (std::size_t j = 0; j < m; ++j) {
        if (!edges_[j].tail)
            continue;
        for (std::size_t i = 0; i < m; ++i)
            if (edges_[i].head && *edges_[i].head == *edges_[j].tail)
                parents_[j].push_back(i);
    }

    topo_.resize(m);
    for (std::size_t j = 0; j < m; ++j)
        topo_[j] = j;
    auto key = [&](std::size_t j) -> long {
        return edges_[j].tail ? static_cast<long>(node_rank[*edges_[j].tail]) : -1L;
    };
    std::stable_sort(topo_.begin(), topo_.end(), [&](std::size_t a, std::size_t b) { return key(a) < key(b); });
}

std::size_t NetworkInstance::demand(std::size_t e) const
{
    if (e >= m() || !is_output_[e])
        throw DomainError("demand: edge is not an output edge");
    return delta_[e];
}

namespace {

void check_linear_shape(const NetworkInstance& net, const NetworkCode& code)
{
    if (!code.field)
        throw DomainError("network code without a field");
    if (code.n == 0)
        throw DomainError("block length must be >= 1");
    if (code.F.size() != net.m())
        throw DomainError("network code must give one encoder per edge");
    for (const auto& f : code.F) {
        if (!f.field() || !(*f.field() == *code.field))
            throw DomainError("encoders over different fields");
        if (f.rows() != code.n * net.k() || f.cols() != code.n)
            throw DomainError("global encoder must be (n k) x n");
    }
}

} // namespace

NetworkVerifyReport verify(const NetworkInstance& net, const NetworkCode& code, int threads)
{
    check_linear_shape(net, code);
    const std::size_t m = net.m();
    std::vector<std::string> failed(m);
    NetworkVerifyReport rep;
    rep.local.resize(m);
    parallel_for(m, threads, [&](std::size_t e) {
        if (net.is_input(e)) {
            if (!(code.F[e] == block_selector(code.field, net.k(), code.n, e)))
                failed[e] = "N1";
            if (!net.is_output(e))
                return;
        }
        if (net.is_output(e) && !(code.F[e] == block_selector(code.field, net.k(), code.n, net.demand(e)))) {
            failed[e] = "N2";
            return;
        }
        if (net.is_input(e))
            return;
        std::vector<Matrix> ps;
        for (std::size_t p : net.parents(e))
            ps.push_back(code.F[p]);
        auto t = solve_right(hconcat(ps), code.F[e]);
        if (!t)
            failed[e] = "N3";
        else
            rep.local[e] = std::move(t);
    });
    for (std::size_t e = 0; e < m; ++e)
        if (!failed[e].empty()) {
            rep.valid = false;
            rep.failing_edge = e;
            rep.condition = failed[e];
            break;
        }
    return rep;
}

NetworkVerifyReport verify(const NetworkInstance& net, const NetworkTableCode& code)
{
    if (!code.field)
        throw DomainError("network code without a field");
    if (code.k != net.k() || code.f.size() != net.m())
        throw DomainError("table network code shape mismatch");
    const unsigned q = code.field->q();
    const std::size_t n = code.n;
    const std::size_t len = n * net.k();
    std::size_t inputs = 1;
    for (std::size_t i = 0; i < len; ++i) {
        inputs *= q;
        if (inputs > TableCode::max_inputs)
            throw BudgetExceeded("table network code input space exceeds 2^20", 0);
    }
    for (const auto& fe : code.f)
        if (fe.size() != inputs * n)
            throw DomainError("table encoder must list q^{nk} rows of n symbols");

    NetworkVerifyReport rep;
    rep.local.resize(net.m());
    auto fail = [&](std::size_t e, const char* cond) {
        rep.valid = false;
        rep.failing_edge = e;
        rep.condition = cond;
        return rep;
    };
    auto sym = [&](std::size_t e, std::size_t xi, std::size_t j) { return code.f[e][xi * n + j]; };

    for (std::size_t e = 0; e < net.m(); ++e) {
        const bool input = net.is_input(e);
        const bool output = net.is_output(e);
        const std::size_t want = output ? net.demand(e) : e;
        if (input || output) {
            for (std::size_t xi = 0; xi < inputs; ++xi) {
                const auto x = table_input(xi, len, q);
                for (std::size_t j = 0; j < n; ++j) {
                    if (input && sym(e, xi, j) != x[e * n + j])
                        return fail(e, "N1");
                    if (output && sym(e, xi, j) != x[want * n + j])
                        return fail(e, "N2");
                }
            }
        }
        if (input)
            continue;
        // f_e must be a function of the parents' joint values.
        std::unordered_map<std::string, std::size_t> fiber;
        fiber.reserve(inputs);
        const auto& ps = net.parents(e);
        for (std::size_t xi = 0; xi < inputs; ++xi) {
            std::string key;
            key.reserve(ps.size() * n * 2);
            for (std::size_t p : ps)
                for (std::size_t j = 0; j < n; ++j) {
                    const Elem s = sym(p, xi, j);
                    key.push_back(char(s & 0xff));
                    key.push_back(char(s >> 8));
                }
            auto [it, fresh] = fiber.try_emplace(std::move(key), xi);
            if (!fresh)
                for (std::size_t j = 0; j < n; ++j)
                    if (sym(e, it->second, j) != sym(e, xi, j))
                        return fail(e, "N3");
        }
    }
    return rep;
}

NetworkTableCode to_table(const NetworkInstance& net, const NetworkCode& code)
{
    check_linear_shape(net, code);
    const unsigned q = code.field->q();
    const std::size_t len = code.n * net.k();
    std::size_t inputs = 1;
    for (std::size_t i = 0; i < len; ++i) {
        inputs *= q;
        if (inputs > TableCode::max_inputs)
            throw BudgetExceeded("table expansion exceeds 2^20 inputs", 0);
    }
    NetworkTableCode t{code.field, code.n, net.k(), std::vector<std::vector<Elem>>(net.m())};
    for (auto& fe : t.f)
        fe.reserve(inputs * code.n);
    for (std::size_t xi = 0; xi < inputs; ++xi) {
        const auto x = table_input(xi, len, q);
        for (std::size_t e = 0; e < net.m(); ++e) {
            const auto v = vec_mul(x, code.F[e]);
            t.f[e].insert(t.f[e].end(), v.begin(), v.end());
        }
    }
    return t;
}

std::optional<NetworkCode> random_code(const NetworkInstance& net, FieldPtr field, std::size_t n, std::uint64_t seed)
{
    if (!field || n == 0)
        throw DomainError("random_code needs a field and n >= 1");
    constexpr int attempts = 32;
    const unsigned q = field->q();
    for (int a = 0; a < attempts; ++a) {
        std::mt19937_64 rng(seed * 0x9e3779b97f4a7c15ULL + std::uint64_t(a));
        NetworkCode code{field, n, std::vector<Matrix>(net.m())};
        bool ok = true;
        for (std::size_t e : net.topo_order()) {
            if (net.is_input(e)) {
                code.F[e] = block_selector(field, net.k(), n, e);
                if (net.is_output(e) && net.demand(e) != e)
                    ok = false;
                continue;
            }
            std::vector<Matrix> ps;
            for (std::size_t p : net.parents(e))
                ps.push_back(code.F[p]);
            const Matrix parents = hconcat(ps);
            if (net.is_output(e)) {
                Matrix target = block_selector(field, net.k(), n, net.demand(e));
                if (!solve_right(parents, target)) {
                    ok = false;
                    break;
                }
                code.F[e] = std::move(target);
                continue;
            }
            Matrix t(field, parents.cols(), n);
            for (std::size_t i = 0; i < t.rows(); ++i)
                for (std::size_t j = 0; j < n; ++j)
                    t(i, j) = Elem(rng() % q);
            code.F[e] = parents * t;
        }
        if (ok && verify(net, code).valid)
            return code;
    }
    return std::nullopt;
}

std::vector<std::vector<Elem>> evaluate_local(const NetworkInstance& net, const NetworkCode& code,
                                              const std::vector<std::optional<Matrix>>& local,
                                              std::span<const Elem> xi)
{
    const std::size_t n = code.n;
    std::vector<std::vector<Elem>> val(net.m());
    for (std::size_t e : net.topo_order()) {
        if (net.is_input(e)) {
            val[e].assign(xi.begin() + std::ptrdiff_t(e * n), xi.begin() + std::ptrdiff_t((e + 1) * n));
            continue;
        }
        if (!local[e])
            throw DomainError("missing local encoder");
        std::vector<Elem> in;
        for (std::size_t p : net.parents(e))
            in.insert(in.end(), val[p].begin(), val[p].end());
        val[e] = vec_mul(in, *local[e]);
    }
    return val;
}

} // namespace icn
