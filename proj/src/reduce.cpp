#include "icn/reduce.hpp"

#include <algorithm>
#include <set>
#include <string>
#include <utility>

namespace icn {

namespace {

struct ClientCollector {
    std::vector<Client> clients;
    std::vector<std::string> tags;
    std::set<Client> seen;

    void add(std::size_t demand, std::vector<std::size_t> side, const char* tag)
    {
        Client cl{demand, std::move(side)};
        std::sort(cl.side.begin(), cl.side.end());
        if (!seen.insert(cl).second)
            return;
        clients.push_back(std::move(cl));
        tags.emplace_back(tag);
    }
};

std::vector<std::string> numbered(const char* prefix, std::size_t count)
{
    std::vector<std::string> out;
    for (std::size_t i = 0; i < count; ++i)
        out.push_back(prefix + std::to_string(i + 1));
    return out;
}

void require_matroid(const Matroid& mat)
{
    if (mat.size() > 12)
        return;
    const auto rep = check_axioms(mat);
    if (!rep.ok)
        throw DomainError("rank function violates " + rep.axiom);
}

std::string edge_tag(const EdgeRole& r)
{
    const std::string a = std::to_string(r.a + 1);
    const std::string b = std::to_string(r.b + 1);
    switch (r.kind) {
    case EdgeRole::input: return "input " + a;
    case EdgeRole::forward: return "forward " + a;
    case EdgeRole::bottleneck: return "bottleneck " + a;
    case EdgeRole::relay: return "relay to client " + a;
    case EdgeRole::side: return "side " + b + " to client " + a;
    case EdgeRole::prime: return "s" + a + " to n'" + b;
    case EdgeRole::dprime: return "s" + a + " to n''" + b;
    case EdgeRole::link: return "n'" + a + " to n''" + a;
    case EdgeRole::collect: return "n''" + b + " to client " + a;
    case EdgeRole::output: return "output of client " + a;
    }
    return {};
}

NetworkReduction finish_network(std::string source, std::size_t nodes, const std::vector<Edge>& edges,
                                const std::vector<EdgeRole>& roles, const std::map<std::size_t, std::size_t>& delta,
                                std::vector<std::string> node_labels)
{
    NetworkInstance net(nodes, edges, delta);
    NetworkReduction red{std::move(net), ReductionTrace{std::move(source), {}, std::move(node_labels)}, {}};
    for (std::size_t e = 0; e < red.network.m(); ++e)
        red.roles.push_back(roles[red.network.original_index(e)]);
    for (const auto& r : roles)
        red.trace.tags.push_back(edge_tag(r));
    return red;
}

// [L | E_H] for one client, the matrix a linear decoder is applied to.
Matrix client_view(const LinearIndexCode& code, std::size_t messages, const Client& cl)
{
    std::vector<Matrix> parts{code.L};
    for (std::size_t h : cl.side)
        parts.push_back(block_selector(code.field, messages, code.n, h));
    return hconcat(parts);
}

} // namespace

std::string describe_client(const IndexInstance& inst, const Client& cl)
{
    std::string s = "(" + inst.names()[cl.demand] + ",{";
    for (std::size_t i = 0; i < cl.side.size(); ++i)
        s += (i ? "," : "") + inst.names()[cl.side[i]];
    return s + "})";
}

IndexReduction net_to_index(const NetworkInstance& net, FieldPtr field, std::size_t n)
{
    const std::size_t k = net.k();
    const std::size_t m = net.m();
    ClientCollector cc;
    for (std::size_t i = 0; i < k; ++i)
        cc.add(i, {k + i}, "R1");
    for (std::size_t i = 0; i < k; ++i)
        cc.add(k + i, {i}, "R2");
    for (std::size_t i = k; i < m; ++i) {
        std::vector<std::size_t> side;
        for (std::size_t p : net.parents(i))
            side.push_back(k + p);
        cc.add(k + i, side, "R3");
    }
    for (std::size_t e : net.outputs())
        cc.add(net.demand(e), {k + e}, "R4");
    std::vector<std::size_t> xs;
    for (std::size_t i = 0; i < k; ++i)
        xs.push_back(i);
    for (std::size_t i = 0; i < m; ++i)
        cc.add(k + i, xs, "R5");

    auto names = numbered("x", k);
    for (auto& y : numbered("y", m))
        names.push_back(y);
    IndexInstance inst(std::move(field), n, k + m, std::move(cc.clients), std::move(names));
    return {std::move(inst), ReductionTrace{"network", std::move(cc.tags), {}}};
}

IndexReduction matroid_to_index(const Matroid& mat, FieldPtr field, std::size_t n, std::optional<std::size_t> max_circuit)
{
    require_matroid(mat);
    const std::size_t m = mat.size();
    const std::size_t k = mat.rank();
    ClientCollector cc;
    for (Mask b : bases(mat))
        for (std::size_t i = 0; i < k; ++i)
            cc.add(m + i, elements_of(b), "R1");
    for (Mask c : circuits(mat)) {
        if (max_circuit && popcount(c) > *max_circuit)
            continue;
        for (std::size_t y : elements_of(c))
            cc.add(y, elements_of(c & ~(Mask(1) << y)), "R2");
    }
    std::vector<std::size_t> xs;
    for (std::size_t i = 0; i < k; ++i)
        xs.push_back(m + i);
    for (std::size_t j = 0; j < m; ++j)
        cc.add(j, xs, "R3");

    auto names = numbered("y", m);
    for (auto& x : numbered("x", k))
        names.push_back(x);
    IndexInstance inst(std::move(field), n, m + k, std::move(cc.clients), std::move(names));
    return {std::move(inst), ReductionTrace{"matroid", std::move(cc.tags), {}}};
}

NetworkReduction index_to_network(const IndexInstance& inst, std::size_t c_blocks)
{
    if (c_blocks == 0)
        throw DomainError("index_to_network needs at least one bottleneck edge");
    const std::size_t k = inst.k();
    const auto& clients = inst.clients();
    const std::size_t sender = k;
    const std::size_t relay = k + 1;
    const std::size_t nodes = k + 2 + clients.size();

    std::vector<Edge> edges;
    std::vector<EdgeRole> roles;
    std::map<std::size_t, std::size_t> delta;
    auto add = [&](std::optional<std::size_t> t, std::optional<std::size_t> h, EdgeRole r) {
        edges.push_back({t, h});
        roles.push_back(r);
        return edges.size() - 1;
    };
    for (std::size_t i = 0; i < k; ++i)
        add(std::nullopt, i, {EdgeRole::input, i, 0});
    for (std::size_t i = 0; i < k; ++i)
        add(i, sender, {EdgeRole::forward, i, 0});
    for (std::size_t b = 0; b < c_blocks; ++b)
        add(sender, relay, {EdgeRole::bottleneck, b, 0});
    for (std::size_t r = 0; r < clients.size(); ++r) {
        const std::size_t v = k + 2 + r;
        add(relay, v, {EdgeRole::relay, r, 0});
        for (std::size_t z : clients[r].side)
            add(z, v, {EdgeRole::side, r, z});
        const std::size_t out = add(v, std::nullopt, {EdgeRole::output, r, clients[r].demand});
        delta[out] = clients[r].demand;
    }

    std::vector<std::string> labels;
    for (std::size_t i = 0; i < k; ++i)
        labels.push_back("source " + inst.names()[i]);
    labels.push_back("sender");
    labels.push_back("relay");
    for (const auto& cl : clients)
        labels.push_back("client " + describe_client(inst, cl));
    return finish_network("index instance", nodes, edges, roles, delta, std::move(labels));
}

NetworkReduction matroid_to_network(const Matroid& mat, std::optional<std::size_t> max_circuit)
{
    const auto idx = matroid_to_index(mat, Field::get(2, 1), 1, max_circuit);
    const auto& inst = idx.instance;
    const std::size_t m = mat.size();
    const std::size_t k = mat.rank();
    const std::size_t sources = m + k;
    // s_i for i < k holds x_{i}; s_{k+j} holds y_j.
    auto source_of = [&](std::size_t message) { return message < m ? k + message : message - m; };
    auto message_of = [&](std::size_t s) { return s < k ? m + s : s - k; };
    const std::size_t prime0 = sources;
    const std::size_t dprime0 = sources + m;
    const std::size_t client0 = sources + 2 * m;
    const auto& clients = inst.clients();

    std::vector<Edge> edges;
    std::vector<EdgeRole> roles;
    std::map<std::size_t, std::size_t> delta;
    auto add = [&](std::optional<std::size_t> t, std::optional<std::size_t> h, EdgeRole r) {
        edges.push_back({t, h});
        roles.push_back(r);
        return edges.size() - 1;
    };
    for (std::size_t s = 0; s < sources; ++s)
        add(std::nullopt, s, {EdgeRole::input, message_of(s), 0});
    for (std::size_t s = 0; s < sources; ++s)
        for (std::size_t j = 0; j < m; ++j)
            add(s, prime0 + j, {EdgeRole::prime, s, j});
    for (std::size_t s = 0; s < sources; ++s)
        for (std::size_t j = 0; j < m; ++j)
            add(s, dprime0 + j, {EdgeRole::dprime, s, j});
    for (std::size_t j = 0; j < m; ++j)
        add(prime0 + j, dprime0 + j, {EdgeRole::link, j, 0});
    for (std::size_t r = 0; r < clients.size(); ++r) {
        const std::size_t v = client0 + r;
        for (std::size_t z : clients[r].side)
            add(source_of(z), v, {EdgeRole::side, r, z});
        for (std::size_t j = 0; j < m; ++j)
            add(dprime0 + j, v, {EdgeRole::collect, r, j});
        const std::size_t out = add(v, std::nullopt, {EdgeRole::output, r, clients[r].demand});
        delta[out] = source_of(clients[r].demand);
    }

    std::vector<std::string> labels;
    for (std::size_t s = 0; s < sources; ++s)
        labels.push_back("s" + std::to_string(s + 1) + " " + inst.names()[message_of(s)]);
    for (std::size_t j = 0; j < m; ++j)
        labels.push_back("n'" + std::to_string(j + 1));
    for (std::size_t j = 0; j < m; ++j)
        labels.push_back("n''" + std::to_string(j + 1));
    for (std::size_t r = 0; r < clients.size(); ++r)
        labels.push_back("client " + describe_client(inst, clients[r]) + " " + idx.trace.tags[r]);
    return finish_network("matroid", client0 + clients.size(), edges, roles, delta, std::move(labels));
}

NetworkCode matroid_network_code(const Matroid& mat, const NetworkReduction& red, const Representation& rep)
{
    const auto check = verify_representation(mat, rep);
    if (!check.ok)
        throw DomainError("representation fails the rank equation");
    const std::size_t m = mat.size();
    const std::size_t k = mat.rank();
    const std::size_t n = rep.n;
    const auto& F = rep.field;
    const auto& net = red.network;
    const std::size_t K = net.k();
    if (K != m + k)
        throw DomainError("network does not match the matroid");
    // Network sources are x_1..x_k, y_1..y_m, so xi M_j occupies the top kn rows.
    auto source_of = [&](std::size_t message) { return message < m ? k + message : message - m; };
    auto sel = [&](std::size_t s) { return block_selector(F, K, n, s); };
    auto lifted = [&](std::size_t j) {
        Matrix out(F, K * n, n);
        out.set_block(0, 0, rep.mats[j]);
        return out;
    };

    NetworkCode code{F, n, std::vector<Matrix>(net.m())};
    for (std::size_t e = 0; e < net.m(); ++e) {
        const EdgeRole& r = red.roles[e];
        switch (r.kind) {
        case EdgeRole::input: code.F[e] = sel(e); break;
        case EdgeRole::prime:
        case EdgeRole::dprime: code.F[e] = sel(r.a); break;
        case EdgeRole::link: code.F[e] = lifted(r.a); break;
        case EdgeRole::collect: code.F[e] = lifted(r.b) + sel(k + r.b); break;
        case EdgeRole::side:
        case EdgeRole::output: code.F[e] = sel(source_of(r.b)); break;
        default: throw DomainError("edge role does not belong to a matroid network");
        }
    }
    return code;
}

LinearIndexCode transport_net_to_index(const NetworkInstance& net, const NetworkCode& code)
{
    const auto rep = verify(net, code);
    if (!rep.valid)
        throw InvalidCode("network code fails " + rep.condition + " at edge " +
                          std::to_string(net.original_index(*rep.failing_edge) + 1));
    const std::size_t n = code.n;
    const std::size_t k = net.k();
    const std::size_t m = net.m();
    Matrix L(code.field, n * (k + m), n * m);
    const Matrix id = Matrix::identity(code.field, n);
    for (std::size_t i = 0; i < m; ++i) {
        L.set_block(0, i * n, code.F[i]);
        L.set_block(n * (k + i), i * n, id);
    }
    return {code.field, n, std::move(L)};
}

TableCode transport_net_to_index(const NetworkInstance& net, const NetworkTableCode& code)
{
    const auto rep = verify(net, code);
    if (!rep.valid)
        throw InvalidCode("network code fails " + rep.condition + " at edge " +
                          std::to_string(net.original_index(*rep.failing_edge) + 1));
    const Field& F = *code.field;
    const unsigned q = F.q();
    const std::size_t n = code.n;
    const std::size_t m = net.m();
    std::size_t xs = 1;
    std::size_t ys = 1;
    for (std::size_t i = 0; i < n * net.k(); ++i)
        xs *= q;
    for (std::size_t i = 0; i < n * m; ++i) {
        ys *= q;
        if (xs * ys > TableCode::max_inputs)
            throw BudgetExceeded("table index code exceeds 2^20 inputs", 0);
    }
    TableCode out{code.field, n, net.k() + m, n * m, {}};
    out.outputs.reserve(xs * ys * n * m);
    for (std::size_t xi = 0; xi < xs; ++xi)
        for (std::size_t yi = 0; yi < ys; ++yi) {
            const auto y = table_input(yi, n * m, q);
            for (std::size_t e = 0; e < m; ++e)
                for (std::size_t j = 0; j < n; ++j)
                    out.outputs.push_back(F.plus(y[e * n + j], code.f[e][xi * n + j]));
        }
    return out;
}

NetworkCode transport_index_to_net(const NetworkInstance& net, const LinearIndexCode& code)
{
    const std::size_t n = code.n;
    const std::size_t k = net.k();
    const std::size_t m = net.m();
    const auto& F = code.field;
    if (!F || code.L.rows() != n * (k + m))
        throw DomainError("index code does not match the network's index instance");
    if (code.c() != n * m)
        throw PreconditionError("index code is not perfect: c = " + std::to_string(code.c()) + ", m n = " +
                                std::to_string(n * m));
    const Matrix A = code.L.block(0, 0, n * k, n * m);
    const Matrix B = code.L.block(n * k, 0, n * m, n * m);
    Matrix Binv;
    try {
        Binv = invert(B);
    } catch (const SingularMatrix& s) {
        throw InvalidCode("y-part of the code is singular (rank " + std::to_string(s.rank()) +
                          "), so some R5 client (y_i, X) cannot decode");
    }
    const Matrix C = A * Binv;

    auto check_row = [&](std::size_t i, std::size_t target) {
        for (std::size_t j = 0; j < k; ++j) {
            const Matrix blk = C.block(j * n, i * n, n, n);
            const bool ok = j == target ? rank(blk) == n : blk.is_zero();
            if (!ok)
                throw InvalidCode("client (x" + std::to_string(target + 1) + ",{y" + std::to_string(i + 1) +
                                  "}) cannot decode: block C_" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                                  (j == target ? " is singular" : " is nonzero"));
        }
    };
    for (std::size_t i = 0; i < m; ++i) {
        if (net.is_input(i))
            check_row(i, i);
        if (net.is_output(i))
            check_row(i, net.demand(i));
    }

    NetworkCode out{F, n, std::vector<Matrix>(m)};
    for (std::size_t i = 0; i < m; ++i) {
        if (net.is_output(i))
            out.F[i] = block_selector(F, k, n, net.demand(i));
        else if (net.is_input(i))
            out.F[i] = block_selector(F, k, n, i);
        else
            out.F[i] = C.block(0, i * n, n * k, n);
    }
    const auto rep = verify(net, out);
    if (!rep.valid) {
        const std::size_t e = *rep.failing_edge;
        std::string side;
        for (std::size_t p : net.parents(e))
            side += (side.empty() ? "y" : ",y") + std::to_string(p + 1);
        throw InvalidCode("client (y" + std::to_string(e + 1) + ",{" + side + "}) cannot decode (" + rep.condition +
                          " at edge " + std::to_string(net.original_index(e) + 1) + ")");
    }
    return out;
}

RepIndexCode transport_rep_to_index(const Matroid& mat, const Representation& rep, const IndexInstance& inst)
{
    const auto check = verify_representation(mat, rep);
    if (!check.ok)
        throw DomainError("representation fails the rank equation");
    const std::size_t m = mat.size();
    const std::size_t k = mat.rank();
    const std::size_t n = rep.n;
    const auto& F = rep.field;
    if (inst.k() != m + k)
        throw DomainError("index instance does not match the matroid");

    Matrix L(F, n * (m + k), n * m);
    const Matrix id = Matrix::identity(F, n);
    for (std::size_t i = 0; i < m; ++i) {
        L.set_block(i * n, i * n, id);
        L.set_block(n * m, i * n, rep.mats[i]);
    }
    RepIndexCode out{{F, n, L}, {}};
    const std::size_t c = n * m;

    for (const auto& cl : inst.clients()) {
        const std::size_t h = cl.side.size();
        Matrix T(F, c + n * h, n);
        const bool side_in_y = std::all_of(cl.side.begin(), cl.side.end(), [&](std::size_t z) { return z < m; });
        if (cl.demand >= m && side_in_y && h == k) {
            // Basis client: x_i = [f_B - y_B] U_i with [U_1|...|U_k] = M_B^{-1}.
            const std::size_t i = cl.demand - m;
            const Matrix U = invert(concat_indexed(rep.mats, cl.side));
            for (std::size_t j = 0; j < h; ++j) {
                const Matrix u = U.block(j * n, i * n, n, n);
                T.set_block(cl.side[j] * n, 0, u);
                T.set_block(c + j * n, 0, -u);
            }
        } else if (cl.demand < m && side_in_y) {
            // Circuit client: M_y = M_{C'} S, so y = f_y - [f_{C'} - y_{C'}] S.
            auto S = solve_right(concat_indexed(rep.mats, cl.side), rep.mats[cl.demand]);
            if (!S)
                throw DomainError("client " + describe_client(inst, cl) + " is not a circuit of the matroid");
            T.set_block(cl.demand * n, 0, id);
            for (std::size_t j = 0; j < h; ++j) {
                const Matrix s = S->block(j * n, 0, n, n);
                T.set_block(cl.side[j] * n, 0, -s);
                T.set_block(c + j * n, 0, s);
            }
        } else if (cl.demand < m && h == k && k > 0 && cl.side.front() == m) {
            // y_i = f_i - xi M_i.
            T.set_block(cl.demand * n, 0, id);
            T.set_block(c, 0, -rep.mats[cl.demand]);
        } else {
            throw DomainError("client " + describe_client(inst, cl) + " is not produced by the matroid reduction");
        }
        if (!(client_view(out.code, m + k, cl) * T == block_selector(F, m + k, n, cl.demand)))
            throw IntegrityError("decoder for client " + describe_client(inst, cl) + " does not reproduce its demand");
        out.decoders.push_back(std::move(T));
    }
    return out;
}

Representation transport_index_to_rep(const Matroid& mat, const LinearIndexCode& code)
{
    const std::size_t m = mat.size();
    const std::size_t k = mat.rank();
    const std::size_t n = code.n;
    if (!code.field || code.L.rows() != n * (m + k))
        throw DomainError("index code does not match the matroid's index instance");
    if (code.c() != n * m)
        throw PreconditionError("index code is not perfect: c = " + std::to_string(code.c()) + ", m n = " +
                                std::to_string(n * m));
    Matrix Binv;
    try {
        Binv = invert(code.L.block(0, 0, n * m, n * m));
    } catch (const SingularMatrix& s) {
        throw InvalidCode("y-part of the code is singular (rank " + std::to_string(s.rank()) +
                          "), so some R3 client (y_i, X) cannot decode");
    }
    const Matrix A = code.L.block(n * m, 0, n * k, n * m) * Binv;
    Representation rep{code.field, n, {}};
    for (std::size_t i = 0; i < m; ++i)
        rep.mats.push_back(A.block(0, i * n, n * k, n));
    const auto check = verify_representation(mat, rep);
    if (!check.ok) {
        std::string set;
        for (std::size_t e : elements_of(check.failing))
            set += (set.empty() ? "" : ",") + std::to_string(e + 1);
        throw InvalidCode("extracted matrices fail the rank equation at {" + set + "}: rank " +
                          std::to_string(check.actual) + ", expected " + std::to_string(check.expected));
    }
    return rep;
}

} // namespace icn
