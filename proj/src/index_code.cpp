#include "icn/index_code.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <unordered_map>

#include "icn/parallel.hpp"

namespace icn {

IndexInstance::IndexInstance(FieldPtr field, std::size_t n, std::size_t k, std::vector<Client> clients,
                             std::vector<std::string> names)
    : field_(std::move(field)), n_(n), k_(k), clients_(std::move(clients)), names_(std::move(names))
{
    if (!field_)
        throw DomainError("index instance without a field");
    if (n_ == 0)
        throw DomainError("block length must be >= 1");
    if (names_.empty())
        for (std::size_t i = 0; i < k_; ++i)
            names_.push_back("x" + std::to_string(i + 1));
    if (names_.size() != k_)
        throw DomainError("message name count differs from k");
    std::set<Client> seen;
    for (auto& cl : clients_) {
        std::sort(cl.side.begin(), cl.side.end());
        if (cl.demand >= k_)
            throw DomainError("client demand " + std::to_string(cl.demand + 1) + " outside 1.." + std::to_string(k_));
        if (std::adjacent_find(cl.side.begin(), cl.side.end()) != cl.side.end())
            throw DomainError("repeated message in side information");
        for (std::size_t h : cl.side) {
            if (h >= k_)
                throw DomainError("side information index out of range");
            if (h == cl.demand)
                throw DomainError("client holds its own demand as side information");
        }
        if (!seen.insert(cl).second)
            throw DomainError("duplicate client");
    }
}

IndexInstance IndexInstance::with_block(FieldPtr field, std::size_t n) const
{
    return IndexInstance(std::move(field), n, k_, clients_, names_);
}

std::size_t mu(const IndexInstance& inst)
{
    std::map<std::vector<std::size_t>, std::set<std::size_t>> by_side;
    for (const auto& cl : inst.clients())
        by_side[cl.side].insert(cl.demand);
    std::size_t best = 0;
    for (const auto& [side, demands] : by_side)
        best = std::max(best, demands.size());
    return best;
}

MuBoundStats& mu_bound_stats()
{
    static MuBoundStats stats;
    return stats;
}

namespace {

void record_mu_bound(const IndexInstance& inst, std::size_t c)
{
    auto& stats = mu_bound_stats();
    ++stats.checked;
    if (c < mu(inst) * inst.n())
        ++stats.violations;
}

void check_code_shape(const IndexInstance& inst, const FieldPtr& field, std::size_t n)
{
    if (!field || !(*field == *inst.field()))
        throw DomainError("code and instance are over different fields");
    if (n != inst.n())
        throw DomainError("code block length " + std::to_string(n) + " != instance block length " +
                          std::to_string(inst.n()));
}

} // namespace

LinearVerifyReport verify_linear(const IndexInstance& inst, const LinearIndexCode& code, int threads)
{
    check_code_shape(inst, code.field, code.n);
    const std::size_t n = inst.n();
    const std::size_t dim = n * inst.k();
    if (code.L.rows() != dim)
        throw DomainError("encoding matrix must have n*k = " + std::to_string(dim) + " rows");

    const auto& clients = inst.clients();
    LinearVerifyReport rep;
    rep.client_ok.assign(clients.size(), 0);
    rep.decoders.resize(clients.size());
    parallel_for(clients.size(), threads, [&](std::size_t ci) {
        const auto& cl = clients[ci];
        Matrix a(code.field, dim, code.c() + n * cl.side.size());
        a.set_block(0, 0, code.L);
        for (std::size_t t = 0; t < cl.side.size(); ++t)
            for (std::size_t j = 0; j < n; ++j)
                a(cl.side[t] * n + j, code.c() + t * n + j) = 1;
        auto dec = solve_right(a, block_selector(code.field, inst.k(), n, cl.demand));
        rep.client_ok[ci] = dec.has_value();
        rep.decoders[ci] = std::move(dec);
    });
    rep.valid = std::all_of(rep.client_ok.begin(), rep.client_ok.end(), [](char ok) { return ok != 0; });
    if (rep.valid)
        record_mu_bound(inst, code.c());
    return rep;
}

std::size_t table_index(std::span<const Elem> xi, unsigned q)
{
    std::size_t idx = 0;
    for (Elem e : xi)
        idx = idx * q + e;
    return idx;
}

std::vector<Elem> table_input(std::size_t index, std::size_t length, unsigned q)
{
    std::vector<Elem> xi(length);
    for (std::size_t i = length; i-- > 0;) {
        xi[i] = Elem(index % q);
        index /= q;
    }
    return xi;
}

TableVerifyReport verify_table(const IndexInstance& inst, const TableCode& code, int threads)
{
    check_code_shape(inst, code.field, code.n);
    if (code.k != inst.k())
        throw DomainError("table code message count differs from instance");
    const unsigned q = inst.field()->q();
    const std::size_t len = inst.n() * inst.k();
    std::size_t inputs = 1;
    for (std::size_t i = 0; i < len; ++i) {
        inputs *= q;
        if (inputs > TableCode::max_inputs)
            throw BudgetExceeded("table code input space exceeds 2^20", 0);
    }
    if (code.outputs.size() != inputs * code.c)
        throw DomainError("table code must list q^{nk} rows of c symbols");

    // Distinct codewords get small ids so client keys stay in 64 bits.
    std::vector<std::uint64_t> word_id(inputs);
    {
        std::map<std::vector<Elem>, std::uint64_t> ids;
        for (std::size_t xi = 0; xi < inputs; ++xi) {
            auto r = code.row(xi);
            auto [it, fresh] = ids.try_emplace(std::vector<Elem>(r.begin(), r.end()), ids.size());
            word_id[xi] = it->second;
        }
    }

    const auto& clients = inst.clients();
    const std::size_t n = inst.n();
    std::vector<char> ok(clients.size(), 1);
    parallel_for(clients.size(), threads, [&](std::size_t ci) {
        const auto& cl = clients[ci];
        std::uint64_t side_space = 1;
        for (std::size_t i = 0; i < n * cl.side.size(); ++i)
            side_space *= q;
        std::unordered_map<std::uint64_t, std::size_t> seen; // key -> demanded packets as an integer
        seen.reserve(inputs);
        for (std::size_t xi_idx = 0; xi_idx < inputs; ++xi_idx) {
            const auto xi = table_input(xi_idx, len, q);
            std::uint64_t side_val = 0;
            for (std::size_t h : cl.side)
                for (std::size_t j = 0; j < n; ++j)
                    side_val = side_val * q + xi[h * n + j];
            std::size_t want = 0;
            for (std::size_t j = 0; j < n; ++j)
                want = want * q + xi[cl.demand * n + j];
            const std::uint64_t key = word_id[xi_idx] * side_space + side_val;
            auto [it, fresh] = seen.try_emplace(key, want);
            if (!fresh && it->second != want) {
                ok[ci] = 0;
                return;
            }
        }
    });
    TableVerifyReport rep;
    for (std::size_t ci = 0; ci < clients.size(); ++ci)
        if (!ok[ci]) {
            rep.valid = false;
            rep.failing_client = ci;
            break;
        }
    if (rep.valid)
        record_mu_bound(inst, code.c);
    return rep;
}

bool is_perfect(const IndexInstance& inst, const LinearIndexCode& code)
{
    if (!verify_linear(inst, code).valid)
        throw DomainError("is_perfect: code does not verify");
    return code.c() == mu(inst) * inst.n();
}

bool is_perfect(const IndexInstance& inst, const TableCode& code)
{
    if (!verify_table(inst, code).valid)
        throw DomainError("is_perfect: code does not verify");
    return code.c == mu(inst) * inst.n();
}

std::vector<Elem> encode(const LinearIndexCode& code, std::span<const Elem> xi)
{
    return vec_mul(xi, code.L);
}

TableCode to_table(const LinearIndexCode& code, std::size_t k)
{
    const unsigned q = code.field->q();
    const std::size_t len = code.n * k;
    if (code.L.rows() != len)
        throw DomainError("to_table: encoding matrix row count differs from n*k");
    std::size_t inputs = 1;
    for (std::size_t i = 0; i < len; ++i) {
        inputs *= q;
        if (inputs > TableCode::max_inputs)
            throw BudgetExceeded("table expansion exceeds 2^20 inputs", 0);
    }
    TableCode t{code.field, code.n, k, code.c(), {}};
    t.outputs.reserve(inputs * t.c);
    for (std::size_t idx = 0; idx < inputs; ++idx) {
        const auto word = encode(code, table_input(idx, len, q));
        t.outputs.insert(t.outputs.end(), word.begin(), word.end());
    }
    return t;
}

std::vector<Elem> side_packets(std::span<const Elem> xi, std::span<const std::size_t> side, std::size_t n)
{
    std::vector<Elem> out;
    out.reserve(side.size() * n);
    for (std::size_t h : side)
        for (std::size_t j = 0; j < n; ++j)
            out.push_back(xi[h * n + j]);
    return out;
}

std::vector<Elem> apply_decoder(const Matrix& decoder, std::span<const Elem> encoded, std::span<const Elem> side)
{
    std::vector<Elem> in(encoded.begin(), encoded.end());
    in.insert(in.end(), side.begin(), side.end());
    return vec_mul(in, decoder);
}

} // namespace icn
