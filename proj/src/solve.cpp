#include "icn/solve.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <string>

namespace icn {

namespace {

constexpr std::uint64_t deadline_stride = 1024;

// ---------------------------------------------------------------- index codes

struct IndexSearch {
    const IndexInstance& inst;
    FieldPtr field;
    std::size_t n;
    std::size_t N; // rows of L
    std::size_t c;
    std::vector<std::vector<Elem>> columns; // column i has integer value i + 1
    std::vector<std::size_t> order;         // clients, smallest side first
    std::vector<EchelonBasis> side_span;    // per client, span of E_H
    std::vector<Matrix> demand;             // per client, E_x
    const Deadline& deadline;

    // Inserts column idx into every client's basis and tests the deficits
    // against the columns still to be chosen after this one.
    bool extend(std::vector<EchelonBasis>& bases, std::size_t idx, std::size_t remaining) const
    {
        for (std::size_t r : order) {
            bases[r].insert(columns[idx]);
            if (bases[r].deficit(demand[r]) > remaining)
                return false;
        }
        return true;
    }

    bool dfs(std::size_t depth, std::size_t start, const std::vector<EchelonBasis>& bases, std::vector<std::size_t>& chosen,
             BranchOutcome<std::vector<std::size_t>>& out, std::uint64_t cap) const
    {
        if (depth == c)
            return true;
        const std::size_t last = columns.size() - (c - depth - 1);
        for (std::size_t idx = start; idx < last; ++idx) {
            if (++out.visited > cap || (out.visited % deadline_stride == 0 && deadline.passed())) {
                out.capped = true;
                return false;
            }
            auto next = bases;
            if (!extend(next, idx, c - depth - 1))
                continue;
            chosen.push_back(idx);
            if (dfs(depth + 1, idx + 1, next, chosen, out, cap))
                return true;
            chosen.pop_back();
            if (out.capped)
                return false;
        }
        return false;
    }
};

Matrix columns_matrix(const FieldPtr& field, std::size_t rows, const std::vector<std::vector<Elem>>& cols,
                      std::size_t width)
{
    Matrix m(field, rows, width);
    for (std::size_t j = 0; j < cols.size(); ++j)
        for (std::size_t r = 0; r < rows; ++r)
            m(r, j) = cols[j][r];
    return m;
}

// ------------------------------------------------------------ network codes

using Columns = std::vector<std::vector<Elem>>;

// Canonical enumeration of the d-dimensional subspaces of F_q^u as reduced
// row echelon d x u matrices: pivot sets in lexicographic order, then the
// free entries as a base-q counter (first free entry most significant).
class SubspaceEnum {
public:
    SubspaceEnum(std::size_t u, std::size_t d, unsigned q) : u_(u), d_(d), q_(q)
    {
        std::vector<std::size_t> piv(d);
        std::iota(piv.begin(), piv.end(), 0);
        while (true) {
            std::vector<std::pair<std::size_t, std::size_t>> fr;
            for (std::size_t r = 0; r < d; ++r)
                for (std::size_t j = piv[r] + 1; j < u; ++j)
                    if (!std::binary_search(piv.begin(), piv.end(), j))
                        fr.emplace_back(r, j);
            std::uint64_t count = 1;
            for (std::size_t i = 0; i < fr.size(); ++i)
                count = count > (std::uint64_t(1) << 40) ? count : count * q;
            start_.push_back(total_);
            total_ += count;
            pivots_.push_back(piv);
            free_.push_back(std::move(fr));
            // next combination
            std::size_t i = d;
            while (i > 0 && piv[i - 1] == u - d + i - 1)
                --i;
            if (i == 0)
                break;
            ++piv[i - 1];
            for (std::size_t j = i; j < d; ++j)
                piv[j] = piv[j - 1] + 1;
        }
    }

    std::uint64_t total() const noexcept { return total_; }

    // Row r of the idx-th matrix, as coefficients over the u basis vectors.
    std::vector<std::vector<Elem>> get(std::uint64_t idx) const
    {
        const auto it = std::upper_bound(start_.begin(), start_.end(), idx);
        const std::size_t s = static_cast<std::size_t>(it - start_.begin()) - 1;
        std::uint64_t v = idx - start_[s];
        std::vector<std::vector<Elem>> rows(d_, std::vector<Elem>(u_, 0));
        for (std::size_t r = 0; r < d_; ++r)
            rows[r][pivots_[s][r]] = 1;
        const auto& fr = free_[s];
        for (std::size_t i = fr.size(); i-- > 0;) {
            rows[fr[i].first][fr[i].second] = Elem(v % q_);
            v /= q_;
        }
        return rows;
    }

private:
    std::size_t u_;
    std::size_t d_;
    unsigned q_;
    std::uint64_t total_ = 0;
    std::vector<std::vector<std::size_t>> pivots_;
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> free_;
    std::vector<std::uint64_t> start_;
};

struct NetSearch {
    const NetworkInstance& net;
    FieldPtr field;
    std::size_t n;
    std::size_t N; // n k
    std::vector<std::size_t> levels;
    std::vector<std::vector<std::size_t>> groups; // outputs sharing a tail node
    std::vector<std::vector<std::size_t>> checks; // per level, groups to test
    std::vector<long> level_of;                   // per edge, -1 when not a level
    const Deadline& deadline;

    bool assigned(std::size_t e, std::size_t depth) const
    {
        return net.is_input(e) || (level_of[e] >= 0 && static_cast<std::size_t>(level_of[e]) < depth);
    }

    // All outputs of a group have the same parents, so their demands are
    // tested together against what those parents can still carry.
    bool group_ok(std::size_t g, std::size_t depth, const std::vector<Columns>& W) const
    {
        const auto& outs = groups[g];
        if (net.is_input(outs.front())) {
            for (std::size_t o : outs)
                if (net.demand(o) != o)
                    return false;
            return true;
        }
        EchelonBasis b(field, N);
        std::size_t open = 0;
        for (std::size_t p : net.parents(outs.front())) {
            if (!assigned(p, depth)) {
                ++open;
                continue;
            }
            for (const auto& col : W[p])
                b.insert(col);
        }
        std::vector<Matrix> want;
        for (std::size_t o : outs)
            want.push_back(block_selector(field, net.k(), n, net.demand(o)));
        return b.deficit(hconcat(want)) <= n * open;
    }

    // Basis of the span of e's parents, chosen greedily in parent order.
    Columns parent_basis(std::size_t e, const std::vector<Columns>& W) const
    {
        EchelonBasis b(field, N);
        Columns out;
        for (std::size_t p : net.parents(e))
            for (const auto& col : W[p])
                if (b.insert(col))
                    out.push_back(col);
        return out;
    }

    SubspaceEnum options(const Columns& U) const { return SubspaceEnum(U.size(), std::min(n, U.size()), field->q()); }

    Columns candidate(const Columns& U, const SubspaceEnum& en, std::uint64_t idx) const
    {
        const Field& F = *field;
        Columns out;
        for (const auto& row : en.get(idx)) {
            std::vector<Elem> w(N, 0);
            for (std::size_t j = 0; j < U.size(); ++j)
                if (row[j] != 0)
                    for (std::size_t r = 0; r < N; ++r)
                        w[r] = F.plus(w[r], F.times(row[j], U[j][r]));
            out.push_back(std::move(w));
        }
        return out;
    }

    bool level_ok(std::size_t depth, const std::vector<Columns>& W) const
    {
        for (std::size_t g : checks[depth])
            if (!group_ok(g, depth + 1, W))
                return false;
        return true;
    }

    bool dfs(std::size_t depth, std::vector<Columns>& W, BranchOutcome<std::vector<Columns>>& out, std::uint64_t cap) const
    {
        if (depth == levels.size())
            return true;
        const std::size_t e = levels[depth];
        const Columns U = parent_basis(e, W);
        const SubspaceEnum en = options(U);
        for (std::uint64_t idx = 0; idx < en.total(); ++idx) {
            if (++out.visited > cap || (out.visited % deadline_stride == 0 && deadline.passed())) {
                out.capped = true;
                return false;
            }
            W[e] = candidate(U, en, idx);
            if (!level_ok(depth, W))
                continue;
            if (dfs(depth + 1, W, out, cap))
                return true;
            if (out.capped)
                return false;
        }
        return false;
    }
};

std::size_t gcd_size(std::size_t a, std::size_t b) { return std::gcd(a, b); }

} // namespace

std::string rate_string(std::size_t c, std::size_t n)
{
    const std::size_t g = gcd_size(c, n == 0 ? 1 : n);
    const std::size_t num = c / (g ? g : 1);
    const std::size_t den = n / (g ? g : 1);
    return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den);
}

MinIndexResult min_linear_index(const IndexInstance& base, FieldPtr field, std::size_t n, const SearchBudget& budget,
                                int threads, std::optional<std::size_t> c_max)
{
    const IndexInstance inst = base.with_block(field, n);
    const std::size_t k = inst.k();
    const std::size_t N = n * k;
    const unsigned q = field->q();
    std::uint64_t space = 1;
    for (std::size_t i = 0; i < N; ++i) {
        space *= q;
        if (space > TableCode::max_inputs)
            throw BudgetExceeded("column space q^{nk} exceeds 2^20", 0);
    }
    const std::size_t top = c_max.value_or(N);
    const Deadline deadline(budget.max_seconds);

    MinIndexResult res;
    IndexSearch s{inst, field, n, N, 0, {}, {}, {}, {}, deadline};
    for (std::uint64_t v = 1; v < space; ++v)
        s.columns.push_back(table_input(static_cast<std::size_t>(v), N, q));
    const auto& clients = inst.clients();
    s.order.resize(clients.size());
    std::iota(s.order.begin(), s.order.end(), 0);
    std::stable_sort(s.order.begin(), s.order.end(),
                     [&](std::size_t a, std::size_t b) { return clients[a].side.size() < clients[b].side.size(); });
    for (const auto& cl : clients) {
        EchelonBasis b(field, N);
        for (std::size_t h : cl.side)
            b.insert_columns(block_selector(field, k, n, h));
        s.side_span.push_back(std::move(b));
        s.demand.push_back(block_selector(field, k, n, cl.demand));
    }

    for (std::size_t c = mu(inst) * n; c <= top; ++c) {
        s.c = c;
        LevelOutcome level{c, SearchStatus::none, 0};
        std::optional<std::vector<std::size_t>> found;
        if (c == 0) {
            bool ok = true;
            for (std::size_t r = 0; r < clients.size(); ++r)
                ok = ok && s.side_span[r].deficit(s.demand[r]) == 0;
            if (ok)
                found = std::vector<std::size_t>{};
        } else if (c <= s.columns.size()) {
            const std::uint64_t left = budget.max_nodes - std::min(budget.max_nodes, res.visited);
            const std::size_t branches = s.columns.size() - (c - 1);
            auto pr = partitioned_search<std::vector<std::size_t>>(
                branches, left, threads, [&](std::size_t b, std::uint64_t cap) {
                    BranchOutcome<std::vector<std::size_t>> out;
                    if (++out.visited > cap) {
                        out.capped = true;
                        return out;
                    }
                    auto bases = s.side_span;
                    if (!s.extend(bases, b, c - 1))
                        return out;
                    std::vector<std::size_t> chosen{b};
                    if (s.dfs(1, b + 1, bases, chosen, out, cap))
                        out.witness = std::move(chosen);
                    return out;
                });
            level.status = pr.status;
            level.visited = pr.visited;
            found = std::move(pr.witness);
        }
        res.visited += level.visited;
        if (found)
            level.status = SearchStatus::found;
        res.levels.push_back(level);
        if (level.status == SearchStatus::inconclusive) {
            res.status = SearchStatus::inconclusive;
            return res;
        }
        if (found) {
            std::vector<std::vector<Elem>> cols;
            for (std::size_t idx : *found)
                cols.push_back(s.columns[idx]);
            LinearIndexCode code{field, n, columns_matrix(field, N, cols, c)};
            if (!verify_linear(inst, code).valid)
                throw IntegrityError("index search produced a code that does not verify");
            res.status = SearchStatus::found;
            res.witness = std::move(code);
            return res;
        }
        res.c_exhausted = c;
    }
    res.status = SearchStatus::none;
    return res;
}

NetSearchResult search_network_code(const NetworkInstance& net, FieldPtr field, std::size_t n,
                                    const SearchBudget& budget, int threads)
{
    if (!field || n == 0)
        throw DomainError("search_network_code needs a field and n >= 1");
    const std::size_t m = net.m();
    const std::size_t words = (m + 63) / 64;
    std::vector<std::vector<std::uint64_t>> anc(m, std::vector<std::uint64_t>(words, 0));
    for (std::size_t e : net.topo_order())
        for (std::size_t p : net.parents(e)) {
            for (std::size_t w = 0; w < words; ++w)
                anc[e][w] |= anc[p][w];
            anc[e][p / 64] |= std::uint64_t(1) << (p % 64);
        }
    auto anc_count = [&](std::size_t e) {
        std::size_t c = 0;
        for (auto w : anc[e])
            c += static_cast<std::size_t>(__builtin_popcountll(w));
        return c;
    };
    const Deadline deadline(budget.max_seconds);
    NetSearch s{net, field, n, n * net.k(), {}, {}, {}, std::vector<long>(m, -1), deadline};
    {
        std::map<std::size_t, std::size_t> by_tail;
        for (std::size_t o : net.outputs()) {
            const auto& t = net.edges()[o].tail;
            if (t && by_tail.count(*t)) {
                s.groups[by_tail[*t]].push_back(o);
                continue;
            }
            if (t)
                by_tail[*t] = s.groups.size();
            s.groups.push_back({o});
        }
    }
    std::vector<std::size_t> order(s.groups.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return anc_count(s.groups[a].front()) < anc_count(s.groups[b].front());
    });

    // Post-order over the ancestors of each group, parents with fewer
    // ancestors first.
    std::vector<std::size_t> post;
    std::vector<char> seen(m, 0);
    auto visit = [&](auto&& self, std::size_t e) -> void {
        if (seen[e] || net.is_input(e))
            return;
        seen[e] = 1;
        auto ps = net.parents(e);
        std::stable_sort(ps.begin(), ps.end(), [&](std::size_t a, std::size_t b) { return anc_count(a) < anc_count(b); });
        for (std::size_t p : ps)
            self(self, p);
        if (!net.is_output(e))
            post.push_back(e);
    };
    for (std::size_t g : order)
        for (std::size_t o : s.groups[g])
            visit(visit, o);

    // An edge whose parents carry at most n dimensions in total has a single
    // option; it is placed as soon as its parents are, so the checks it
    // enables run early.
    std::vector<std::size_t> cap(m, n);
    for (std::size_t e : net.topo_order())
        if (!net.is_input(e)) {
            std::size_t sum = 0;
            for (std::size_t p : net.parents(e))
                sum += cap[p];
            cap[e] = std::min(n, sum);
        }
    std::vector<char> relevant(m, 0);
    for (std::size_t e : post)
        relevant[e] = 1;
    std::vector<std::size_t> waiting(m, 0);
    std::vector<std::vector<std::size_t>> children(m);
    for (std::size_t e = 0; e < m; ++e)
        for (std::size_t p : net.parents(e)) {
            children[p].push_back(e);
            if (!net.is_input(p))
                ++waiting[e];
        }
    auto forced = [&](std::size_t e) {
        std::size_t sum = 0;
        for (std::size_t p : net.parents(e))
            sum += cap[p];
        return sum <= n;
    };
    std::vector<char> placed(m, 0);
    auto place = [&](auto&& self, std::size_t e) -> void {
        placed[e] = 1;
        s.level_of[e] = static_cast<long>(s.levels.size());
        s.levels.push_back(e);
        for (std::size_t c : children[e])
            if (--waiting[c] == 0 && relevant[c] && !placed[c] && forced(c))
                self(self, c);
    };
    for (std::size_t e : net.topo_order())
        if (relevant[e] && !placed[e] && waiting[e] == 0 && forced(e))
            place(place, e);
    for (std::size_t e : post)
        if (!placed[e])
            place(place, e);

    s.checks.assign(s.levels.size(), {});
    for (std::size_t g = 0; g < s.groups.size(); ++g)
        for (std::size_t p : net.parents(s.groups[g].front()))
            if (s.level_of[p] >= 0) {
                auto& list = s.checks[static_cast<std::size_t>(s.level_of[p])];
                if (list.empty() || list.back() != g)
                    list.push_back(g);
            }

    std::vector<Columns> W(m);
    for (std::size_t i = 0; i < net.k(); ++i) {
        const Matrix sel = block_selector(field, net.k(), n, i);
        for (std::size_t j = 0; j < n; ++j) {
            std::vector<Elem> col(s.N);
            for (std::size_t r = 0; r < s.N; ++r)
                col[r] = sel(r, j);
            W[i].push_back(std::move(col));
        }
    }

    NetSearchResult res;
    for (std::size_t g = 0; g < s.groups.size(); ++g)
        if (!s.group_ok(g, 0, W))
            return res;

    // Levels with a single option form a forced prefix; the tree is split at
    // the first real choice.
    std::size_t p = 0;
    std::uint64_t prefix = 0;
    for (; p < s.levels.size(); ++p) {
        const std::size_t e = s.levels[p];
        const Columns U = s.parent_basis(e, W);
        const SubspaceEnum en = s.options(U);
        if (en.total() != 1)
            break;
        ++prefix;
        W[e] = s.candidate(U, en, 0);
        if (!s.level_ok(p, W)) {
            res.visited = prefix;
            return res;
        }
    }

    std::optional<std::vector<Columns>> winner;
    if (p == s.levels.size()) {
        winner = W;
        res.visited = prefix;
    } else {
        const Columns U = s.parent_basis(s.levels[p], W);
        const SubspaceEnum en = s.options(U);
        const std::uint64_t left = budget.max_nodes - std::min(budget.max_nodes, prefix);
        auto pr = partitioned_search<std::vector<Columns>>(
            static_cast<std::size_t>(en.total()), left, threads, [&](std::size_t b, std::uint64_t cap) {
                BranchOutcome<std::vector<Columns>> out;
                if (++out.visited > cap) {
                    out.capped = true;
                    return out;
                }
                auto local = W;
                local[s.levels[p]] = s.candidate(U, en, b);
                if (s.level_ok(p, local) && s.dfs(p + 1, local, out, cap))
                    out.witness = std::move(local);
                return out;
            });
        if (pr.status == SearchStatus::inconclusive) {
            res.status = SearchStatus::inconclusive;
            res.visited = budget.max_nodes;
            return res;
        }
        res.visited = prefix + pr.visited;
        winner = std::move(pr.witness);
    }
    if (!winner)
        return res;

    NetworkCode code{field, n, std::vector<Matrix>(m)};
    for (std::size_t e = 0; e < m; ++e) {
        if (net.is_output(e))
            code.F[e] = block_selector(field, net.k(), n, net.demand(e));
        else if (net.is_input(e))
            code.F[e] = block_selector(field, net.k(), n, e);
        else
            code.F[e] = columns_matrix(field, s.N, (*winner)[e], n);
    }
    if (!verify(net, code).valid)
        throw IntegrityError("network search produced a code that does not verify");
    res.status = SearchStatus::found;
    res.code = std::move(code);
    return res;
}

RateEvidence evidence_from(const MinIndexResult& r, FieldPtr field, std::size_t n, std::size_t mu_value)
{
    RateEvidence ev{n, std::move(field), r.witness, mu_value * n, "exhaustive index search"};
    if (r.witness)
        ev.lower = r.witness->c();
    else if (r.c_exhausted)
        ev.lower = std::max(ev.lower, *r.c_exhausted + 1);
    return ev;
}

RateEvidence perfect_refuted(FieldPtr field, std::size_t n, std::size_t mu_value, std::string method)
{
    return RateEvidence{n, std::move(field), std::nullopt, mu_value * n + 1, std::move(method)};
}

RateReport rate_report(std::string name, const IndexInstance& inst, const std::vector<RateEvidence>& evidence)
{
    RateReport rep{std::move(name), mu(inst), {}, {}};
    for (const auto& ev : evidence) {
        if (!ev.field || ev.n == 0)
            throw DomainError("rate evidence without a field or block length");
        auto it = std::find_if(rep.entries.begin(), rep.entries.end(),
                               [&](const RateEntry& e) { return e.n == ev.n && e.q == ev.field->q(); });
        if (it == rep.entries.end()) {
            rep.entries.push_back(RateEntry{ev.n, ev.field->q(), rep.mu * ev.n, std::nullopt, {}});
            it = rep.entries.end() - 1;
        }
        if (ev.witness) {
            const IndexInstance at = inst.with_block(ev.field, ev.n);
            if (ev.witness->n != ev.n || !verify_linear(at, *ev.witness).valid)
                throw IntegrityError("witness for (" + std::to_string(ev.n) + "," + std::to_string(ev.field->q()) +
                                     ") does not verify");
            it->upper = it->upper ? std::min(*it->upper, ev.witness->c()) : ev.witness->c();
        }
        it->lower = std::max(it->lower, ev.lower);
        it->methods.push_back(ev.method);
        if (it->upper && *it->upper < it->lower)
            throw IntegrityError("evidence for (" + std::to_string(ev.n) + "," + std::to_string(ev.field->q()) +
                                 ") contradicts itself");
    }
    std::sort(rep.entries.begin(), rep.entries.end(),
              [](const RateEntry& a, const RateEntry& b) { return std::pair(a.q, a.n) < std::pair(b.q, b.n); });
    for (std::size_t a = 0; a < rep.entries.size(); ++a) {
        const auto& fa = rep.entries[a];
        if (!fa.upper)
            continue;
        for (std::size_t b = 0; b < rep.entries.size(); ++b) {
            const auto& sb = rep.entries[b];
            // upper_a / n_a < lower_b / n_b
            if (a != b && *fa.upper * sb.n < sb.lower * fa.n)
                rep.separations.push_back(
                    {a, b,
                     "lambda*(" + std::to_string(fa.n) + "," + std::to_string(fa.q) + ") = " +
                         rate_string(*fa.upper, fa.n) + " < lambda*(" + std::to_string(sb.n) + "," +
                         std::to_string(sb.q) + ") >= " + rate_string(sb.lower, sb.n)});
        }
    }
    return rep;
}

} // namespace icn
