#include "icn/matroid.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <string>

namespace icn {

std::vector<std::size_t> elements_of(Mask s)
{
    std::vector<std::size_t> out;
    for (std::size_t i = 0; s != 0; ++i, s >>= 1)
        if (s & 1U)
            out.push_back(i);
    return out;
}

Mask mask_of(std::span<const std::size_t> elems)
{
    Mask s = 0;
    for (std::size_t e : elems) {
        if (e >= Matroid::max_elements)
            throw DomainError("element index out of range");
        s |= Mask(1) << e;
    }
    return s;
}

Matroid::Matroid(std::size_t m, std::vector<std::uint8_t> ranks) : m_(m), ranks_(std::move(ranks))
{
    if (m_ > max_elements)
        throw DomainError("matroid ground set larger than " + std::to_string(max_elements));
    if (ranks_.size() != (std::size_t(1) << m_))
        throw DomainError("rank table must have 2^m entries");
    if (ranks_[0] != 0)
        throw DomainError("rank of the empty set must be 0");
}

Matroid Matroid::uniform(std::size_t k, std::size_t m)
{
    if (k > m)
        throw DomainError("uniform matroid U(k,m) needs k <= m");
    if (m > max_elements)
        throw DomainError("matroid ground set too large");
    std::vector<std::uint8_t> r(std::size_t(1) << m);
    for (std::size_t s = 0; s < r.size(); ++s)
        r[s] = std::uint8_t(std::min(popcount(Mask(s)), k));
    return Matroid(m, std::move(r));
}

Matroid Matroid::from_lines(std::size_t m, const std::vector<std::vector<std::size_t>>& lines)
{
    if (m > max_elements)
        throw DomainError("matroid ground set too large");
    std::vector<std::uint8_t> r(std::size_t(1) << m);
    for (std::size_t s = 0; s < r.size(); ++s)
        r[s] = std::uint8_t(std::min<std::size_t>(popcount(Mask(s)), 3));
    for (const auto& line : lines) {
        if (line.size() != 3)
            throw DomainError("lines presentation expects triples");
        const Mask s = mask_of(line);
        if (popcount(s) != 3 || s >= r.size())
            throw DomainError("line is not a triple of distinct ground elements");
        r[s] = 2;
    }
    return Matroid(m, std::move(r));
}

Matroid Matroid::from_matrices(std::span<const Matrix> mats, std::size_t n)
{
    if (n == 0)
        throw DomainError("representation dimension must be >= 1");
    const std::size_t m = mats.size();
    if (m > max_elements)
        throw DomainError("matroid ground set too large");
    std::vector<std::uint8_t> r(std::size_t(1) << m, 0);
    for (std::size_t s = 1; s < r.size(); ++s) {
        const std::size_t rk = icn::rank(concat_indexed(mats, Mask(s)));
        if (rk % n != 0)
            throw DomainError("rank " + std::to_string(rk) + " of a concatenation is not a multiple of n");
        r[s] = std::uint8_t(rk / n);
    }
    return Matroid(m, std::move(r));
}

AxiomReport check_axioms(const Matroid& mat)
{
    const std::size_t m = mat.size();
    if (m > 12)
        throw BudgetExceeded("axiom check limited to m <= 12", 0);
    const Mask total = Mask(1) << m;
    AxiomReport rep;
    auto fail = [&](const char* axiom, Mask a, Mask b) {
        rep.ok = false;
        rep.axiom = axiom;
        rep.a = a;
        rep.b = b;
        return rep;
    };
    if (mat.rank(0) != 0)
        return fail("empty", 0, 0);
    for (Mask a = 0; a < total; ++a)
        if (mat.rank(a) > popcount(a))
            return fail("M1", a, a);
    for (Mask b = 0; b < total; ++b) {
        // every submask a of b, ascending
        for (Mask a = 0;; a = (a - b) & b) {
            if (mat.rank(a) > mat.rank(b))
                return fail("M2", a, b);
            if (a == b)
                break;
        }
    }
    for (Mask a = 0; a < total; ++a)
        for (Mask b = 0; b < total; ++b)
            if (mat.rank(a | b) + mat.rank(a & b) > mat.rank(a) + mat.rank(b))
                return fail("M3", a, b);
    return rep;
}

std::vector<Mask> bases(const Matroid& mat)
{
    std::vector<Mask> out;
    const std::size_t k = mat.rank();
    const Mask total = Mask(1) << mat.size();
    for (Mask s = 0; s < total; ++s)
        if (popcount(s) == k && mat.rank(s) == k)
            out.push_back(s);
    return out;
}

std::vector<Mask> circuits(const Matroid& mat)
{
    std::vector<Mask> out;
    const Mask total = Mask(1) << mat.size();
    for (Mask s = 1; s < total; ++s) {
        const std::size_t size = popcount(s);
        if (mat.rank(s) >= size)
            continue;
        bool minimal = true;
        for (Mask rest = s; rest != 0 && minimal; rest &= rest - 1) {
            const Mask without = s & ~(rest & -rest);
            minimal = mat.rank(without) == size - 1;
        }
        if (minimal)
            out.push_back(s);
    }
    return out;
}

namespace {

void check_representation_shape(const Matroid& mat, const Representation& rep)
{
    if (!rep.field)
        throw DomainError("representation without a field");
    if (rep.n == 0)
        throw DomainError("representation dimension must be >= 1");
    if (rep.mats.size() != mat.size())
        throw DomainError("representation has " + std::to_string(rep.mats.size()) + " matrices, matroid has " +
                          std::to_string(mat.size()) + " elements");
    const std::size_t rows = mat.rank() * rep.n;
    for (const auto& mi : rep.mats) {
        if (!mi.field() || !(*mi.field() == *rep.field))
            throw DomainError("representation matrices over different fields");
        if (mi.rows() != rows || mi.cols() != rep.n)
            throw DomainError("representation matrix must be " + std::to_string(rows) + "x" + std::to_string(rep.n));
    }
}

} // namespace

RepresentationReport verify_representation_serial(const Matroid& mat, const Representation& rep)
{
    check_representation_shape(mat, rep);
    const Mask total = Mask(1) << mat.size();
    for (Mask s = 0; s < total; ++s) {
        const std::size_t expected = rep.n * mat.rank(s);
        const std::size_t actual = s == 0 ? 0 : rank(concat_indexed(rep.mats, s));
        if (expected != actual)
            return {false, s, expected, actual};
    }
    return {};
}

RepresentationReport verify_representation(const Matroid& mat, const Representation& rep, int threads)
{
    if (threads <= 1)
        return verify_representation_serial(mat, rep);
    check_representation_shape(mat, rep);
    const std::size_t total = std::size_t(1) << mat.size();
    std::atomic<std::size_t> first{std::numeric_limits<std::size_t>::max()};
    parallel_for(total, threads, [&](std::size_t s) {
        if (s > first.load())
            return;
        const std::size_t expected = rep.n * mat.rank(Mask(s));
        const std::size_t actual = s == 0 ? 0 : rank(concat_indexed(rep.mats, Mask(s)));
        if (expected != actual) {
            std::size_t cur = first.load();
            while (s < cur && !first.compare_exchange_weak(cur, s)) {
            }
        }
    });
    const std::size_t s = first.load();
    if (s == std::numeric_limits<std::size_t>::max())
        return {};
    return {false, Mask(s), rep.n * mat.rank(Mask(s)), rank(concat_indexed(rep.mats, Mask(s)))};
}

namespace {

// Row echelon basis of at most 4 vectors of length at most 4.
struct SmallEchelon {
    std::array<std::array<Elem, 4>, 4> rows{};
    std::array<std::size_t, 4> piv{};
    std::size_t r = 0;

    void insert(const Field& f, const std::vector<Elem>& v, std::size_t k)
    {
        std::array<Elem, 4> w{};
        std::copy(v.begin(), v.end(), w.begin());
        for (std::size_t i = 0; i < r; ++i) {
            const Elem c = w[piv[i]];
            if (c == 0)
                continue;
            const Elem* t = f.times_row(f.negate(c));
            for (std::size_t j = 0; j < k; ++j)
                w[j] = f.plus(w[j], t[rows[i][j]]);
        }
        std::size_t p = 0;
        while (p < k && w[p] == 0)
            ++p;
        if (p == k || r == 4)
            return;
        const Elem* t = f.times_row(f.inverse(w[p]));
        for (std::size_t j = 0; j < k; ++j)
            w[j] = t[w[j]];
        rows[r] = w;
        piv[r] = p;
        ++r;
    }
};

struct ScalarRepSearch {
    const Matroid& mat;
    const Field& field;
    std::size_t k;
    std::vector<std::vector<Elem>> candidates; // normalized nonzero vectors, lexicographic
    std::vector<std::size_t> free;             // elements to assign, ascending
    std::vector<std::vector<Elem>> vec;        // current vector per element
    std::vector<std::size_t> assigned;         // assigned elements in assignment order
    const Deadline* deadline = nullptr;
    std::uint64_t visited = 0;
    std::uint64_t cap = 0;
    bool capped = false;

    // rank(S + {i}) == r(S + {i}) for every S among the assigned elements
    // with |S + {i}| <= k. Agreement on all sets of size <= k fixes the
    // independent sets, hence the whole rank function.
    bool consistent_from(std::size_t start, Mask mask, const SmallEchelon& e) const
    {
        if (e.r != mat.rank(mask))
            return false;
        if (popcount(mask) >= k)
            return true;
        for (std::size_t t = start; t < assigned.size(); ++t) {
            SmallEchelon next = e;
            const std::size_t j = assigned[t];
            next.insert(field, vec[j], k);
            if (!consistent_from(t + 1, mask | Mask(1) << j, next))
                return false;
        }
        return true;
    }

    bool consistent(std::size_t i) const
    {
        SmallEchelon e;
        e.insert(field, vec[i], k);
        return consistent_from(0, Mask(1) << i, e);
    }

    const std::vector<std::vector<Elem>>& options(std::size_t elem) const
    {
        return mat.rank(Mask(1) << elem) == 0 ? zero_only : candidates;
    }

    bool place(std::size_t elem, const std::vector<Elem>& v)
    {
        ++visited;
        if (visited > cap || (deadline && (visited & 0x3ff) == 0 && deadline->passed())) {
            capped = true;
            return false;
        }
        vec[elem] = v;
        if (!consistent(elem))
            return false;
        assigned.push_back(elem);
        return true;
    }

    bool dfs(std::size_t pos)
    {
        if (pos == free.size())
            return true;
        const std::size_t elem = free[pos];
        for (const auto& v : options(elem)) {
            if (place(elem, v)) {
                if (dfs(pos + 1))
                    return true;
                assigned.pop_back();
            }
            if (capped)
                return false;
        }
        return false;
    }

    std::vector<std::vector<Elem>> zero_only;
};

} // namespace

ScalarSearchResult search_representation_scalar(const Matroid& mat, FieldPtr field, const SearchBudget& budget,
                                                int threads)
{
    if (!field)
        throw DomainError("scalar representation search needs a field");
    const std::size_t m = mat.size();
    const std::size_t k = mat.rank();
    if (k > 4 || m > 12 || field->q() > 5)
        throw DomainError("scalar representation search limited to k <= 4, m <= 12, q <= 5");

    ScalarSearchResult result;
    if (k == 0) {
        // Every element is a loop; the empty-row matrices represent it.
        Representation rep{field, 1, std::vector<Matrix>(m, Matrix(field, 0, 1))};
        result.rep = rep;
        result.status = verify_representation(mat, rep).ok ? SearchStatus::found : SearchStatus::none;
        if (result.status == SearchStatus::none)
            result.rep.reset();
        return result;
    }

    // Greedy (lexicographically first) basis.
    std::vector<std::size_t> basis;
    Mask bmask = 0;
    for (std::size_t i = 0; i < m; ++i)
        if (mat.rank(bmask | Mask(1) << i) > mat.rank(bmask)) {
            bmask |= Mask(1) << i;
            basis.push_back(i);
        }

    std::vector<std::vector<Elem>> cands;
    {
        const unsigned q = field->q();
        std::size_t total = 1;
        for (std::size_t i = 0; i < k; ++i)
            total *= q;
        for (std::size_t code = 0; code < total; ++code) {
            std::vector<Elem> v(k);
            std::size_t c = code;
            for (std::size_t i = k; i-- > 0;) {
                v[i] = Elem(c % q);
                c /= q;
            }
            auto first = std::find_if(v.begin(), v.end(), [](Elem e) { return e != 0; });
            if (first != v.end() && *first == 1)
                cands.push_back(std::move(v));
        }
    }

    auto make_search = [&](const Deadline* deadline, std::uint64_t cap) {
        ScalarRepSearch s{mat, *field, k, cands, {}, std::vector<std::vector<Elem>>(m), {}, deadline, 0, cap, false, {}};
        s.zero_only = {std::vector<Elem>(k, 0)};
        for (std::size_t t = 0; t < basis.size(); ++t) {
            std::vector<Elem> e(k, 0);
            e[t] = 1;
            s.vec[basis[t]] = e;
            s.assigned.push_back(basis[t]);
        }
        for (std::size_t i = 0; i < m; ++i)
            if (!(bmask >> i & 1U))
                s.free.push_back(i);
        return s;
    };

    const Deadline deadline(budget.max_seconds);
    auto probe = make_search(&deadline, budget.max_nodes);
    const std::size_t branches = probe.free.empty() ? 1 : probe.options(probe.free[0]).size();

    auto run = [&](std::size_t b, std::uint64_t cap) {
        BranchOutcome<std::vector<std::vector<Elem>>> out;
        auto s = make_search(&deadline, cap);
        bool ok = false;
        if (s.free.empty()) {
            ok = true;
        } else if (s.place(s.free[0], s.options(s.free[0])[b])) {
            ok = s.dfs(1);
        }
        out.visited = s.visited;
        out.capped = s.capped;
        if (ok && !s.capped)
            out.witness = s.vec;
        return out;
    };

    auto merged = partitioned_search<std::vector<std::vector<Elem>>>(branches, budget.max_nodes, threads, run);
    result.status = merged.status;
    result.visited = merged.visited;
    if (merged.status == SearchStatus::found) {
        Representation rep{field, 1, {}};
        for (const auto& v : *merged.witness) {
            Matrix col(field, k, 1);
            for (std::size_t i = 0; i < k; ++i)
                col(i, 0) = v[i];
            rep.mats.push_back(std::move(col));
        }
        const auto check = verify_representation(mat, rep);
        if (!check.ok)
            throw IntegrityError("scalar representation search produced a non-verifying witness");
        result.rep = std::move(rep);
    }
    return result;
}

} // namespace icn
