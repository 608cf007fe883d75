#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "icn/femat.hpp"
#include "icn/parallel.hpp"

namespace icn {

/// Subset of a ground set {0..m-1} as a bitmask (element i <-> bit i).
using Mask = std::uint32_t;

inline std::size_t popcount(Mask s) noexcept { return static_cast<std::size_t>(__builtin_popcount(s)); }
std::vector<std::size_t> elements_of(Mask s);
Mask mask_of(std::span<const std::size_t> elems);

/// Matroid given by its full rank table over all 2^m subsets.
class Matroid {
public:
    static constexpr std::size_t max_elements = 20;

    /// ranks[s] = r(s) for every s < 2^m. Only shape and r(empty) = 0 are
    /// checked here; use check_axioms for M1-M3.
    Matroid(std::size_t m, std::vector<std::uint8_t> ranks);

    static Matroid uniform(std::size_t k, std::size_t m);
    /// Rank-3 matroid from a list of collinear triples (0-based): r(I) =
    /// min(|I|, 3) except r = 2 on the listed triples.
    static Matroid from_lines(std::size_t m, const std::vector<std::vector<std::size_t>>& lines);
    /// r(I) = rank(M_I) / n; throws DomainError when a rank is not a
    /// multiple of n.
    static Matroid from_matrices(std::span<const Matrix> mats, std::size_t n);

    std::size_t size() const noexcept { return m_; }
    Mask ground() const noexcept { return m_ == 0 ? 0 : Mask((std::uint64_t(1) << m_) - 1); }
    unsigned rank(Mask s) const noexcept { return ranks_[s]; }
    /// r(ground set).
    unsigned rank() const noexcept { return ranks_[ground()]; }
    const std::vector<std::uint8_t>& rank_table() const noexcept { return ranks_; }

    friend bool operator==(const Matroid&, const Matroid&) = default;

private:
    std::size_t m_;
    std::vector<std::uint8_t> ranks_;
};

struct AxiomReport {
    bool ok = true;
    std::string axiom; // "empty", "M1", "M2", "M3"
    Mask a = 0;
    Mask b = 0;
};

/// Checks r(empty) = 0 and M1-M3 over all subsets / pairs (m <= 12, else
/// BudgetExceeded). Reports the first violation in ascending (A, B) order.
AxiomReport check_axioms(const Matroid& m);

/// All bases, ascending by mask.
std::vector<Mask> bases(const Matroid& m);
/// All circuits (minimal dependent sets), ascending by mask.
std::vector<Mask> circuits(const Matroid& m);

/// n-linear representation: m matrices, each (k*n) x n over one field.
struct Representation {
    FieldPtr field;
    std::size_t n = 1;
    std::vector<Matrix> mats;
};

struct RepresentationReport {
    bool ok = true;
    Mask failing = 0;
    std::size_t expected = 0; // n * r(I)
    std::size_t actual = 0;   // rank(M_I)
};

/// Checks rank(M_I) = n r(I) for every subset I; on failure reports the
/// smallest failing mask. Subsets are split across `threads` workers.
RepresentationReport verify_representation(const Matroid& m, const Representation& rep, int threads = 1);
/// Single-threaded reference of the same check.
RepresentationReport verify_representation_serial(const Matroid& m, const Representation& rep);

struct ScalarSearchResult {
    SearchStatus status = SearchStatus::none;
    std::optional<Representation> rep;
    std::uint64_t visited = 0;
};

/// Exhaustive search for a 1-linear representation over `field` (k <= 4,
/// m <= 12, q <= 5). Elements of the lexicographically first basis are fixed
/// to unit vectors and every other vector is scaled so its first nonzero
/// coordinate is 1; column scaling and change of basis preserve every rank,
/// so `none` is a nonexistence certificate for (1, q). A found
/// representation is the first in that normalized order and is verified
/// before it is returned. `inconclusive` means the budget ran out.
ScalarSearchResult search_representation_scalar(const Matroid& m, FieldPtr field, const SearchBudget& budget = {},
                                                int threads = 1);

} // namespace icn
