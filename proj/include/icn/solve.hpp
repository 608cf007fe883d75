#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "icn/index_code.hpp"
#include "icn/netcode.hpp"
#include "icn/parallel.hpp"

namespace icn {

struct LevelOutcome {
    std::size_t c = 0;
    SearchStatus status = SearchStatus::none;
    std::uint64_t visited = 0;
};

struct MinIndexResult {
    SearchStatus status = SearchStatus::none;
    std::optional<LinearIndexCode> witness; // the smallest feasible c, lexicographically first
    /// Largest c shown infeasible by exhaustion (no linear code of c or fewer
    /// symbols); nullopt when no level was exhausted.
    std::optional<std::size_t> c_exhausted;
    std::uint64_t visited = 0;
    std::vector<LevelOutcome> levels;

    std::optional<std::size_t> c() const { return witness ? std::optional<std::size_t>(witness->c()) : std::nullopt; }
};

/// Smallest linear index code for `inst` at block length n over `field`.
/// Levels c = mu n, mu n + 1, ... up to c_max (default n k, where sending
/// everything in clear always works). Within a level, columns are distinct
/// nonzero vectors in increasing order (entry 0 most significant), and a
/// prefix is cut as soon as some client's rank deficit exceeds the columns
/// still to be chosen. The tree is split on the first column across
/// `threads` workers; the result does not depend on the thread count.
MinIndexResult min_linear_index(const IndexInstance& inst, FieldPtr field, std::size_t n,
                                const SearchBudget& budget = {}, int threads = 1,
                                std::optional<std::size_t> c_max = std::nullopt);

struct NetSearchResult {
    SearchStatus status = SearchStatus::none;
    std::optional<NetworkCode> code;
    std::uint64_t visited = 0;
};

/// Exhaustive search for a linear (n, q) network code. Each edge that feeds
/// some output chooses the column space of its global encoder: a subspace of
/// its parents' span of dimension min(n, span dimension), which dominates
/// every smaller choice. Outputs are taken by ascending ancestor count and a
/// branch is cut once an output's demand cannot fit into the span its parents
/// can still reach. `none` is a nonexistence certificate for (n, q).
NetSearchResult search_network_code(const NetworkInstance& net, FieldPtr field, std::size_t n,
                                    const SearchBudget& budget = {}, int threads = 1);

/// One piece of evidence about lambda*(n, q) of an instance, in symbols:
/// every linear (n, q) code has at least `lower` symbols, and `witness`
/// (when present) is a code achieving its length.
struct RateEvidence {
    std::size_t n = 1;
    FieldPtr field;
    std::optional<LinearIndexCode> witness;
    std::size_t lower = 0;
    std::string method;
};

RateEvidence evidence_from(const MinIndexResult& r, FieldPtr field, std::size_t n, std::size_t mu_value);
/// No perfect linear (n, q) code, established through an equivalence
/// (network search or representation search returning none).
RateEvidence perfect_refuted(FieldPtr field, std::size_t n, std::size_t mu_value, std::string method);

struct RateEntry {
    std::size_t n = 1;
    unsigned q = 2;
    std::size_t lower = 0;             // symbols
    std::optional<std::size_t> upper;  // symbols, from a verified witness
    std::vector<std::string> methods;

    bool exact() const { return upper && *upper == lower; }
};

struct Separation {
    std::size_t fast;  // entry index with the smaller rate
    std::size_t slow;
    std::string text;
};

struct RateReport {
    std::string instance;
    std::size_t mu = 0;
    std::vector<RateEntry> entries; // sorted by (q, n)
    std::vector<Separation> separations;
};

/// Merges evidence per (n, q). Every witness is verified against the
/// instance at its block length and field (IntegrityError otherwise); lower
/// bounds are raised to mu n. A separation lambda*(a) < lambda*(b) is
/// flagged when a's witness rate is below b's certified lower bound.
RateReport rate_report(std::string name, const IndexInstance& inst, const std::vector<RateEvidence>& evidence);

/// "c/n" reduced, e.g. "9" or "5/2".
std::string rate_string(std::size_t c, std::size_t n);

} // namespace icn
