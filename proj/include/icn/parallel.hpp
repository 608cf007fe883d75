#pragma once

#include <atomic>
#include <chrono>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <limits>
#include <optional>
#include <vector>

#ifdef ICN_HAVE_OPENMP
#include <omp.h>
#endif

namespace icn {

/// Work limits for exhaustive searches. `max_nodes` bounds the number of
/// candidate assignments tried; `max_seconds` (0 = none) bounds wall time.
struct SearchBudget {
    std::uint64_t max_nodes = 50'000'000;
    double max_seconds = 0.0;
};

/// Wall-clock guard shared by all branches of one search.
class Deadline {
public:
    explicit Deadline(double seconds)
        : active_(seconds > 0),
          until_(std::chrono::steady_clock::now() +
                 std::chrono::duration_cast<std::chrono::steady_clock::duration>(std::chrono::duration<double>(seconds)))
    {
    }
    bool passed() const { return active_ && std::chrono::steady_clock::now() > until_; }

private:
    bool active_;
    std::chrono::steady_clock::time_point until_;
};

enum class SearchStatus { found, none, inconclusive };

template <class W>
struct BranchOutcome {
    std::optional<W> witness;
    std::uint64_t visited = 0;
    bool capped = false; // stopped on node cap or deadline before finishing
};

template <class W>
struct PartitionedResult {
    SearchStatus status = SearchStatus::none;
    std::optional<W> witness;
    std::uint64_t visited = 0;
};

int default_threads() noexcept;

/// Runs a search whose tree is split at the root into `branches` subtrees and
/// merges the outcomes so that the result is the one a sequential depth-first
/// search in branch order would produce: the witness of the smallest
/// successful branch, and the node count of every branch up to and including
/// it. A branch may therefore run past the point where the sequential search
/// would have stopped, but that never changes the reported result.
///
/// run(branch, cap) must explore one subtree, stopping with capped = true once
/// more than `cap` nodes were visited.
template <class W, class Run>
PartitionedResult<W> partitioned_search(std::size_t branches, std::uint64_t budget, int threads, Run&& run)
{
    PartitionedResult<W> result;
    if (threads <= 1 || branches <= 1) {
        std::uint64_t acc = 0;
        for (std::size_t b = 0; b < branches; ++b) {
            auto out = run(b, budget - acc);
            if (out.capped || acc + out.visited > budget) {
                result.status = SearchStatus::inconclusive;
                result.visited = budget;
                return result;
            }
            acc += out.visited;
            if (out.witness) {
                result.status = SearchStatus::found;
                result.witness = std::move(out.witness);
                result.visited = acc;
                return result;
            }
        }
        result.visited = acc;
        return result;
    }

    std::vector<BranchOutcome<W>> outcomes(branches);
    std::vector<char> ran(branches, 0);
    std::atomic<std::size_t> best{std::numeric_limits<std::size_t>::max()};
    std::exception_ptr error;
    std::atomic<bool> failed{false};
    const long nb = static_cast<long>(branches);
#ifdef ICN_HAVE_OPENMP
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
#endif
    for (long ib = 0; ib < nb; ++ib) {
        const auto b = static_cast<std::size_t>(ib);
        if (failed.load() || b > best.load())
            continue;
        try {
            outcomes[b] = run(b, budget);
            ran[b] = 1;
            if (outcomes[b].witness || outcomes[b].capped) {
                std::size_t cur = best.load();
                while (b < cur && !best.compare_exchange_weak(cur, b)) {
                }
            }
        } catch (...) {
#ifdef ICN_HAVE_OPENMP
#pragma omp critical(icn_partitioned_error)
#endif
            if (!error)
                error = std::current_exception();
            failed = true;
        }
    }
    if (error)
        std::rethrow_exception(error);

    std::uint64_t acc = 0;
    for (std::size_t b = 0; b < branches; ++b) {
        const auto& out = outcomes[b];
        if (out.capped || acc + out.visited > budget) {
            result.status = SearchStatus::inconclusive;
            result.visited = budget;
            return result;
        }
        acc += out.visited;
        if (out.witness) {
            result.status = SearchStatus::found;
            result.witness = out.witness;
            result.visited = acc;
            return result;
        }
    }
    result.visited = acc;
    return result;
}

/// Serial loop or OpenMP parallel-for over [0, n); the body must be safe to
/// run concurrently for distinct indices.
template <class Body>
void parallel_for(std::size_t n, int threads, Body&& body)
{
    if (threads <= 1 || n < 2) {
        for (std::size_t i = 0; i < n; ++i)
            body(i);
        return;
    }
    std::exception_ptr error;
    const long ni = static_cast<long>(n);
#ifdef ICN_HAVE_OPENMP
#pragma omp parallel for schedule(dynamic, 4) num_threads(threads)
#endif
    for (long i = 0; i < ni; ++i) {
        try {
            body(static_cast<std::size_t>(i));
        } catch (...) {
#ifdef ICN_HAVE_OPENMP
#pragma omp critical(icn_parallel_for_error)
#endif
            if (!error)
                error = std::current_exception();
        }
    }
    if (error)
        std::rethrow_exception(error);
}

} // namespace icn
