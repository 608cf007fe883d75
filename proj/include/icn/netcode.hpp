#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "icn/femat.hpp"
#include "icn/parallel.hpp"

namespace icn {

/// Directed edge; a missing tail (head) makes it a dangling input (output)
/// half-edge. Nodes are 0-based.
struct Edge {
    std::optional<std::size_t> tail;
    std::optional<std::size_t> head;

    friend bool operator==(const Edge&, const Edge&) = default;
};

/// Coding network on a DAG. Input edges S are those of zero in-degree, output
/// edges D those of zero out-degree; delta maps D onto S.
///
/// Edges are re-indexed at construction so that S comes first (in the given
/// relative order), then the remaining non-output edges, then D \ S. Input
/// edge i carries message x_i.
class NetworkInstance {
public:
    /// `delta` maps an output edge to an input edge, both given as indices
    /// into `edges` (before re-indexing).
    NetworkInstance(std::size_t nodes, const std::vector<Edge>& edges, const std::map<std::size_t, std::size_t>& delta);

    std::size_t nodes() const noexcept { return nodes_; }
    std::size_t m() const noexcept { return edges_.size(); }
    std::size_t k() const noexcept { return k_; }
    std::size_t d() const noexcept { return outputs_.size(); }
    const std::vector<Edge>& edges() const noexcept { return edges_; }

    bool is_input(std::size_t e) const noexcept { return e < k_; }
    bool is_output(std::size_t e) const noexcept { return is_output_[e] != 0; }
    const std::vector<std::size_t>& outputs() const noexcept { return outputs_; }
    /// Message demanded by output edge e (index of an input edge).
    std::size_t demand(std::size_t e) const;
    const std::vector<std::size_t>& parents(std::size_t e) const noexcept { return parents_[e]; }
    /// Edges with every parent listed before its children.
    const std::vector<std::size_t>& topo_order() const noexcept { return topo_; }
    /// Position of edge e in the caller's original edge list.
    std::size_t original_index(std::size_t e) const noexcept { return original_[e]; }

private:
    std::size_t nodes_;
    std::size_t k_ = 0;
    std::vector<Edge> edges_;
    std::vector<char> is_output_;
    std::vector<std::size_t> outputs_;
    std::vector<std::size_t> delta_; // per edge, demanded input edge (outputs only)
    std::vector<std::vector<std::size_t>> parents_;
    std::vector<std::size_t> topo_;
    std::vector<std::size_t> original_;
};

/// Linear (n, q) network code: per edge a global encoder F_e of shape
/// (n k) x n, f_e(xi) = xi F_e.
struct NetworkCode {
    FieldPtr field;
    std::size_t n = 1;
    std::vector<Matrix> F;
};

/// General (n, q) network code as tables: per edge, q^{nk} rows of n symbols
/// (inputs ordered as in TableCode).
struct NetworkTableCode {
    FieldPtr field;
    std::size_t n = 1;
    std::size_t k = 0;
    std::vector<std::vector<Elem>> f;
};

struct NetworkVerifyReport {
    bool valid = true;
    std::optional<std::size_t> failing_edge;
    std::string condition; // "N1", "N2" or "N3" on failure
    /// Per non-input edge: stacked local coefficients [T_1; ...; T_p] with
    /// F_e = sum_a F_{parent a} T_a.
    std::vector<std::optional<Matrix>> local;
};

NetworkVerifyReport verify(const NetworkInstance& net, const NetworkCode& code, int threads = 1);
NetworkVerifyReport verify(const NetworkInstance& net, const NetworkTableCode& code);

/// Table expansion of a linear network code.
NetworkTableCode to_table(const NetworkInstance& net, const NetworkCode& code);

/// Random linear code: uniform local coefficients in topological order,
/// outputs set to their demand when decodable. Retries a bounded number of
/// derived seeds; deterministic per seed.
std::optional<NetworkCode> random_code(const NetworkInstance& net, FieldPtr field, std::size_t n, std::uint64_t seed);

/// Composes local encoders along the topological order for one input xi;
/// returns every edge's symbols.
std::vector<std::vector<Elem>> evaluate_local(const NetworkInstance& net, const NetworkCode& code,
                                              const std::vector<std::optional<Matrix>>& local,
                                              std::span<const Elem> xi);

} // namespace icn
