#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "icn/index_code.hpp"
#include "icn/matroid.hpp"
#include "icn/netcode.hpp"

namespace icn {

/// Provenance of every element a reduction produced: one tag per client (for
/// index instances) or per edge (for networks, in construction order, which
/// is also the order of the written network file).
struct ReductionTrace {
    std::string source;
    std::vector<std::string> tags;
    std::vector<std::string> node_labels; // networks only
};

struct IndexReduction {
    IndexInstance instance;
    ReductionTrace trace;
};

/// Role of an edge in a constructed network; `a` and `b` are 0-based
/// indices whose meaning depends on the kind.
struct EdgeRole {
    enum Kind {
        input,      // a = message
        forward,    // source node of message a -> sender (or s_a -> n'_b / n''_b)
        bottleneck, // a = copy
        relay,      // relay -> client node a
        side,       // source of message b -> client node a
        prime,      // s_a -> n'_b
        dprime,     // s_a -> n''_b
        link,       // n'_a -> n''_a
        collect,    // n''_b -> client node a
        output      // client node a, demands message b
    };
    Kind kind;
    std::size_t a = 0;
    std::size_t b = 0;
};

struct NetworkReduction {
    NetworkInstance network;
    ReductionTrace trace;
    std::vector<EdgeRole> roles; // per edge, internal order
};

/// Index instance of a network. Messages are x_1..x_k followed by y_1..y_m
/// (y_i for re-indexed edge i); clients R1..R5 with duplicates merged, the
/// surviving copy keeping the tag of its first family.
IndexReduction net_to_index(const NetworkInstance& net, FieldPtr field, std::size_t n = 1);

/// Index instance of a matroid. Messages are y_1..y_m followed by x_1..x_k.
/// R2 uses every circuit of size <= max_circuit (all circuits by default).
IndexReduction matroid_to_index(const Matroid& mat, FieldPtr field, std::size_t n = 1,
                                std::optional<std::size_t> max_circuit = std::nullopt);

/// Broadcast network: one source node per message feeding a sender, c_blocks
/// parallel sender -> relay edges, and per client a node receiving one relay
/// edge plus one edge from each side-information source.
NetworkReduction index_to_network(const IndexInstance& inst, std::size_t c_blocks);

/// Six-partite network of a matroid. Input edges carry x_1..x_k then
/// y_1..y_m; client nodes follow the clients of matroid_to_index.
NetworkReduction matroid_to_network(const Matroid& mat, std::optional<std::size_t> max_circuit = std::nullopt);

/// Network code on matroid_to_network(mat) induced by an n-linear
/// representation: each s_i forwards its source, n'_j -> n''_j carries
/// xi M_j, n''_j -> n_rho carries y_j + xi M_j and outputs their demand.
NetworkCode matroid_network_code(const Matroid& mat, const NetworkReduction& red, const Representation& rep);

/// Linear network code -> perfect linear index code for net_to_index(net):
/// block i is y_i + xi F_{e_i}.
LinearIndexCode transport_net_to_index(const NetworkInstance& net, const NetworkCode& code);
/// Table network code -> table index code g_i = y_i + f_{e_i}(xi), with
/// per-symbol field addition.
TableCode transport_net_to_index(const NetworkInstance& net, const NetworkTableCode& code);

/// Perfect linear index code for net_to_index(net) -> linear network code.
/// Throws PreconditionError when c != m n, InvalidCode when the y-part is
/// singular (an R5 client cannot decode), a C-constraint fails (naming the
/// R1/R4 client) or N3 fails (naming the R3 client).
NetworkCode transport_index_to_net(const NetworkInstance& net, const LinearIndexCode& code);

struct RepIndexCode {
    LinearIndexCode code;
    /// Per client of matroid_to_index(mat), a decoder in the layout of
    /// LinearVerifyReport::decoders.
    std::vector<Matrix> decoders;
};

/// Representation -> perfect linear index code for `inst` =
/// matroid_to_index(mat) with explicit decoders (basis inverse, circuit
/// solve, R3 subtraction). Throws DomainError on an invalid representation.
RepIndexCode transport_rep_to_index(const Matroid& mat, const Representation& rep, const IndexInstance& inst);

/// Perfect linear index code for matroid_to_index(mat) -> representation.
/// Throws PreconditionError when c != m n and InvalidCode when
/// normalization fails or the extracted matrices do not represent mat.
Representation transport_index_to_rep(const Matroid& mat, const LinearIndexCode& code);

/// "(y3,{x1,x2})" using the instance's message names.
std::string describe_client(const IndexInstance& inst, const Client& cl);

} // namespace icn
