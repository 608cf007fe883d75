#pragma once

// Seeded generators shared by the property tests and the acceptance binary.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <vector>

#include "icn/femat.hpp"
#include "icn/netcode.hpp"

namespace icn::gen {

using Rng = std::mt19937_64;

inline Matrix matrix(Rng& rng, const FieldPtr& f, std::size_t r, std::size_t c)
{
    Matrix m(f, r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j)
            m(i, j) = Elem(rng() % f->q());
    return m;
}

/// Uniformly random invertible matrix by rejection.
inline Matrix invertible(Rng& rng, const FieldPtr& f, std::size_t n)
{
    for (;;) {
        Matrix m = matrix(rng, f, n, n);
        if (rank(m) == n)
            return m;
    }
}

struct RandomNetwork {
    std::size_t nodes = 0;
    std::vector<Edge> edges;
    std::map<std::size_t, std::size_t> delta;
};

/// Small DAG with dangling inputs and outputs; at most `max_edges` edges.
/// Returns nullopt when the draw cannot carry an onto demand function.
inline std::optional<RandomNetwork> network(Rng& rng, std::size_t max_edges = 8)
{
    RandomNetwork g;
    g.nodes = 2 + rng() % 3;
    const std::size_t k = 1 + rng() % 2;
    std::vector<char> fed(g.nodes, 0);
    for (std::size_t i = 0; i < k; ++i) {
        const std::size_t v = rng() % 2;
        g.edges.push_back({std::nullopt, v});
        fed[v] = 1;
    }
    for (std::size_t u = 0; u < g.nodes; ++u)
        for (std::size_t v = u + 1; v < g.nodes; ++v) {
            if (!fed[u])
                continue;
            const std::size_t copies = rng() % 3 == 0 ? 2 : (rng() % 2);
            for (std::size_t c = 0; c < copies && g.edges.size() + 1 < max_edges; ++c) {
                g.edges.push_back({u, v});
                fed[v] = 1;
            }
        }
    const std::size_t extra = 1 + rng() % 2;
    for (std::size_t i = 0; i < extra && g.edges.size() < max_edges; ++i) {
        std::size_t v = rng() % g.nodes;
        if (!fed[v])
            v = 0;
        g.edges.push_back({v, std::nullopt});
    }

    std::vector<std::size_t> indeg(g.nodes, 0), outdeg(g.nodes, 0);
    for (const auto& e : g.edges) {
        if (e.head)
            ++indeg[*e.head];
        if (e.tail)
            ++outdeg[*e.tail];
    }
    std::vector<std::size_t> inputs, outputs;
    for (std::size_t i = 0; i < g.edges.size(); ++i) {
        const auto& e = g.edges[i];
        if (!e.tail || indeg[*e.tail] == 0)
            inputs.push_back(i);
        if (!e.head || outdeg[*e.head] == 0)
            outputs.push_back(i);
    }
    if (outputs.size() < inputs.size() || inputs.empty())
        return std::nullopt;
    std::shuffle(outputs.begin(), outputs.end(), rng);
    for (std::size_t j = 0; j < outputs.size(); ++j)
        g.delta[outputs[j]] = j < inputs.size() ? inputs[j] : inputs[rng() % inputs.size()];
    return g;
}

} // namespace icn::gen
