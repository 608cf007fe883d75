#pragma once

#include <atomic>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "icn/femat.hpp"

namespace icn {

/// A receiver: wants message `demand`, already holds the messages in `side`.
/// Message indices are 0-based; `side` is kept sorted.
struct Client {
    std::size_t demand = 0;
    std::vector<std::size_t> side;

    friend bool operator==(const Client&, const Client&) = default;
    friend auto operator<=>(const Client&, const Client&) = default;
};

/// Index coding instance: k messages of n packets each over `field`.
class IndexInstance {
public:
    IndexInstance(FieldPtr field, std::size_t n, std::size_t k, std::vector<Client> clients,
                  std::vector<std::string> names = {});

    const FieldPtr& field() const noexcept { return field_; }
    std::size_t n() const noexcept { return n_; }
    std::size_t k() const noexcept { return k_; }
    const std::vector<Client>& clients() const noexcept { return clients_; }
    /// Display name of each message ("x1", "y3", ...).
    const std::vector<std::string>& names() const noexcept { return names_; }

    /// Same instance at another block length / field.
    IndexInstance with_block(FieldPtr field, std::size_t n) const;

private:
    FieldPtr field_;
    std::size_t n_;
    std::size_t k_;
    std::vector<Client> clients_;
    std::vector<std::string> names_;
};

/// Linear code f(xi) = xi * L, L of shape (n k) x c; xi lists the packets
/// message by message.
struct LinearIndexCode {
    FieldPtr field;
    std::size_t n = 1;
    Matrix L;

    std::size_t c() const noexcept { return L.cols(); }
};

/// Arbitrary code as a full table Sigma^{nk} -> Sigma^c. Inputs are ordered
/// by their base-q value with the first packet most significant.
struct TableCode {
    static constexpr std::size_t max_inputs = std::size_t(1) << 20;

    FieldPtr field;
    std::size_t n = 1;
    std::size_t k = 0;
    std::size_t c = 0;
    std::vector<Elem> outputs; // q^{nk} rows of c symbols

    std::size_t inputs() const noexcept { return c == 0 ? outputs.size() : outputs.size() / c; }
    std::span<const Elem> row(std::size_t xi) const noexcept { return {outputs.data() + xi * c, c}; }
};

/// max over side-information sets Y of the number of distinct messages
/// demanded by clients holding exactly Y.
std::size_t mu(const IndexInstance& inst);

struct LinearVerifyReport {
    bool valid = true;
    std::vector<char> client_ok;
    /// Per client, a (c + n|H|) x n matrix T with [f(xi) | packets of H] T =
    /// demanded packets, H taken in increasing message order.
    std::vector<std::optional<Matrix>> decoders;
};

/// Rank test per client: rank [L | E_H] = rank [L | E_H | E_x].
LinearVerifyReport verify_linear(const IndexInstance& inst, const LinearIndexCode& code, int threads = 1);

struct TableVerifyReport {
    bool valid = true;
    std::optional<std::size_t> failing_client;
};

/// Exhaustive zero-error check over all q^{nk} inputs.
TableVerifyReport verify_table(const IndexInstance& inst, const TableCode& code, int threads = 1);

/// c / n == mu(I). Throws DomainError if the code does not verify.
bool is_perfect(const IndexInstance& inst, const LinearIndexCode& code);
bool is_perfect(const IndexInstance& inst, const TableCode& code);

/// Table expansion of a linear code (k messages).
TableCode to_table(const LinearIndexCode& code, std::size_t k);

std::vector<Elem> encode(const LinearIndexCode& code, std::span<const Elem> xi);
/// Applies a decoder T to (f(xi), packets of H).
std::vector<Elem> apply_decoder(const Matrix& decoder, std::span<const Elem> encoded, std::span<const Elem> side_packets);
/// Packets of the messages in `side` (ascending) extracted from xi.
std::vector<Elem> side_packets(std::span<const Elem> xi, std::span<const std::size_t> side, std::size_t n);

/// xi <-> table row index.
std::size_t table_index(std::span<const Elem> xi, unsigned q);
std::vector<Elem> table_input(std::size_t index, std::size_t length, unsigned q);

/// Running tally of the lower bound c/n >= mu(I) over every code a verifier
/// accepted in this process.
struct MuBoundStats {
    std::atomic<std::uint64_t> checked{0};
    std::atomic<std::uint64_t> violations{0};
};
MuBoundStats& mu_bound_stats();

} // namespace icn
