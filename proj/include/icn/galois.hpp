#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "icn/errors.hpp"

namespace icn {

/// Field element, encoded as an integer in [0, q) whose base-p digits are
/// the polynomial coefficients (least significant digit = constant term).
using Elem = std::uint16_t;

/// GF(p^m) with q = p^m <= 512. Arithmetic is table driven; tables are built
/// once at construction and never mutated, so a Field may be shared freely
/// across threads.
class Field {
public:
    static constexpr unsigned max_order = 512;

    /// Cached instance for (p, m). Throws DomainError if p is not prime,
    /// m == 0, or p^m exceeds max_order.
    static std::shared_ptr<const Field> get(unsigned p, unsigned m);
    /// Cached instance for the field of order q (q must be a prime power).
    static std::shared_ptr<const Field> of_order(unsigned q);

    Field(unsigned p, unsigned m);

    unsigned p() const noexcept { return p_; }
    unsigned m() const noexcept { return m_; }
    unsigned q() const noexcept { return q_; }
    /// Monic modulus, coefficients low to high (size m + 1).
    const std::vector<unsigned>& modulus() const noexcept { return modulus_; }

    bool contains(unsigned a) const noexcept { return a < q_; }

    Elem add(unsigned a, unsigned b) const;
    Elem sub(unsigned a, unsigned b) const;
    Elem neg(unsigned a) const;
    Elem mul(unsigned a, unsigned b) const;
    Elem inv(unsigned a) const;
    Elem div(unsigned a, unsigned b) const;

    // Unchecked table lookups for inner loops.
    Elem plus(Elem a, Elem b) const noexcept { return add_[a * q_ + b]; }
    Elem minus(Elem a, Elem b) const noexcept { return add_[a * q_ + neg_[b]]; }
    Elem times(Elem a, Elem b) const noexcept { return mul_[a * q_ + b]; }
    Elem negate(Elem a) const noexcept { return neg_[a]; }
    Elem inverse(Elem a) const noexcept { return inv_[a]; }
    /// Row of the multiplication table for a fixed left factor.
    const Elem* times_row(Elem a) const noexcept { return mul_.data() + std::size_t(a) * q_; }

    /// A primitive element (generator of the multiplicative group).
    Elem generator() const noexcept { return generator_; }

    friend bool operator==(const Field& a, const Field& b) noexcept { return a.p_ == b.p_ && a.m_ == b.m_; }

private:
    void check(unsigned a) const;

    unsigned p_;
    unsigned m_;
    unsigned q_;
    std::vector<unsigned> modulus_;
    Elem generator_ = 1;
    std::vector<Elem> exp_; // size 2(q-1)
    std::vector<Elem> log_; // log_[0] unused
    std::vector<Elem> add_;
    std::vector<Elem> mul_;
    std::vector<Elem> neg_;
    std::vector<Elem> inv_;
};

using FieldPtr = std::shared_ptr<const Field>;

/// True iff the monic polynomial (coefficients low to high) is irreducible
/// over GF(p), by trial division against every monic polynomial of degree
/// 1..deg/2.
bool is_irreducible(const std::vector<unsigned>& poly, unsigned p);

bool is_prime(unsigned n) noexcept;

} // namespace icn
