#pragma once

#include <optional>
#include <string>
#include <vector>

#include "icn/io.hpp"

namespace icn::fixtures {

/// Fixture names from the embedded manifest, in manifest order.
std::vector<std::string> names();

/// Embedded copy of fixtures/<file>.
std::optional<std::string> file(const std::string& filename);

struct Fixture {
    std::string name;
    io::json expect;
    std::optional<IndexInstance> instance;
    std::optional<LinearIndexCode> index_code;
    std::optional<NetworkInstance> network;
    std::optional<NetworkCode> network_code;
    std::optional<Matroid> matroid;
    std::vector<Representation> representations;
};

/// Throws DomainError for an unknown name.
Fixture get(const std::string& name);

struct VerdictCheck {
    std::string what;
    std::string expected;
    std::string actual;
    bool pass = false;
};

/// Re-derives every expected verdict of the fixture. Exhaustive searches
/// (index, network and scalar representation) run only when `searches` is
/// set.
std::vector<VerdictCheck> check(const Fixture& fx, bool searches, int threads = 1);

/// Rate report for a fixture's index instance (the instance itself, or the
/// reduction of its network or matroid): shipped codes and representations
/// are transported into witnesses, and the configured searches supply the
/// lower bounds.
RateReport report(const std::string& name, const SearchBudget& budget = {}, int threads = 1);

} // namespace icn::fixtures
