#pragma once

#include <stdexcept>
#include <string>

namespace fpp {

// Bad user-supplied configuration (unparseable or malformed parameters).
struct config_error : std::runtime_error {
    explicit config_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Structurally valid input outside an operation's domain.
struct domain_error : std::runtime_error {
    explicit domain_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Environment query degenerated into an unbounded search.
struct env_pathology_error : domain_error {
    explicit env_pathology_error(const std::string& msg) : domain_error(msg) {}
};

// Brute-force oracle asked to enumerate beyond its budget.
struct oracle_scope_error : domain_error {
    explicit oracle_scope_error(const std::string& msg) : domain_error(msg) {}
};

}  // namespace fpp
