#pragma once

#include <string>
#include <vector>

namespace wlog {

/// One checked expectation of a registry entry, tagged with the provenance
/// of its expected value.
struct Expectation {
    std::string name;
    std::string provenance;  // reference, trivial or derived
    bool pass = false;
    std::string detail;
};

struct RegistryResult {
    std::string id;
    bool pass = false;
    std::vector<Expectation> expectations;
};

std::vector<std::string> registry_ids();
RegistryResult run_registry_entry(const std::string& id);
std::string render_text(const RegistryResult& r);

}  // namespace wlog
