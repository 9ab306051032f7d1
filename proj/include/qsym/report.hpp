#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "qsym/construct.hpp"

namespace qsym {

struct Check {
  std::string tag;
  std::string quote;   // the claim, stated plainly
  std::string status;  // "pass" or "fail"
  std::string details;
  std::string field;   // where it was verified
  bool passed() const { return status == "pass"; }
  friend bool operator==(const Check& a, const Check& b) {
    return a.tag == b.tag && a.quote == b.quote && a.status == b.status && a.details == b.details && a.field == b.field;
  }
};

struct Report {
  int version = 1;
  std::string command;
  std::string input_digest;
  std::vector<Check> checks;
  std::map<std::string, double> timings;
  bool all_passed() const;
  friend bool operator==(const Report& a, const Report& b) {
    return a.version == b.version && a.command == b.command && a.input_digest == b.input_digest &&
           a.checks == b.checks && a.timings == b.timings;
  }
};

nlohmann::json to_json(const Report& r);
Report report_from_json(const nlohmann::json& j);
std::string to_text(const Report& r);

std::string sha256_hex(std::string_view data);

/// Groups accepted by verify_paper's filter: catalog ids plus the named batteries.
std::vector<std::string> verification_groups();
/// Throws DomainError for an unknown group.
Report verify_paper(const std::optional<std::string>& only = std::nullopt);

/// Checks the expected evidence of one catalog entry.
std::vector<Check> check_catalog_entry(const CatalogEntry& entry, std::uint64_t seed = 1);

nlohmann::json evidence_json(const Classification& c);

}  // namespace qsym
