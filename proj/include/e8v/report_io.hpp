#pragma once

// Serialization of verification reports: full JSON records and a compact
// CSV (r, valid, witness_kind, witness_value, elapsed_ms).

#include <ostream>

#include <nlohmann/json.hpp>

#include "e8v/verifier.hpp"

namespace e8v {

inline nlohmann::json to_json(const VerificationRecord& record) {
  nlohmann::json j;
  j["r"] = record.r.str();
  j["valid"] = record.valid;
  j["witness_kind"] = witness_kind_name(record.witness);
  if (record.witness == VerificationRecord::Witness::kTheta)
    j["witness_theta"] = record.witness_theta.str();
  j["pi_size"] = record.pi_size;
  j["elapsed_ms"] = record.elapsed_ms;
  return j;
}

inline nlohmann::json to_json(const Report& report) {
  nlohmann::json j;
  j["bound"] = report.bound;
  j["classes"] = report.classes;
  j["prime_count"] = report.prime_count;
  j["prime_power_count"] = report.prime_power_count;
  j["records"] = nlohmann::json::array();
  for (const auto& record : report.records) j["records"].push_back(to_json(record));
  j["exceptional"] = nlohmann::json::array();
  for (const auto& r : report.exceptional) j["exceptional"].push_back(r.str());
  j["total_ms"] = report.total_ms;
  j["cache"] = {{"entries", report.cache_stats.entries},
                {"rejected_on_load", report.cache_stats.rejected_on_load},
                {"hits", report.cache_stats.hits},
                {"misses", report.cache_stats.misses}};
  return j;
}

inline void write_csv(std::ostream& out, const Report& report) {
  out << "r,valid,witness_kind,witness_value,elapsed_ms\n";
  for (const auto& record : report.records) {
    out << record.r.str() << ',' << (record.valid ? "true" : "false") << ','
        << witness_kind_name(record.witness) << ',';
    if (record.witness == VerificationRecord::Witness::kTheta)
      out << record.witness_theta.str();
    out << ',' << record.elapsed_ms << '\n';
  }
}

}  // namespace e8v
