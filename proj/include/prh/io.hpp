#pragma once

#include <string>

#include <json.hpp>

#include "prh/lattice.hpp"
#include "prh/solver.hpp"

namespace prh {

// Binary field format: magic "PRHF", u32 version (= 1), u32 dim, u32 n,
// f64 extent, then n^dim f64 values, row-major, all little-endian.
void write_prhf(const std::string& path, const Field& f);
Field read_prhf(const std::string& path);

// Structural JSON-schema validation (subset: type, required, properties,
// items, enum, const).  Returns an empty string on success, otherwise a
// human-readable description of the first violation.
std::string validate_against_schema(const nlohmann::json& doc, const nlohmann::json& schema);

// Report serialization.  `config_echo` is embedded verbatim so a report can
// reproduce its run; `field_path` points at the sidecar PRHF file.
nlohmann::json report_to_json(const SolveReport& rep, const ProblemSpec& spec,
                              const nlohmann::json& config_echo,
                              const std::string& field_path);

nlohmann::json decay_fit_to_json(const DecayFit& fit);

}  // namespace prh
