#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"

#include "dunkl/mc_simulator.hpp"
#include "dunkl/radial_engine.hpp"
#include "dunkl/root_system.hpp"
#include "dunkl/semilinear_solver.hpp"

namespace dunkl::io {

using nlohmann::json;

/// Short root system grammar:
///   a1:k                       d = 1
///   a1xa1:k  (a1xa1xa1:k ...)  product of d copies of A1
///   dihedral:n:k1[,k2]         I_2(n), k2 for the second class when n is even
///   b2:ks,kl                   short / long multiplicities
RootSystem parse_system(const std::string& text);

/// {"family", "d", "order", "roots", "k"}; unknown fields are rejected.
RootSystem system_from_json(const json& j);
json system_to_json(const RootSystem& sys);

/// FNV-1a (64 bit) of the compact dump of j; nlohmann objects keep keys
/// sorted, so the dump is canonical. Rendered as 16 hex digits.
std::string config_hash(const json& j);

json to_json(const BlowupInfo& b);
json to_json(const RadialSolution& sol, bool with_profile = true);
json to_json(const KOIntegral& k);
json to_json(const KOReport& r);
json to_json(const ExitSummary& s);
json to_json(const SupportReport& s);
json to_json(const RadialLawReport& r);
json to_json(const VerificationReport& v);

/// CSV writers: header row, '.' decimals, 17 significant digits.
void write_profile_csv(std::ostream& out, const RadialSolution& sol);
void write_exit_csv(std::ostream& out, const std::vector<ExitSample>& samples, int dimension);

}  // namespace dunkl::io
