#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "metent/constructions.hpp"
#include "metent/duality.hpp"

namespace metent {

/// Reads the "constants" object of a JSON config; missing keys keep their
/// defaults, unknown keys are rejected.
PaperConstants parse_constants(std::string_view config_text);
std::string constants_json(const PaperConstants& c);
/// FNV-1a (64 bit) of the canonical constants JSON.
std::uint64_t constants_hash(const PaperConstants& c);
/// "<stem>_seed<seed>_c<hash as 16 hex digits>.<ext>"
std::string report_filename(std::string_view stem, std::uint64_t seed, const PaperConstants& c,
                            std::string_view ext);

std::string to_json(const CoverEstimate& e, int indent = 2);
std::string to_json(const Staircase& st, int indent = 2);
std::string to_json(const GammaValue& g, int indent = 2);
std::string to_json(const SeparatedSet& s, int indent = 2);
std::string to_json(const TelescopeSchedule& t, int indent = 2);
std::string to_json(const DualityReport& r, int indent = 2);
std::string to_json(const FirstStepRecord& r, int indent = 2);
std::string to_json(const IterationRecord& r, int indent = 2);
std::string to_json(const ConjectureProbe& p, int indent = 2);

/// t,alpha,right,left,primal_lower_bits,primal_upper_bits
std::string ratio_csv(const DualityReport& r);

}  // namespace metent
