#pragma once

#include <string>

#include "json.hpp"  // vendored nlohmann single header

#include "cantor/approximation.hpp"
#include "cantor/tm.hpp"

namespace cantor {

using Json = nlohmann::ordered_json;

// schema: {"kind":"constant","q":2} | {"kind":"periodic","qs":[..]} |
//         {"kind":"table","qs":[..],"default":2}
Json radix_to_json(const RadixSequence& r);
RadixSequence radix_from_json(const Json& j);

Json value_to_json(const CoefficientValue& v);
CoefficientValue value_from_json(const Json& j, Domain domain, std::int64_t unit_order);

Json product_spec_to_json(const ProductSpec& spec);
ProductSpec product_spec_from_json(const Json& j);

Json tm_spec_to_json(const TMSpec& spec);
TMSpec tm_spec_from_json(const Json& j);

Json intseq_to_json(const IntSeq& s);
IntSeq intseq_from_json(const Json& j);

Json interval_to_json(const RatInterval& iv);

Json witness_to_json(const RepetitionWitness& w);
Json approximant_to_json(const RationalApproximant& a);
Json inequality_report_to_json(const InequalityReport& rep);
Json copy_structure_to_json(const CopyStructure& cs, std::size_t block_level, const Int& block_len);
Json boundedness_to_json(const BoundednessReport& rep);
Json schmidt_to_json(const std::vector<SchmidtTriple>& rows);
std::string schmidt_to_csv(const std::vector<SchmidtTriple>& rows);
Json periodicity_to_json(const PeriodicityResult& r);
Json period_scan_to_json(const PeriodScan& r);
Json cyclotomic_to_json(const CyclotomicInterval& v, std::int64_t L);

std::string coefficients_to_csv(const std::vector<CoefficientValue>& coeffs);
Json coefficients_to_json(const std::vector<CoefficientValue>& coeffs);

/// Parses a spec file that must hold a JSON object; IO and parse failures
/// carry SPEC_PARSE.
Json load_json_file(const std::string& path);

}  // namespace cantor
