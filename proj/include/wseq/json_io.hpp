#ifndef WSEQ_JSON_IO_HPP
#define WSEQ_JSON_IO_HPP

#include "json.hpp"

#include <string>
#include <vector>

#include "wseq/certify.hpp"
#include "wseq/montecarlo.hpp"
#include "wseq/search.hpp"

namespace wseq {

using Json = nlohmann::ordered_json;

/// Big integers always travel as decimal strings so that no reader rounds them.
Json to_json(const Certificate& cert);
Certificate certificate_from_json(const Json& j);

/// Accepts either {"certificates": [...]} or a bare array.
std::vector<Certificate> certificates_from_json(const Json& j);
Json certificates_to_json(const std::vector<Certificate>& certs);

Json to_json(const Factorization& f);
Json to_json(const TheoremReport& rep);

/// {status, ordering, violations, nodes_visited}; violations are 0-based (i, j) index pairs.
Json search_report(const SearchResult& res, int t);
Json to_json(const ExhaustReport& rep);
Json to_json(const EstimateReport& rep);

/// List of {vars, coeffs} with 1-based variable indices.
Json factor_dump(const FactorSystem& sys);

Json violations_json(const std::vector<IndexPair>& v);

}  // namespace wseq

#endif  // WSEQ_JSON_IO_HPP
