#include "wseq/json_io.hpp"

#include <stdexcept>

namespace wseq {

namespace {

BigInt big_from(const Json& j, const char* field) {
  if (!j.is_string()) throw std::invalid_argument(std::string("field '") + field + "' must be a decimal string");
  BigInt v;
  if (v.set_str(j.get<std::string>(), 10) != 0) {
    throw std::invalid_argument(std::string("field '") + field + "' is not a decimal integer");
  }
  return v;
}

const Json& require(const Json& j, const char* field) {
  if (!j.is_object() || !j.contains(field)) {
    throw std::invalid_argument(std::string("certificate is missing field '") + field + "'");
  }
  return j.at(field);
}

}  // namespace

Json violations_json(const std::vector<IndexPair>& v) {
  Json out = Json::array();
  for (const auto& p : v) out.push_back({p.i, p.j});
  return out;
}

Json to_json(const Factorization& f) {
  Json out = Json::array();
  for (const auto& pp : f.factors) out.push_back({{"prime", pp.prime.get_str()}, {"exp", pp.exp}});
  return out;
}

Json to_json(const Certificate& c) {
  Json excluded = Json::array();
  for (const auto& p : c.excluded_primes) excluded.push_back(p.get_str());
  return {
      {"variant", to_string(c.variant)},
      {"t", c.t},
      {"ell", c.ell},
      {"k_scope", {{"type", c.k_scope.type == ScopeType::exact ? "exact" : "at_least"}, {"value", c.k_scope.value}}},
      {"family", to_string(c.family)},
      {"monomial", c.monomial.exponents},
      {"degree", c.degree},
      {"coefficient", c.coefficient.get_str()},
      {"factored", factored_string(c.factorization)},
      {"factorization", to_json(c.factorization)},
      {"excluded_primes", excluded},
      {"primality_method", c.factorization.primality_method},
  };
}

Certificate certificate_from_json(const Json& j) {
  Certificate c;
  c.variant = parse_variant(require(j, "variant").get<std::string>());
  c.t = require(j, "t").get<int>();
  c.ell = require(j, "ell").get<int>();
  const Json& scope = require(j, "k_scope");
  const std::string type = require(scope, "type").get<std::string>();
  if (type == "exact") {
    c.k_scope.type = ScopeType::exact;
  } else if (type == "at_least") {
    c.k_scope.type = ScopeType::at_least;
  } else {
    throw std::invalid_argument("k_scope.type must be 'exact' or 'at_least', got '" + type + "'");
  }
  c.k_scope.value = require(scope, "value").get<int>();
  c.family = j.contains("family") ? parse_family(j.at("family").get<std::string>()) : certificate_family(c.variant, c.k_scope);
  c.monomial.exponents = require(j, "monomial").get<std::vector<int>>();
  c.degree = require(j, "degree").get<std::size_t>();
  c.coefficient = big_from(require(j, "coefficient"), "coefficient");
  c.factorization.sign = sgn(c.coefficient);
  for (const auto& pp : require(j, "factorization")) {
    c.factorization.factors.push_back({big_from(require(pp, "prime"), "prime"), require(pp, "exp").get<int>()});
  }
  for (const auto& p : require(j, "excluded_primes")) c.excluded_primes.push_back(big_from(p, "excluded_primes"));
  if (j.contains("primality_method")) c.factorization.primality_method = j.at("primality_method").get<std::string>();
  return c;
}

std::vector<Certificate> certificates_from_json(const Json& j) {
  const Json& list = j.is_object() ? require(j, "certificates") : j;
  if (!list.is_array()) throw std::invalid_argument("certificate file must hold an array of certificates");
  std::vector<Certificate> out;
  for (const auto& c : list) out.push_back(certificate_from_json(c));
  return out;
}

Json certificates_to_json(const std::vector<Certificate>& certs) {
  Json list = Json::array();
  for (const auto& c : certs) list.push_back(to_json(c));
  return {{"certificates", list}};
}

Json to_json(const TheoremReport& rep) {
  Json rows = Json::array();
  for (const auto& r : rep.rows) {
    Json discharged = Json::array();
    for (const auto& p : r.discharged_by_size) discharged.push_back(p.get_str());
    rows.push_back({{"k", r.k},
                    {"and_above", r.and_above},
                    {"certificates", r.certificates},
                    {"gcd", r.gcd.get_str()},
                    {"discharged_by_size", discharged},
                    {"residual", r.residual.get_str()},
                    {"covered", r.covered}});
  }
  return {{"variant", to_string(rep.variant)}, {"t", rep.t},       {"k_min", rep.k_min},
          {"base_case", rep.base_case},        {"rows", rows},     {"gaps", rep.gaps},
          {"verdict", rep.verdict()}};
}

Json search_report(const SearchResult& res, int t) {
  Json out;
  out["status"] = to_string(res.status);
  if (res.ordering) {
    out["ordering"] = res.ordering->sequence();
    out["violations"] = violations_json(t_weak_violations(*res.ordering, t));
  } else {
    out["ordering"] = nullptr;
    out["violations"] = Json::array();
  }
  out["nodes_visited"] = res.nodes_visited;
  return out;
}

Json to_json(const ExhaustReport& rep) {
  Json rows = Json::array();
  for (const auto& r : rep.rows) {
    rows.push_back({{"k", r.k},
                    {"subsets", r.subsets},
                    {"sequenceable", r.sequenceable},
                    {"undecided", r.undecided},
                    {"counterexamples", r.counterexamples}});
  }
  return {{"n", rep.n},
          {"t", rep.t},
          {"k_lo", rep.k_lo},
          {"k_hi", rep.k_hi},
          {"rows", rows},
          {"counterexamples", rep.counterexamples},
          {"undecided", rep.undecided_sets},
          {"all_sequenceable", rep.all_sequenceable()}};
}

Json to_json(const EstimateReport& rep) {
  return {{"quantity", rep.quantity},
          {"estimate", rep.estimate},
          {"standard_error", rep.standard_error},
          {"bound", rep.bound},
          {"sharp_bound", rep.sharp_bound},
          {"corrected_bound", rep.corrected_bound},
          {"bound_satisfied", rep.bound_satisfied},
          {"sharp_bound_satisfied", rep.sharp_bound_satisfied},
          {"corrected_bound_satisfied", rep.corrected_bound_satisfied},
          {"trials", rep.trials},
          {"seed", rep.seed},
          {"total", rep.total}};
}

Json factor_dump(const FactorSystem& sys) {
  Json out = Json::array();
  for (const auto& f : sys.factors) {
    Json vars = Json::array(), coeffs = Json::array();
    for (const auto& term : f.terms) {
      vars.push_back(term.var + 1);
      coeffs.push_back(std::to_string(term.coeff));
    }
    out.push_back({{"vars", vars}, {"coeffs", coeffs}});
  }
  return out;
}

}  // namespace wseq
