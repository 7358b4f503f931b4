#ifndef WSEQ_TABLES_HPP
#define WSEQ_TABLES_HPP

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "wseq/certify.hpp"

namespace wseq {

/// One published certificate row: k = 0 marks a row valid for all k >= ell + t - 1.
struct TableRow {
  int table = 0;
  Variant variant = Variant::main;
  int t = 0;
  int k = 0;
  int ell = 0;
  std::size_t degree = 0;
  Monomial monomial;
  BigInt coefficient;
  std::string factored;  // as printed, e.g. "-3^4 * 5 * 47 * 97 * 271 * 15985681"

  KScope scope() const;
};

/// The 20 certificate rows of the four published tables (t = 6 main, t = 7 cmpp).
const std::vector<TableRow>& reference_rows();
std::vector<TableRow> reference_rows_for(Variant variant, int t);

enum class Tier { fast, full };
Tier parse_tier(const std::string& s);

struct ReproducedRow {
  TableRow expected;
  std::size_t degree = 0;
  bool computed = false;  // false: degree-only row in the fast tier
  std::optional<Certificate> certificate;
  std::vector<std::string> mismatches;
  bool ok() const { return mismatches.empty(); }
};

struct ReproduceResult {
  Variant variant = Variant::main;
  int t = 0;
  Tier tier = Tier::fast;
  std::vector<ReproducedRow> rows;
  bool all_match() const;
  std::vector<Certificate> certificates() const;
};

using ProgressFn = std::function<void(const std::string&)>;

/// Rebuilds every row for (main, 6) or (cmpp, 7). The fast tier extracts coefficients for
/// ell <= 11 and checks only degrees for ell = 12; the full tier extracts all of them.
ReproduceResult reproduce_tables(Variant variant, int t, Tier tier, const CoefficientOptions& opts = {},
                                 const ProgressFn& progress = {});

/// Header "k,ell,deg,monomial,coefficient,table,factorization,status".
std::string tables_csv(const ReproduceResult& result);

}  // namespace wseq

#endif  // WSEQ_TABLES_HPP
