#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace cartdec {

using Params = std::map<std::string, std::int64_t>;

// Integer expressions: + - * / ^, parentheses, gcd(x, y) and
// prod(v, lo, hi, expr). Division must be exact; overflow past 64 bits and
// unknown names are InputError.
std::uint64_t evaluate_expression(const std::string& expr, const Params& vars);

struct CatalogGroup {
  std::string name;
  std::string order;  // expression in the row parameters
};

struct CatalogRow {
  int table = 0;
  std::string row;  // "1", "4a", ...
  CatalogGroup t;
  // One entry per position (A, B, C); each lists alternative groups.
  std::vector<std::vector<CatalogGroup>> parts;
  std::string constraint;         // e.g. "q >= 4, q even"
  std::vector<Params> instances;  // parameter values with shipped atlas data
  bool atlas_instantiable = false;
  bool disputed = false;
  std::string note;
  bool maximal = false;  // parts maximal in T
  bool perfect = false;  // parts perfect

  std::string key() const { return "table" + std::to_string(table) + "/row" + row; }
};

class Catalog {
 public:
  static Catalog from_json(const nlohmann::json& j);
  // The shipped catalog (embedded at build time).
  static const Catalog& builtin();

  const std::vector<CatalogRow>& rows() const { return rows_; }
  const CatalogRow* find(const std::string& key) const;
  // Rows of `table` whose atlas instances give |T| = t_order and whose part
  // orders, as multisets, equal `part_orders` for some choice of
  // alternatives. Disputed rows never match.
  std::vector<const CatalogRow*> match(int table, std::uint64_t t_order,
                                       std::vector<std::uint64_t> part_orders) const;
  // Every row whose instances evaluate; returns a description of the first
  // failure, if any.
  std::optional<std::string> sanity() const;

 private:
  std::vector<CatalogRow> rows_;
};

}  // namespace cartdec
