#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "cartdec/group.hpp"
#include "cartdec/product.hpp"

namespace cartdec {

struct FactorisationCertificate {
  enum class Kind { plain, full, strong_multiple, full_strip };

  Kind kind = Kind::plain;
  bool holds = false;
  std::string reason;  // first failed condition; empty when holds
  bool nontrivial = false;

  std::uint64_t m_order = 0;
  std::uint64_t t_order = 0;  // 0 for plain certificates
  std::size_t k = 0;
  std::vector<std::uint64_t> part_orders;
  // plain: |A n B|. strong multiple: |K_j2 n K_j3| for j1 = 0, 1, 2.
  // full strip: |D n K|.
  std::vector<std::uint64_t> intersection_orders;
  // [i][j] = |sigma_i(K_j)|
  std::vector<std::vector<std::uint64_t>> projection_orders;
  std::vector<std::uint64_t> t_primes;
  std::vector<std::vector<std::vector<std::uint64_t>>> projection_primes;
  // sigma_1(K_j)' x ... x sigma_k(K_j)' <= K_j for every j (full and
  // strong multiple kinds).
  std::optional<bool> derived_contained;

  // Full strip kind.
  std::vector<std::size_t> strip_lengths;
  std::optional<bool> isomorphism_certified;
  std::string isomorphism_evidence;
  // sigma_i(K) . alpha^-1(sigma_j(K)) = T_i across each strip {i, j}.
  std::optional<bool> strip_factorisation;
  std::string caveat;

  std::vector<std::string> matched_rows;

  nlohmann::json to_json() const;
};

std::string to_string(FactorisationCertificate::Kind k);

// M = AB, decided by |A||B| = |M||A n B|.
FactorisationCertificate is_factorisation(const PermGroup& m, const PermGroup& a,
                                          const PermGroup& b, const Limits& limits = {});
FactorisationCertificate is_full_factorisation(const DirectFactorisation& d, const PermGroup& k1,
                                               const PermGroup& k2, const Limits& limits = {});
// Fails with reason "requires three parts" unless exactly three are given.
FactorisationCertificate is_strong_multiple_factorisation(const DirectFactorisation& d,
                                                          const std::vector<PermGroup>& parts,
                                                          const Limits& limits = {});
// Throws TheoremViolation if a strip involved in D has length other than 2
// in an otherwise valid full strip factorisation.
FactorisationCertificate is_full_strip_factorisation(const DirectFactorisation& d,
                                                     const PermGroup& dstrips, const PermGroup& k,
                                                     const Limits& limits = {});

// Catalog rows consistent with a verified certificate; empty if none or if
// the certificate does not hold.
std::vector<std::string> match_table(const FactorisationCertificate& c);

// Multiset of element orders, as order -> count. Throws LimitError above
// `cap` elements.
std::map<std::uint64_t, std::uint64_t> element_order_profile(const PermGroup& g,
                                                             std::uint64_t cap = 500000);

}  // namespace cartdec
