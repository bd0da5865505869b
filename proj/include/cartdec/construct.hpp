#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "cartdec/group.hpp"
#include "cartdec/partition.hpp"

namespace cartdec {

// An innately transitive group G with plinth M acting on the cosets of an
// intersection of subgroups of M, with the decomposition those subgroups
// define. omega is the coset of the intersection itself.
struct Instance {
  std::string example;  // fullex, stex, smf or m10
  std::string simple;
  std::size_t k = 1;
  PermGroup g, m;
  Point omega = 0;
  CartesianDecomposition e;
  nlohmann::json info;
};

// T^k on the cosets of A^k n B^k, with E the coordinate decomposition from
// the subgroups T x .. x A x .. x T and T x .. x B x .. x T. G adds the
// factor cycle and, where the atlas has one, an automorphism of the first
// factor normalizing both A and B.
Instance build_full_fact_example(const std::string& simple, std::size_t k, const Limits& limits = {});
// T^k (k even) with K1 the product of the diagonals of consecutive factor
// pairs and K2 = (A x B)^(k/2). G adds (tau, tau, 1, ..)(1 2) and the double
// cycle on the pairs.
Instance build_strip_example(const std::string& simple, std::size_t k, const Limits& limits = {});
// T^k on the cosets of A^k n B^k n C^k for the three subgroups of the atlas
// entry, G adding the factor cycle.
Instance build_smf_example(const std::string& simple, std::size_t k, const Limits& limits = {});
// A6 on the 36 cosets of A n B extended by an automorphism swapping the two
// classes of A5 whose coset contains no involution; E is the grid.
Instance build_m10_example(const Limits& limits = {});

// Dispatch on the example name used by the command line.
Instance build_example(const std::string& example, const std::string& simple, std::size_t k,
                       const Limits& limits = {});

struct SuiteItem {
  std::string name;
  bool ok = false;
  nlohmann::json detail;
};

struct SuiteResult {
  std::string suite;
  std::vector<SuiteItem> items;
  bool ok() const;
  nlohmann::json to_json() const;
};

// Normalizers of strips, of the factorisation subgroups and of their
// intersections, each computed by backtrack search and compared with the
// closed forms.
SuiteResult verify_normaliser_propositions(const Limits& limits = {});

}  // namespace cartdec
