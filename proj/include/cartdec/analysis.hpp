#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "cartdec/factor.hpp"
#include "cartdec/group.hpp"
#include "cartdec/partition.hpp"
#include "cartdec/system.hpp"

namespace cartdec {

enum class ClassLabel { CD_1, CD_S, CD_1S, CD_2sim, CD_2nsim, CD_3, UNDECIDED };
std::string to_string(ClassLabel l);

struct LabelReport {
  ClassLabel label = ClassLabel::UNDECIDED;
  std::string undecided_reason;
  bool degenerate = false;  // system of one member
  std::vector<std::uint64_t> member_orders;
  bool all_subdirect = false;
  // |sigma_i(K_j)| over the distinct proper projections, i the first factor.
  std::vector<std::uint64_t> f_orders;
  std::vector<std::size_t> strip_lengths;  // strips involved in the members
  std::uint64_t acting_order = 0;          // group used for conjugacy tests
  std::string conjugacy_evidence;
  nlohmann::json cross_check;  // F at a second factor, when k >= 2
  nlohmann::json to_json() const;
};

// Working data in the action on the blocks of E, which is faithful; kept with
// the report so later checks need not rebuild it.
struct BlockModel;

struct AnalysisReport {
  static constexpr int schema_version = 1;

  std::size_t degree = 0;
  std::size_t index = 0;  // l
  std::uint64_t g_order = 0, m_order = 0, t_order = 0;
  std::size_t k = 0;
  Point omega = 0;
  std::vector<std::vector<std::size_t>> orbits;  // Xi_1..Xi_s
  std::size_t s = 0;
  bool homogeneous = false;
  std::size_t m = 0;               // common block count when homogeneous
  std::vector<std::size_t> ell;    // l_i when homogeneous
  std::vector<std::size_t> quotient_block_counts;  // |Omega_i|
  std::vector<std::uint64_t> k_orders;             // |K_i|
  bool quotient_degenerate = false;                // s = 1: index-1 quotient
  nlohmann::json checks;                           // name -> bool
  std::vector<LabelReport> labels;                 // of bar-Xi_i
  std::optional<FactorisationCertificate> certificate;
  nlohmann::json verdicts;
  nlohmann::json centralizer;
  std::vector<std::string> notes;

  std::shared_ptr<const BlockModel> model;

  nlohmann::json to_json() const;
  std::string to_text() const;
};

// A transitive minimal normal subgroup of G, found in the action on the
// blocks of E and pulled back to Omega. InputError when G is not innately
// transitive, UnsupportedInput when the only plinths are abelian. With more
// than one plinth the first found is returned.
PermGroup find_plinth(const PermGroup& g, const CartesianDecomposition& e, const Limits& limits = {});

// Quotient decomposition {Omega_i}, subgroups K_i and the labels of the
// bar-Xi_i. Throws InputError when E is not G-invariant (naming the
// generator), when M is not a transitive normal subgroup of G or not
// minimal normal; UnsupportedInput for an abelian M; TheoremViolation when a
// structural property of the quotient fails.
AnalysisReport quotient_analysis(const PermGroup& g, const PermGroup& m, Point omega,
                                 const CartesianDecomposition& e, const Limits& limits = {});

// Label of a G-transitive E; InputError if G is intransitive on E.
LabelReport six_class_classify(const PermGroup& g, const PermGroup& m, Point omega,
                               const CartesianDecomposition& e, const Limits& limits = {});

// quotient_analysis plus the verdicts for every clause that applies.
// TheoremViolation carries the failing clause and witness.
AnalysisReport theorem_main_report(const PermGroup& g, const PermGroup& m, Point omega,
                                   const CartesianDecomposition& e, const Limits& limits = {});

struct TheoremACheck {
  std::size_t orbits = 0;
  bool ok = false;
};
// Orbits of G on a homogeneous G-invariant E; more than two is a violation.
TheoremACheck theorem_A_check(const PermGroup& g, const CartesianDecomposition& e);

// Centralizer of M in Sym(Omega) from |N_M(M_w)| / |M_w|, which must be
// trivial for the applicable catalog rows; fills report.centralizer.
// Returns a skip reason in `witness` when no row applies.
Witnessed verify_centralizer_claims(AnalysisReport& report, const Limits& limits = {});

}  // namespace cartdec
