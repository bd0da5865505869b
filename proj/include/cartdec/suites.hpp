#pragma once

#include <string>
#include <vector>

#include "cartdec/construct.hpp"

namespace cartdec {

// Catalog integrity plus a certificate for every atlas-instantiable row: a
// row passes when each listed alternative, in each position, occurs in some
// certified choice of atlas subgroups. Catalog table 2 rows need the heavy
// tier and are reported as skipped without it.
SuiteResult verify_tables(bool heavy, const Limits& limits = {});

// Builds each example family and checks that its analysis exhibits the
// clause it was built for. The Sp6(2) instance needs the heavy tier.
SuiteResult verify_examples(bool heavy, const Limits& limits = {});

// "tables", "normalisers", "examples" or "all"; anything else is InputError.
std::vector<SuiteResult> run_suites(const std::string& suite, bool heavy, const Limits& limits = {});

}  // namespace cartdec
