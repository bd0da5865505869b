#pragma once

#include <cstdint>
#include <map>
#include <vector>

namespace cartdec {

bool is_prime(std::uint64_t n);
// Prime factorisation as prime -> exponent.
std::map<std::uint64_t, unsigned> factorize(std::uint64_t n);
std::vector<std::uint64_t> prime_divisors(std::uint64_t n);

}  // namespace cartdec
