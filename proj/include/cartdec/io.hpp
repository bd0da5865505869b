#pragma once

#include <functional>
#include <string>

#include <json.hpp>

#include "cartdec/coset.hpp"
#include "cartdec/group.hpp"
#include "cartdec/partition.hpp"

namespace cartdec::io {

using json = nlohmann::json;

// Whole-document parse; trailing garbage and syntax errors are InputError.
json parse_strict(const std::string& text, const std::string& what);
std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);

Permutation permutation_from_json(const json& j, std::size_t degree);
json permutation_to_json(const Permutation& p);

// {"degree": n, "generators": [[...], ...], "name": "...", "order": N};
// name and order are optional, unknown keys are rejected. A stated order is
// checked when the group is first used.
PermGroup group_from_json(const json& j);
json group_to_json(const PermGroup& g);
PermGroup load_group(const std::string& path);

// A list of blocks; the degree is the number of points covered.
Partition partition_from_json(const json& j);
json partition_to_json(const Partition& p);
// A list of partitions.
CartesianDecomposition decomposition_from_json(const json& j);
json decomposition_to_json(const CartesianDecomposition& e);
CartesianDecomposition load_decomposition(const std::string& path);

// {"source": name, "target": name, "generator_images": [...]}.
GroupMorphism morphism_from_json(const json& j,
                                 const std::function<PermGroup(const std::string&)>& resolve);

}  // namespace cartdec::io
