#include "cartdec/io.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace cartdec::io {
namespace {

void only_keys(const json& j, std::initializer_list<const char*> allowed, const std::string& what) {
  if (!j.is_object()) throw InputError(what + ": expected an object");
  std::set<std::string> ok(allowed.begin(), allowed.end());
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!ok.count(it.key())) throw InputError(what + ": unknown field '" + it.key() + "'");
}

std::uint64_t as_index(const json& j, const std::string& what) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<std::int64_t>() >= 0))
    throw InputError(what + ": expected a non-negative integer");
  return j.get<std::uint64_t>();
}

}  // namespace

json parse_strict(const std::string& text, const std::string& what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(what + ": " + e.what());
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path);
  out << text;
}

Permutation permutation_from_json(const json& j, std::size_t degree) {
  if (!j.is_array()) throw InputError("permutation: expected an image list");
  if (j.size() != degree)
    throw InputError("permutation: " + std::to_string(j.size()) + " images for degree " +
                     std::to_string(degree));
  std::vector<Point> img(degree);
  for (std::size_t i = 0; i < degree; ++i) {
    std::uint64_t v = as_index(j[i], "permutation image");
    if (v >= degree) throw InputError("permutation: image " + std::to_string(v) + " out of range");
    img[i] = static_cast<Point>(v);
  }
  return Permutation::from_images(std::move(img));
}

json permutation_to_json(const Permutation& p) {
  return json(std::vector<Point>(p.images().begin(), p.images().end()));
}

PermGroup group_from_json(const json& j) {
  only_keys(j, {"degree", "generators", "name", "order"}, "group");
  if (!j.contains("degree") || !j.contains("generators"))
    throw InputError("group: 'degree' and 'generators' are required");
  std::uint64_t n = as_index(j["degree"], "group degree");
  if (n == 0) throw InputError("group: degree must be positive");
  if (!j["generators"].is_array()) throw InputError("group: 'generators' must be a list");
  std::vector<Permutation> gens;
  for (const auto& g : j["generators"]) gens.push_back(permutation_from_json(g, n));
  std::string name;
  if (j.contains("name")) {
    if (!j["name"].is_string()) throw InputError("group: 'name' must be a string");
    name = j["name"].get<std::string>();
  }
  PermGroup g(n, std::move(gens), std::move(name));
  // A claimed order; the chain builder rejects it if it is wrong.
  if (j.contains("order")) {
    std::uint64_t o = as_index(j["order"], "group order");
    if (o == 0) throw InputError("group: 'order' must be a positive integer");
    g.set_known_order(o);
  }
  return g;
}

json group_to_json(const PermGroup& g) {
  json j;
  j["degree"] = g.degree();
  j["generators"] = json::array();
  for (const auto& x : g.generators()) j["generators"].push_back(permutation_to_json(x));
  if (!g.name().empty()) j["name"] = g.name();
  if (auto o = g.known_order()) j["order"] = *o;
  return j;
}

PermGroup load_group(const std::string& path) {
  return group_from_json(parse_strict(read_file(path), path));
}

Partition partition_from_json(const json& j) {
  if (!j.is_array()) throw InputError("partition: expected a list of blocks");
  std::vector<std::vector<Point>> blocks;
  std::size_t n = 0;
  for (const auto& b : j) {
    if (!b.is_array()) throw InputError("partition: each block must be a list of points");
    std::vector<Point> blk;
    for (const auto& p : b) {
      std::uint64_t v = as_index(p, "partition point");
      if (v >= UINT32_MAX) throw InputError("partition: point out of range");
      blk.push_back(static_cast<Point>(v));
    }
    n += blk.size();
    blocks.push_back(std::move(blk));
  }
  return Partition::from_blocks(n, blocks);
}

json partition_to_json(const Partition& p) {
  json j = json::array();
  for (const auto& b : p.blocks()) j.push_back(b);
  return j;
}

CartesianDecomposition decomposition_from_json(const json& j) {
  if (!j.is_array() || j.empty()) throw InputError("decomposition: expected a nonempty list of partitions");
  std::vector<Partition> parts;
  for (const auto& p : j) parts.push_back(partition_from_json(p));
  for (const auto& p : parts)
    if (p.degree() != parts[0].degree()) throw InputError("decomposition: partitions of different degrees");
  return CartesianDecomposition(std::move(parts));
}

json decomposition_to_json(const CartesianDecomposition& e) {
  json j = json::array();
  for (const auto& p : e.partitions()) j.push_back(partition_to_json(p));
  return j;
}

CartesianDecomposition load_decomposition(const std::string& path) {
  return decomposition_from_json(parse_strict(read_file(path), path));
}

GroupMorphism morphism_from_json(const json& j,
                                 const std::function<PermGroup(const std::string&)>& resolve) {
  only_keys(j, {"source", "target", "generator_images"}, "morphism");
  if (!j.contains("source") || !j.contains("target") || !j.contains("generator_images"))
    throw InputError("morphism: 'source', 'target' and 'generator_images' are required");
  if (!j["source"].is_string() || !j["target"].is_string())
    throw InputError("morphism: source and target must be group names");
  PermGroup src = resolve(j["source"].get<std::string>());
  PermGroup tgt = resolve(j["target"].get<std::string>());
  if (!j["generator_images"].is_array()) throw InputError("morphism: 'generator_images' must be a list");
  std::vector<Permutation> imgs;
  for (const auto& x : j["generator_images"]) imgs.push_back(permutation_from_json(x, tgt.degree()));
  return GroupMorphism::from_images(src, tgt, std::move(imgs));
}

}  // namespace cartdec::io
