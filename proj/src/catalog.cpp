#include "cartdec/catalog.hpp"

#include <algorithm>
#include <cctype>
#include <functional>

#include "cartdec/embedded.hpp"
#include "cartdec/errors.hpp"

namespace cartdec {
namespace {

using i128 = __int128;

class Parser {
 public:
  Parser(const std::string& s, Params vars) : s_(s), vars_(std::move(vars)) {}

  i128 parse() {
    i128 v = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    throw InputError("expression '" + s_ + "': " + why);
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!eat(c)) fail(std::string("expected '") + c + "'");
  }
  static constexpr i128 kMax = static_cast<i128>(1) << 100;
  i128 check(i128 v) const {
    if (v > kMax || v < -kMax) fail("value out of range");
    return v;
  }

  i128 expr() {
    i128 v = term();
    for (;;) {
      if (eat('+'))
        v = check(v + term());
      else if (eat('-'))
        v = check(v - term());
      else
        return v;
    }
  }
  i128 term() {
    i128 v = power();
    for (;;) {
      if (eat('*')) {
        i128 r = power();
        if (r != 0 && (v > kMax / (r < 0 ? -r : r) || v < -kMax / (r < 0 ? -r : r))) fail("value out of range");
        v *= r;
      } else if (eat('/')) {
        i128 r = power();
        if (r == 0) fail("division by zero");
        if (v % r != 0) fail("inexact division");
        v /= r;
      } else {
        return v;
      }
    }
  }
  i128 power() {
    i128 b = unary();
    if (eat('^')) {
      i128 e = power();
      if (e < 0) fail("negative exponent");
      i128 r = 1;
      for (i128 k = 0; k < e; ++k) {
        r = check(r * b);
      }
      return r;
    }
    return b;
  }
  i128 unary() {
    if (eat('-')) return -unary();
    return atom();
  }
  std::string ident() {
    skip();
    std::size_t start = pos_;
    while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
    return s_.substr(start, pos_ - start);
  }
  i128 atom() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      i128 v = expr();
      expect(')');
      return v;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      i128 v = 0;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
        v = check(v * 10 + (s_[pos_++] - '0'));
      return v;
    }
    std::string name = ident();
    if (name.empty()) fail("unexpected '" + std::string(1, c) + "'");
    if (name == "gcd") {
      expect('(');
      i128 a = expr();
      expect(',');
      i128 b = expr();
      expect(')');
      if (a < 0) a = -a;
      if (b < 0) b = -b;
      while (b != 0) {
        i128 t = a % b;
        a = b;
        b = t;
      }
      return a;
    }
    if (name == "prod") {
      expect('(');
      std::string var = ident();
      if (var.empty()) fail("prod needs a variable name");
      expect(',');
      i128 lo = expr();
      expect(',');
      i128 hi = expr();
      expect(',');
      std::size_t body = pos_;
      i128 acc = 1;
      std::size_t end = body;
      auto saved = vars_.count(var) ? std::optional<std::int64_t>(vars_[var]) : std::nullopt;
      if (lo > hi) {
        // Parse once to find the end of the body.
        vars_[var] = 0;
        pos_ = body;
        expr();
        end = pos_;
      }
      for (i128 i = lo; i <= hi; ++i) {
        vars_[var] = static_cast<std::int64_t>(i);
        pos_ = body;
        acc = check(acc * expr());
        end = pos_;
      }
      if (saved)
        vars_[var] = *saved;
      else
        vars_.erase(var);
      pos_ = end;
      expect(')');
      return acc;
    }
    auto it = vars_.find(name);
    if (it == vars_.end()) fail("unknown name '" + name + "'");
    return it->second;
  }

  const std::string& s_;
  Params vars_;
  std::size_t pos_ = 0;
};

CatalogGroup group_from(const nlohmann::json& j) {
  return {j.at("name").get<std::string>(), j.at("order").get<std::string>()};
}

}  // namespace

std::uint64_t evaluate_expression(const std::string& expr, const Params& vars) {
  i128 v = Parser(expr, vars).parse();
  if (v < 0) throw InputError("expression '" + expr + "' is negative");
  if (v > static_cast<i128>(UINT64_MAX)) throw InputError("expression '" + expr + "' exceeds 64 bits");
  return static_cast<std::uint64_t>(v);
}

Catalog Catalog::from_json(const nlohmann::json& j) {
  Catalog c;
  try {
    for (const auto& r : j.at("rows")) {
      CatalogRow row;
      row.table = r.at("table").get<int>();
      row.row = r.at("row").get<std::string>();
      row.t = group_from(r.at("T"));
      for (const auto& pos : r.at("parts")) {
        std::vector<CatalogGroup> alts;
        for (const auto& a : pos) alts.push_back(group_from(a));
        row.parts.push_back(std::move(alts));
      }
      row.constraint = r.value("constraint", "");
      for (const auto& inst : r.value("instances", nlohmann::json::array())) {
        Params p;
        for (auto it = inst.begin(); it != inst.end(); ++it) p[it.key()] = it.value().get<std::int64_t>();
        row.instances.push_back(std::move(p));
      }
      row.atlas_instantiable = r.at("atlas_instantiable").get<bool>();
      row.disputed = r.value("disputed", false);
      row.note = r.value("note", "");
      row.maximal = r.value("maximal", false);
      row.perfect = r.value("perfect", false);
      c.rows_.push_back(std::move(row));
    }
  } catch (const nlohmann::json::exception& e) {
    throw DataCorruption(std::string("catalog: ") + e.what());
  }
  return c;
}

const Catalog& Catalog::builtin() {
  static const Catalog c = [] {
    const std::string& text = embedded::file("catalog.json");
    return from_json(nlohmann::json::parse(text));
  }();
  return c;
}

const CatalogRow* Catalog::find(const std::string& key) const {
  for (const auto& r : rows_)
    if (r.key() == key) return &r;
  return nullptr;
}

std::vector<const CatalogRow*> Catalog::match(int table, std::uint64_t t_order,
                                              std::vector<std::uint64_t> part_orders) const {
  std::sort(part_orders.begin(), part_orders.end());
  std::vector<const CatalogRow*> out;
  for (const auto& r : rows_) {
    if (r.table != table || r.disputed || !r.atlas_instantiable) continue;
    if (r.parts.size() != part_orders.size()) continue;
    bool hit = false;
    for (const auto& inst : r.instances) {
      if (evaluate_expression(r.t.order, inst) != t_order) continue;
      // Try every choice of alternatives.
      std::vector<std::size_t> pick(r.parts.size(), 0);
      for (;;) {
        std::vector<std::uint64_t> orders;
        for (std::size_t p = 0; p < r.parts.size(); ++p)
          orders.push_back(evaluate_expression(r.parts[p][pick[p]].order, inst));
        std::sort(orders.begin(), orders.end());
        if (orders == part_orders) {
          hit = true;
          break;
        }
        std::size_t p = 0;
        while (p < pick.size() && ++pick[p] == r.parts[p].size()) pick[p++] = 0;
        if (p == pick.size()) break;
      }
      if (hit) break;
    }
    if (hit) out.push_back(&r);
  }
  return out;
}

std::optional<std::string> Catalog::sanity() const {
  for (const auto& r : rows_) {
    if (r.parts.size() < 2 || r.parts.size() > 3) return r.key() + ": wrong number of parts";
    if (r.atlas_instantiable && r.instances.empty()) return r.key() + ": instantiable without instances";
    if (r.disputed) continue;
    for (const auto& inst : r.instances) {
      try {
        std::uint64_t t = evaluate_expression(r.t.order, inst);
        for (const auto& pos : r.parts)
          for (const auto& a : pos) {
            std::uint64_t o = evaluate_expression(a.order, inst);
            if (o == 0 || o >= t || t % o != 0)
              return r.key() + ": |" + a.name + "| = " + std::to_string(o) +
                     " is not a proper divisor of |T| = " + std::to_string(t);
          }
      } catch (const InputError& e) {
        return r.key() + ": " + e.what();
      }
    }
  }
  return std::nullopt;
}

}  // namespace cartdec
