#include "tvcat/document.hpp"

#include "tvcat/errors.hpp"

#include <set>
#include <vector>

namespace tvcat {

using nlohmann::json;

ParseError::ParseError(const std::string& what, std::size_t line, std::size_t column)
    : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
      line_(line), column_(column) {}

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw ConfigError(path + ": " + what);
}

void only_keys(const json& obj, const std::string& path, std::initializer_list<const char*> allowed) {
  if (!obj.is_object())
    fail(path, "expected an object");
  for (const auto& [key, _] : obj.items()) {
    bool ok = false;
    for (auto a : allowed)
      ok = ok || key == a;
    if (!ok)
      fail(path, "unknown key '" + key + "'");
  }
}

const json& required(const json& obj, const char* key, const std::string& path) {
  auto it = obj.find(key);
  if (it == obj.end())
    fail(path, std::string("missing key '") + key + "'");
  return *it;
}

std::string as_string(const json& j, const std::string& path) {
  if (!j.is_string())
    fail(path, "expected a string");
  return j.get<std::string>();
}

std::string value_text(const json& j, const std::string& path) {
  if (j.is_string())
    return j.get<std::string>();
  if (j.is_number_unsigned() || (j.is_number_integer() && j.get<long long>() >= 0))
    return std::to_string(j.get<unsigned long long>());
  fail(path, "expected a value name or a non-negative number");
}

Value parse_value(const Quantale& q, const json& j, const std::string& path) {
  const std::string text = value_text(j, path);
  auto v = q.find(text);
  if (!v)
    fail(path, "value '" + text + "' is not in the carrier of " + q.name());
  return *v;
}

std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

QuantaleRef parse_quantale(const json& j) {
  const std::string path = "quantale";
  if (!j.is_object())
    fail(path, "expected an object");
  if (j.contains("builtin")) {
    only_keys(j, path, {"builtin", "params"});
    std::vector<long long> params;
    if (auto it = j.find("params"); it != j.end()) {
      if (!it->is_array())
        fail(path + ".params", "expected an array of integers");
      for (const auto& p : *it) {
        if (!p.is_number_integer())
          fail(path + ".params", "expected an array of integers");
        params.push_back(p.get<long long>());
      }
    }
    try {
      return Quantale::make_builtin(as_string(j["builtin"], path + ".builtin"), params);
    } catch (const ConfigError& e) {
      fail(path, e.what());
    }
  }
  only_keys(j, path, {"name", "carrier", "order", "tensor", "unit"});
  Quantale::Tables t;
  t.name = j.contains("name") ? as_string(j["name"], path + ".name") : "custom";
  const json& carrier = required(j, "carrier", path);
  if (!carrier.is_array() || carrier.empty())
    fail(path + ".carrier", "expected a non-empty array of value names");
  for (std::size_t i = 0; i < carrier.size(); ++i)
    t.values.push_back(value_text(carrier[i], path + ".carrier[" + std::to_string(i) + "]"));
  const std::size_t n = t.values.size();
  if (n > Quantale::max_carrier)
    fail(path + ".carrier", "more than " + std::to_string(Quantale::max_carrier) + " values");
  auto index = [&](const json& v, const std::string& p) -> std::size_t {
    const std::string name = value_text(v, p);
    for (std::size_t i = 0; i < n; ++i)
      if (t.values[i] == name)
        return i;
    fail(p, "value '" + name + "' is not in the carrier");
  };

  // Generating pairs; the order is their reflexive-transitive closure.
  t.leq.assign(n * n, false);
  for (std::size_t i = 0; i < n; ++i)
    t.leq[i * n + i] = true;
  const json& order = required(j, "order", path);
  if (!order.is_array())
    fail(path + ".order", "expected an array of [lower, upper] pairs");
  for (std::size_t k = 0; k < order.size(); ++k) {
    const std::string p = path + ".order[" + std::to_string(k) + "]";
    if (!order[k].is_array() || order[k].size() != 2)
      fail(p, "expected [lower, upper]");
    t.leq[index(order[k][0], p + "[0]") * n + index(order[k][1], p + "[1]")] = true;
  }
  for (std::size_t m = 0; m < n; ++m)
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        if (t.leq[a * n + m] && t.leq[m * n + b])
          t.leq[a * n + b] = true;

  const json& tensor = required(j, "tensor", path);
  if (!tensor.is_array() || tensor.size() != n)
    fail(path + ".tensor", "expected " + std::to_string(n) + " rows");
  for (std::size_t a = 0; a < n; ++a) {
    const std::string p = path + ".tensor[" + std::to_string(a) + "]";
    if (!tensor[a].is_array() || tensor[a].size() != n)
      fail(p, "expected " + std::to_string(n) + " entries");
    for (std::size_t b = 0; b < n; ++b)
      t.tensor.push_back(static_cast<Value>(index(tensor[a][b], p + "[" + std::to_string(b) + "]")));
  }
  t.unit = static_cast<Value>(index(required(j, "unit", path), path + ".unit"));
  try {
    return Quantale::from_tables(std::move(t));
  } catch (const ConfigError& e) {
    fail(path, e.what());
  }
}

MonadRef parse_monad(const json& j, std::optional<std::size_t> budget) {
  const std::string path = "monad";
  only_keys(j, path, {"builtin", "budget"});
  const std::string name = as_string(required(j, "builtin", path), path + ".builtin");
  std::size_t b = 2;
  if (auto it = j.find("budget"); it != j.end()) {
    if (!it->is_number_unsigned())
      fail(path + ".budget", "expected a non-negative integer");
    b = it->get<std::size_t>();
  }
  if (budget)
    b = *budget;
  try {
    return make_builtin_monad(name, b);
  } catch (const ConfigError& e) {
    fail(path, e.what());
  }
}

// Rejects duplicate object keys, which the JSON reader would otherwise
// resolve silently.
struct DuplicateKeyGuard {
  std::vector<std::set<std::string>> open;
  bool operator()(int depth, json::parse_event_t event, json& parsed) {
    (void)depth;
    switch (event) {
    case json::parse_event_t::object_start:
      open.emplace_back();
      break;
    case json::parse_event_t::object_end:
      open.pop_back();
      break;
    case json::parse_event_t::key: {
      const auto key = parsed.get<std::string>();
      if (!open.back().insert(key).second)
        throw ConfigError("duplicate key '" + key + "'");
      break;
    }
    default:
      break;
    }
    return true;
  }
};

template <class F>
void for_entries(const json& block, const std::string& path, std::size_t arity, F&& each) {
  if (!block.is_array())
    fail(path, "expected an array");
  for (std::size_t k = 0; k < block.size(); ++k) {
    const std::string p = path + "[" + std::to_string(k) + "]";
    if (!block[k].is_array() || block[k].size() != arity)
      fail(p, "expected an array of " + std::to_string(arity) + " items");
    each(block[k], p);
  }
}

} // namespace

json element_to_json(const FinSet& set, std::size_t i) {
  switch (set.kind()) {
  case FinSet::Kind::atoms:
    return set.label(i);
  case FinSet::Kind::pairs:
    return json{{"pair", json::array({element_to_json(*set.base(), set.first(i)),
                                      element_to_json(*set.right(), set.second(i))})}};
  case FinSet::Kind::lists:
  case FinSet::Kind::subsets: {
    json arr = json::array();
    for (auto x : set.items(i))
      arr.push_back(element_to_json(*set.base(), x));
    return arr;
  }
  }
  return nullptr;
}

std::size_t element_from_json(const FinSet& set, const json& j, const std::string& path) {
  switch (set.kind()) {
  case FinSet::Kind::atoms: {
    const std::string name = as_string(j, path);
    auto idx = set.find(name);
    if (!idx)
      fail(path, "unknown element '" + name + "'");
    return *idx;
  }
  case FinSet::Kind::pairs: {
    if (!j.is_object() || j.size() != 1 || !j.contains("pair") || !j["pair"].is_array() ||
        j["pair"].size() != 2)
      fail(path, "expected {\"pair\": [left, right]}");
    return set.pair(element_from_json(*set.base(), j["pair"][0], path + ".pair[0]"),
                    element_from_json(*set.right(), j["pair"][1], path + ".pair[1]"));
  }
  case FinSet::Kind::lists:
  case FinSet::Kind::subsets: {
    const bool list = set.kind() == FinSet::Kind::lists;
    if (!j.is_array())
      fail(path, list ? "expected a list (array)" : "expected a set (array)");
    std::vector<std::size_t> items;
    for (std::size_t k = 0; k < j.size(); ++k)
      items.push_back(element_from_json(*set.base(), j[k], path + "[" + std::to_string(k) + "]"));
    if (list && items.size() > set.max_length())
      fail(path, "list longer than the budget " + std::to_string(set.max_length()));
    return set.encode(items);
  }
  }
  fail(path, "unsupported element kind");
}

json structure_to_json(const TVStructure& s) {
  const auto& q = *s.quantale;
  json out;
  out["monad"] = s.monad->name();
  json carrier = json::array();
  for (std::size_t i = 0; i < s.carrier->size(); ++i)
    carrier.push_back(element_to_json(*s.carrier, i));
  out["carrier"] = std::move(carrier);
  json entries = json::array();
  json undefined = json::array();
  const SetRef& tx = s.tcarrier();
  for (std::size_t t = 0; t < tx->size(); ++t) {
    if (!s.defined(t)) {
      undefined.push_back(element_to_json(*tx, t));
      continue;
    }
    for (std::size_t x = 0; x < s.carrier->size(); ++x)
      if (s.at(t, x) != q.bottom())
        entries.push_back(json::array(
            {element_to_json(*tx, t), element_to_json(*s.carrier, x), q.value_name(s.at(t, x))}));
  }
  out["entries"] = std::move(entries);
  if (!undefined.empty())
    out["undefined_rows"] = std::move(undefined);
  return out;
}

std::optional<Document::Kind> Document::kind_of(const std::string& name) const {
  if (structures.count(name))
    return Kind::structure;
  if (maps.count(name))
    return Kind::map;
  if (algebras.count(name))
    return Kind::algebra;
  if (relations.count(name))
    return Kind::relation;
  return std::nullopt;
}

TVRel Document::tvrel(const std::string& name) const {
  const auto& block = relations.at(name);
  return TVRel::make(structures.at(block.source), structures.at(block.target), block.rel);
}

Document parse_document(std::string_view text, std::optional<std::size_t> budget) {
  json root;
  try {
    root = json::parse(text.begin(), text.end(), DuplicateKeyGuard{});
  } catch (const json::parse_error& e) {
    auto [line, col] = line_column(text, e.byte);
    std::string what = e.what();
    // Drop the library's own "[json.exception.parse_error.101] parse error at line..." prefix.
    if (auto colon = what.find(": syntax error"); colon != std::string::npos)
      what = what.substr(colon + 2);
    throw ParseError(what, line, col);
  }
  only_keys(root, "document", {"quantale", "monad", "structures", "maps", "algebras", "relations"});

  Document doc;
  doc.quantale = parse_quantale(required(root, "quantale", "document"));
  doc.monad = parse_monad(required(root, "monad", "document"), budget);
  const auto& q = *doc.quantale;

  std::set<std::string> names;
  auto claim = [&](const std::string& name, const std::string& path) {
    if (!names.insert(name).second)
      fail(path, "name '" + name + "' is already used");
  };
  auto section = [&](const char* key) -> const json& {
    static const json empty = json::object();
    auto it = root.find(key);
    if (it == root.end())
      return empty;
    if (!it->is_object())
      fail(key, "expected an object of named blocks");
    return *it;
  };

  for (const auto& [name, block] : section("structures").items()) {
    const std::string path = "structures." + name;
    claim(name, path);
    only_keys(block, path, {"carrier", "vcat", "entries", "default"});
    const json& carrier = required(block, "carrier", path);
    if (!carrier.is_array())
      fail(path + ".carrier", "expected an array of element names");
    std::vector<std::string> atoms;
    for (std::size_t k = 0; k < carrier.size(); ++k)
      atoms.push_back(as_string(carrier[k], path + ".carrier[" + std::to_string(k) + "]"));
    SetRef x;
    try {
      x = FinSet::atoms(std::move(atoms));
    } catch (const ConfigError& e) {
      fail(path + ".carrier", e.what());
    }
    bool vcat = false;
    if (auto it = block.find("vcat"); it != block.end()) {
      if (!it->is_boolean())
        fail(path + ".vcat", "expected true or false");
      vcat = it->get<bool>();
    }
    const MonadRef monad = vcat ? identity_monad() : doc.monad;
    const SetRef tx = monad->apply(x);
    const Value fill = block.contains("default") ? parse_value(q, block["default"], path + ".default") : q.bottom();
    VRel rel(doc.quantale, tx, x, fill);
    std::vector<bool> seen(tx->size() * x->size(), false);
    if (block.contains("entries"))
      for_entries(block["entries"], path + ".entries", 3, [&](const json& e, const std::string& p) {
        const std::size_t t = element_from_json(*tx, e[0], p + "[0]");
        const std::size_t c = element_from_json(*x, e[1], p + "[1]");
        const Value v = parse_value(q, e[2], p + "[2]");
        if (seen[t * x->size() + c] && rel.at(t, c) != v)
          fail(p, "conflicting value for an entry given earlier");
        seen[t * x->size() + c] = true;
        rel.set(t, c, v);
      });
    doc.structures.emplace(name, TVStructure::make(name, monad, x, std::move(rel)));
  }

  auto structure_ref = [&](const json& block, const char* key, const std::string& path) -> const TVStructure& {
    const std::string ref = as_string(required(block, key, path), path + "." + key);
    auto it = doc.structures.find(ref);
    if (it == doc.structures.end())
      fail(path + "." + key, "undeclared structure '" + ref + "'");
    return it->second;
  };

  for (const auto& [name, block] : section("maps").items()) {
    const std::string path = "maps." + name;
    claim(name, path);
    only_keys(block, path, {"source", "target", "pairs"});
    const TVStructure& src = structure_ref(block, "source", path);
    const TVStructure& tgt = structure_ref(block, "target", path);
    if (src.monad != tgt.monad)
      fail(path, "source and target use different monads");
    std::vector<std::size_t> img(src.carrier->size(), Map::undefined);
    for_entries(required(block, "pairs", path), path + ".pairs", 2, [&](const json& e, const std::string& p) {
      const std::size_t a = element_from_json(*src.carrier, e[0], p + "[0]");
      const std::size_t b = element_from_json(*tgt.carrier, e[1], p + "[1]");
      if (img[a] != Map::undefined && img[a] != b)
        fail(p, "element mapped twice");
      img[a] = b;
    });
    for (std::size_t a = 0; a < img.size(); ++a)
      if (img[a] == Map::undefined)
        fail(path + ".pairs", "no image for '" + src.carrier->label(a) + "'");
    doc.maps.emplace(name, Document::MapBlock{src.name, tgt.name, Map(src.carrier, tgt.carrier, std::move(img))});
  }

  for (const auto& [name, block] : section("algebras").items()) {
    const std::string path = "algebras." + name;
    claim(name, path);
    only_keys(block, path, {"base", "action"});
    const TVStructure& base = structure_ref(block, "base", path);
    if (!base.is_vcat())
      fail(path + ".base", "the base of an algebra must be declared with \"vcat\": true");
    const SetRef tz = doc.monad->apply(base.carrier);
    std::vector<std::size_t> img(tz->size(), Map::undefined);
    for_entries(required(block, "action", path), path + ".action", 2, [&](const json& e, const std::string& p) {
      const std::size_t a = element_from_json(*tz, e[0], p + "[0]");
      const std::size_t b = element_from_json(*base.carrier, e[1], p + "[1]");
      if (img[a] != Map::undefined && img[a] != b)
        fail(p, "element mapped twice");
      img[a] = b;
    });
    for (std::size_t a = 0; a < img.size(); ++a)
      if (img[a] == Map::undefined)
        fail(path + ".action", "no image for '" + tz->label(a) + "'");
    doc.algebras.emplace(name, Document::AlgebraBlock{base.name, TAlgebra::make(base, doc.monad,
                                                                                Map(tz, base.carrier, std::move(img)))});
  }

  for (const auto& [name, block] : section("relations").items()) {
    const std::string path = "relations." + name;
    claim(name, path);
    only_keys(block, path, {"source", "target", "entries"});
    const TVStructure& src = structure_ref(block, "source", path);
    const TVStructure& tgt = structure_ref(block, "target", path);
    if (src.monad != tgt.monad)
      fail(path, "source and target use different monads");
    VRel rel(doc.quantale, src.tcarrier(), tgt.carrier);
    if (block.contains("entries"))
      for_entries(block["entries"], path + ".entries", 3, [&](const json& e, const std::string& p) {
        rel.set(element_from_json(*src.tcarrier(), e[0], p + "[0]"),
                element_from_json(*tgt.carrier, e[1], p + "[1]"), parse_value(q, e[2], p + "[2]"));
      });
    doc.relations.emplace(name, Document::RelationBlock{src.name, tgt.name, std::move(rel)});
  }
  return doc;
}

} // namespace tvcat
