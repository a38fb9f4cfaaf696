#include "tvcat/quantale.hpp"

#include "tvcat/errors.hpp"

#include <algorithm>
#include <map>
#include <mutex>

namespace tvcat {

namespace {

std::string pretty_mask(unsigned mask, unsigned bits) {
  std::string out = "{";
  bool first = true;
  for (unsigned b = 0; b < bits; ++b) {
    if (!(mask >> b & 1))
      continue;
    if (!first)
      out += ',';
    first = false;
    out += std::to_string(b);
  }
  return out + "}";
}

long long param(std::span<const long long> params, std::string_view name) {
  if (params.size() != 1)
    throw ConfigError(std::string(name) + " takes exactly one integer parameter");
  return params[0];
}

} // namespace

QuantaleRef Quantale::make_builtin(std::string_view name, std::span<const long long> params) {
  // Builtins are interned: equal names and parameters give the same instance.
  static std::mutex lock;
  static std::map<std::pair<std::string, std::vector<long long>>, QuantaleRef> interned;
  std::pair<std::string, std::vector<long long>> key{std::string(name), {params.begin(), params.end()}};
  std::lock_guard<std::mutex> guard(lock);
  if (auto it = interned.find(key); it != interned.end())
    return it->second;

  Tables t;
  bool bitmask = false;
  if (name == "bool2") {
    if (!params.empty())
      throw ConfigError("bool2 takes no parameters");
    t.name = "bool2";
    t.values = {"0", "1"};
    t.leq = {true, true, false, true};
    t.tensor = {0, 0, 0, 1};
    t.unit = 1;
  } else if (name == "lukasiewicz") {
    const long long n = param(params, name);
    if (n < 2 || n > static_cast<long long>(max_carrier))
      throw ConfigError("lukasiewicz(n) needs 2 <= n <= " + std::to_string(max_carrier));
    t.name = "lukasiewicz(" + std::to_string(n) + ")";
    for (long long a = 0; a < n; ++a) {
      t.values.push_back(std::to_string(a));
      for (long long b = 0; b < n; ++b) {
        t.leq.push_back(a <= b);
        t.tensor.push_back(static_cast<Value>(std::max(0LL, a + b - (n - 1))));
      }
    }
    t.unit = static_cast<Value>(n - 1);
  } else if (name == "cost") {
    const long long cap = param(params, name);
    if (cap < 1 || cap >= static_cast<long long>(max_carrier))
      throw ConfigError("cost(cap) needs 1 <= cap < " + std::to_string(max_carrier));
    t.name = "cost(" + std::to_string(cap) + ")";
    for (long long a = 0; a <= cap; ++a) {
      t.values.push_back(std::to_string(a));
      for (long long b = 0; b <= cap; ++b) {
        t.leq.push_back(a >= b);
        t.tensor.push_back(static_cast<Value>(std::min(cap, a + b)));
      }
    }
    t.unit = 0;
  } else if (name == "powerset") {
    const long long n = param(params, name);
    if (n < 0 || n > 8)
      throw ConfigError("powerset(n) needs 0 <= n <= 8");
    const unsigned size = 1u << n;
    t.name = "powerset(" + std::to_string(n) + ")";
    for (unsigned a = 0; a < size; ++a) {
      t.values.push_back(pretty_mask(a, static_cast<unsigned>(n)));
      for (unsigned b = 0; b < size; ++b) {
        t.leq.push_back((a & b) == a);
        t.tensor.push_back(static_cast<Value>(a & b));
      }
    }
    t.unit = static_cast<Value>(size - 1);
    bitmask = true;
  } else {
    throw ConfigError("unknown quantale '" + std::string(name) + "'");
  }
  auto q = from_tables(std::move(t));
  if (bitmask)
    std::const_pointer_cast<Quantale>(q)->bitmask_names_ = true;
  interned.emplace(std::move(key), q);
  return q;
}

QuantaleRef Quantale::from_tables(Tables t) {
  const std::size_t n = t.values.size();
  if (n == 0)
    throw ConfigError("quantale carrier is empty");
  if (n > max_carrier)
    throw ConfigError("quantale carrier exceeds " + std::to_string(max_carrier) + " values");
  if (t.leq.size() != n * n)
    throw ConfigError("order table must be " + std::to_string(n) + "x" + std::to_string(n));
  if (t.tensor.size() != n * n)
    throw ConfigError("tensor table must be " + std::to_string(n) + "x" + std::to_string(n));
  if (t.unit >= n)
    throw ConfigError("unit outside the carrier");
  for (auto v : t.tensor)
    if (v >= n)
      throw ConfigError("tensor table has a value outside the carrier");

  auto le = [&](std::size_t a, std::size_t b) { return static_cast<bool>(t.leq[a * n + b]); };
  for (std::size_t a = 0; a < n; ++a) {
    if (!le(a, a))
      throw ConfigError("order is not reflexive at '" + t.values[a] + "'");
    for (std::size_t b = 0; b < n; ++b) {
      if (a != b && le(a, b) && le(b, a))
        throw ConfigError("order is not antisymmetric at '" + t.values[a] + "', '" + t.values[b] + "'");
      for (std::size_t c = 0; c < n; ++c)
        if (le(a, b) && le(b, c) && !le(a, c))
          throw ConfigError("order is not transitive at '" + t.values[a] + "', '" + t.values[b] +
                            "', '" + t.values[c] + "'");
    }
  }

  auto q = std::shared_ptr<Quantale>(new Quantale());
  q->join_.assign(n * n, 0);
  q->meet_.assign(n * n, 0);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      std::optional<std::size_t> lub, glb;
      for (std::size_t c = 0; c < n; ++c) {
        if (le(a, c) && le(b, c) && (!lub || le(c, *lub)))
          lub = c;
        if (le(c, a) && le(c, b) && (!glb || le(*glb, c)))
          glb = c;
      }
      if (!lub)
        throw ConfigError("order is not a lattice: '" + t.values[a] + "' and '" + t.values[b] +
                          "' have no upper bound");
      if (!glb)
        throw ConfigError("order is not a lattice: '" + t.values[a] + "' and '" + t.values[b] +
                          "' have no lower bound");
      // The scan keeps the last minimal bound; confirm it is least.
      for (std::size_t c = 0; c < n; ++c) {
        if (le(a, c) && le(b, c) && !le(*lub, c))
          throw ConfigError("order is not a lattice: '" + t.values[a] + "' and '" + t.values[b] +
                            "' have no join");
        if (le(c, a) && le(c, b) && !le(c, *glb))
          throw ConfigError("order is not a lattice: '" + t.values[a] + "' and '" + t.values[b] +
                            "' have no meet");
      }
      q->join_[a * n + b] = static_cast<Value>(*lub);
      q->meet_[a * n + b] = static_cast<Value>(*glb);
    }
  }

  q->name_ = std::move(t.name);
  q->names_ = std::move(t.values);
  q->leq_ = std::move(t.leq);
  q->tensor_ = std::move(t.tensor);
  q->unit_ = t.unit;
  Value bot = 0, top = 0;
  for (std::size_t a = 1; a < n; ++a) {
    bot = q->meet(bot, static_cast<Value>(a));
    top = q->join(top, static_cast<Value>(a));
  }
  q->bottom_ = bot;
  q->top_ = top;
  q->hom_.assign(n * n, bot);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      Value h = bot;
      for (std::size_t c = 0; c < n; ++c)
        if (q->leq(q->tensor(static_cast<Value>(a), static_cast<Value>(c)), static_cast<Value>(b)))
          h = q->join(h, static_cast<Value>(c));
      q->hom_[a * n + b] = h;
    }
  q->carrier_ = FinSet::atoms(q->names_);
  return q;
}

QuantaleRef Quantale::with_tensor(std::vector<Value> tensor, std::string name) const {
  Tables t;
  t.name = std::move(name);
  t.values = names_;
  t.leq = leq_;
  t.tensor = std::move(tensor);
  t.unit = unit_;
  auto q = from_tables(std::move(t));
  std::const_pointer_cast<Quantale>(q)->bitmask_names_ = bitmask_names_;
  return q;
}

std::optional<Value> Quantale::find(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == name)
      return static_cast<Value>(i);
  // Powerset values may also be written as their bitmask.
  if (bitmask_names_ && !name.empty() &&
      std::all_of(name.begin(), name.end(), [](char c) { return c >= '0' && c <= '9'; }) &&
      name.size() < 6) {
    const auto idx = std::stoul(std::string(name));
    if (idx < size())
      return static_cast<Value>(idx);
  }
  return std::nullopt;
}

Value Quantale::join_all(std::span<const Value> vs) const noexcept {
  Value acc = bottom_;
  for (auto v : vs)
    acc = join(acc, v);
  return acc;
}

Value Quantale::meet_all(std::span<const Value> vs) const noexcept {
  Value acc = top_;
  for (auto v : vs)
    acc = meet(acc, v);
  return acc;
}

Report check_quantale_laws(const Quantale& q) {
  Report rep("quantale " + q.name());
  const auto n = static_cast<Value>(q.size());
  auto nm = [&](Value v) { return q.value_name(v); };

  for (auto law : {"associativity", "commutativity", "unit law", "join-distributivity",
                   "bottom-absorbing", "residuation"})
    rep.checked(law);

  for (Value a = 0; a < n; ++a) {
    if (q.tensor(q.unit(), a) != a || q.tensor(a, q.unit()) != a)
      rep.fail("unit law", {nm(a)}, {a}, "k*a != a");
    if (q.tensor(a, q.bottom()) != q.bottom())
      rep.fail("bottom-absorbing", {nm(a)}, {a}, "a*bottom != bottom");
    // Empty join.
    if (q.tensor(a, q.join_all({})) != q.bottom())
      rep.fail("join-distributivity", {nm(a)}, {a}, "a*join() != join()");
    for (Value b = 0; b < n; ++b) {
      if (q.tensor(a, b) != q.tensor(b, a))
        rep.fail("commutativity", {nm(a), nm(b)}, {a, b});
      for (Value c = 0; c < n; ++c) {
        if (q.tensor(q.tensor(a, b), c) != q.tensor(a, q.tensor(b, c)))
          rep.fail("associativity", {nm(a), nm(b), nm(c)}, {a, b, c});
        if (q.tensor(a, q.join(b, c)) != q.join(q.tensor(a, b), q.tensor(a, c)))
          rep.fail("join-distributivity", {nm(a), nm(b), nm(c)}, {a, b, c}, "a*(b v c)");
        const bool lhs = q.leq(q.tensor(a, c), b);
        const bool rhs = q.leq(c, q.hom(a, b));
        if (lhs != rhs)
          rep.fail("residuation", {nm(a), nm(b), nm(c)}, {a, b, c}, "a*c <= b iff c <= hom(a,b)");
      }
    }
  }
  // Ternary joins are implied by the binary case; scan them anyway when cheap.
  if (n <= 16) {
    for (Value a = 0; a < n; ++a)
      for (Value b = 0; b < n; ++b)
        for (Value c = b; c < n; ++c)
          for (Value d = c; d < n; ++d) {
            const Value s[] = {b, c, d};
            const Value img[] = {q.tensor(a, b), q.tensor(a, c), q.tensor(a, d)};
            if (q.tensor(a, q.join_all(s)) != q.join_all(img))
              rep.fail("join-distributivity", {nm(a), nm(b), nm(c), nm(d)}, {a, b, c, d},
                       "a*(b v c v d)");
          }
  }
  return rep;
}

} // namespace tvcat
