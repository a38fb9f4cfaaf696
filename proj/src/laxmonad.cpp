#include "tvcat/laxmonad.hpp"

#include "tvcat/errors.hpp"

#include <map>
#include <mutex>

namespace tvcat {

SetRef LaxMonad::apply(const SetRef& x, int times) const {
  SetRef s = x;
  for (int i = 0; i < times; ++i)
    s = apply(s);
  return s;
}

Map LaxMonad::on_map(const Map& f) const { return on_map(f, apply(f.source), apply(f.target)); }

Map LaxMonad::mult_at(const SetRef& x) const {
  auto tx = apply(x);
  return mult_at(x, tx, apply(tx));
}

VRel LaxMonad::extend(const VRel& r) const {
  auto tx = apply(r.source());
  auto ty = apply(r.target());
  VRel out(r.quantale(), tx, ty);
  for (std::size_t a = 0; a < tx->size(); ++a)
    for (std::size_t b = 0; b < ty->size(); ++b)
      out.set(a, b, extend_entry(r, tx, a, ty, b));
  return out;
}

namespace {

class IdentityMonad final : public LaxMonad {
public:
  std::string name() const override { return "identity"; }
  SetRef apply(const SetRef& x) const override { return x; }
  Map on_map(const Map& f, const SetRef&, const SetRef&) const override { return f; }
  Map unit_at(const SetRef& x, const SetRef&) const override { return Map::identity(x); }
  Map mult_at(const SetRef& x, const SetRef&, const SetRef&) const override { return Map::identity(x); }
  Value extend_entry(const VRel& r, const SetRef&, std::size_t a, const SetRef&,
                     std::size_t b) const override {
    return r.at(a, b);
  }
  VRel extend(const VRel& r) const override { return r; }
  std::optional<Map> xi(const Quantale& q) const override { return Map::identity(q.carrier()); }
};

class PowersetMonad final : public LaxMonad {
public:
  std::string name() const override { return "powerset"; }
  SetRef apply(const SetRef& x) const override { return FinSet::subsets(x); }

  Map on_map(const Map& f, const SetRef& tx, const SetRef& ty) const override {
    std::vector<std::size_t> img(tx->size(), Map::undefined);
    const std::size_t n = f.source->size();
    for (std::size_t a = 0; a < tx->size(); ++a) {
      std::size_t mask = 0;
      bool ok = true;
      for (std::size_t i = 0; i < n && ok; ++i) {
        if (!(a >> i & 1))
          continue;
        if (!f.defined(i))
          ok = false;
        else
          mask |= std::size_t{1} << f(i);
      }
      if (ok)
        img[a] = mask;
    }
    return Map(tx, ty, std::move(img));
  }

  Map unit_at(const SetRef& x, const SetRef& tx) const override {
    std::vector<std::size_t> img(x->size());
    for (std::size_t i = 0; i < img.size(); ++i)
      img[i] = std::size_t{1} << i;
    return Map(x, tx, std::move(img));
  }

  Map mult_at(const SetRef&, const SetRef& tx, const SetRef& ttx) const override {
    std::vector<std::size_t> img(ttx->size());
    const std::size_t n = tx->size();
    for (std::size_t big = 0; big < ttx->size(); ++big) {
      std::size_t mask = 0;
      for (std::size_t i = 0; i < n; ++i)
        if (big >> i & 1)
          mask |= i;
      img[big] = mask;
    }
    return Map(ttx, tx, std::move(img));
  }

  Value extend_entry(const VRel& r, const SetRef&, std::size_t a, const SetRef&,
                     std::size_t b) const override {
    const auto& q = *r.quantale();
    Value forth = q.top();
    for (std::size_t x = 0; x < r.rows(); ++x) {
      if (!(a >> x & 1))
        continue;
      Value best = q.bottom();
      for (std::size_t y = 0; y < r.cols(); ++y)
        if (b >> y & 1)
          best = q.join(best, r.at(x, y));
      forth = q.meet(forth, best);
    }
    Value back = q.top();
    for (std::size_t y = 0; y < r.cols(); ++y) {
      if (!(b >> y & 1))
        continue;
      Value best = q.bottom();
      for (std::size_t x = 0; x < r.rows(); ++x)
        if (a >> x & 1)
          best = q.join(best, r.at(x, y));
      back = q.meet(back, best);
    }
    return q.meet(forth, back);
  }

  // Prefix-sharing over bitmasks: each subset extends the one without its
  // lowest member, so every entry costs O(1) after O(2^n * n) setup.
  VRel extend(const VRel& r) const override {
    const auto& q = *r.quantale();
    auto tx = apply(r.source());
    auto ty = apply(r.target());
    const std::size_t nx = r.rows(), ny = r.cols();
    const std::size_t sx = tx->size(), sy = ty->size();
    auto low = [](std::size_t m) { return static_cast<std::size_t>(__builtin_ctzll(m)); };

    // row_join[x * sy + B] = join_{y in B} r(x,y)
    std::vector<Value> row_join(nx * sy, q.bottom());
    for (std::size_t x = 0; x < nx; ++x)
      for (std::size_t b = 1; b < sy; ++b)
        row_join[x * sy + b] = q.join(row_join[x * sy + (b & (b - 1))], r.at(x, low(b)));
    // col_join[A * ny + y] = join_{x in A} r(x,y)
    std::vector<Value> col_join(sx * ny, q.bottom());
    for (std::size_t a = 1; a < sx; ++a)
      for (std::size_t y = 0; y < ny; ++y)
        col_join[a * ny + y] = q.join(col_join[(a & (a - 1)) * ny + y], r.at(low(a), y));

    VRel out(r.quantale(), tx, ty);
    std::vector<Value> forth(sx);
    std::vector<Value> back(sy);
    for (std::size_t b = 0; b < sy; ++b) {
      forth[0] = q.top();
      for (std::size_t a = 1; a < sx; ++a)
        forth[a] = q.meet(forth[a & (a - 1)], row_join[low(a) * sy + b]);
      for (std::size_t a = 0; a < sx; ++a)
        out.set(a, b, forth[a]);
    }
    for (std::size_t a = 0; a < sx; ++a) {
      back[0] = q.top();
      for (std::size_t b = 1; b < sy; ++b)
        back[b] = q.meet(back[b & (b - 1)], col_join[a * ny + low(b)]);
      for (std::size_t b = 0; b < sy; ++b)
        out.set(a, b, q.meet(out.at(a, b), back[b]));
    }
    return out;
  }

  std::optional<Map> xi(const Quantale& q) const override {
    auto tv = apply(q.carrier());
    std::vector<std::size_t> img(tv->size());
    for (std::size_t s = 0; s < tv->size(); ++s) {
      Value acc = q.top();
      for (std::size_t v = 0; v < q.size(); ++v)
        if (s >> v & 1)
          acc = q.meet(acc, static_cast<Value>(v));
      img[s] = acc;
    }
    return Map(tv, q.carrier(), std::move(img));
  }
};

class ListMonad final : public LaxMonad {
public:
  explicit ListMonad(std::size_t budget) : budget_(budget) {}

  std::string name() const override { return "list(" + std::to_string(budget_) + ")"; }
  std::size_t budget() const noexcept override { return budget_; }
  bool partial_multiplication() const noexcept override { return true; }
  SetRef apply(const SetRef& x) const override { return FinSet::lists(x, budget_); }

  Map on_map(const Map& f, const SetRef& tx, const SetRef& ty) const override {
    std::vector<std::size_t> img(tx->size(), Map::undefined);
    for (std::size_t a = 0; a < tx->size(); ++a) {
      auto xs = tx->items(a);
      bool ok = true;
      for (auto& x : xs) {
        if (!f.defined(x)) {
          ok = false;
          break;
        }
        x = f(x);
      }
      if (ok)
        img[a] = ty->encode(xs);
    }
    return Map(tx, ty, std::move(img));
  }

  Map unit_at(const SetRef& x, const SetRef& tx) const override {
    if (budget_ < 1)
      throw BudgetError("list budget 0 has no singleton lists");
    std::vector<std::size_t> img(x->size());
    for (std::size_t i = 0; i < img.size(); ++i) {
      const std::size_t one[] = {i};
      img[i] = tx->encode(one);
    }
    return Map(x, tx, std::move(img));
  }

  Map mult_at(const SetRef&, const SetRef& tx, const SetRef& ttx) const override {
    std::vector<std::size_t> img(ttx->size(), Map::undefined);
    std::vector<std::size_t> flat;
    for (std::size_t big = 0; big < ttx->size(); ++big) {
      flat.clear();
      for (auto inner : ttx->items(big)) {
        auto xs = tx->items(inner);
        flat.insert(flat.end(), xs.begin(), xs.end());
      }
      img[big] = tx->encode(flat);
    }
    return Map(ttx, tx, std::move(img));
  }

  Value extend_entry(const VRel& r, const SetRef& tx, std::size_t a, const SetRef& ty,
                     std::size_t b) const override {
    const auto& q = *r.quantale();
    if (tx->length(a) != ty->length(b))
      return q.bottom();
    auto xs = tx->items(a);
    auto ys = ty->items(b);
    Value acc = q.unit();
    for (std::size_t i = 0; i < xs.size(); ++i)
      acc = q.tensor(acc, r.at(xs[i], ys[i]));
    return acc;
  }

  VRel extend(const VRel& r) const override {
    const auto& q = *r.quantale();
    auto tx = apply(r.source());
    auto ty = apply(r.target());
    VRel out(r.quantale(), tx, ty);
    std::vector<std::vector<std::size_t>> cols(ty->size());
    for (std::size_t b = 0; b < ty->size(); ++b)
      cols[b] = ty->items(b);
    for (std::size_t a = 0; a < tx->size(); ++a) {
      auto xs = tx->items(a);
      for (std::size_t b = 0; b < ty->size(); ++b) {
        const auto& ys = cols[b];
        if (ys.size() != xs.size())
          continue;
        Value acc = q.unit();
        for (std::size_t i = 0; i < xs.size(); ++i)
          acc = q.tensor(acc, r.at(xs[i], ys[i]));
        out.set(a, b, acc);
      }
    }
    return out;
  }

  std::optional<Map> xi(const Quantale& q) const override {
    auto tv = apply(q.carrier());
    std::vector<std::size_t> img(tv->size());
    for (std::size_t s = 0; s < tv->size(); ++s) {
      Value acc = q.unit();
      for (auto v : tv->items(s))
        acc = q.tensor(acc, static_cast<Value>(v));
      img[s] = acc;
    }
    return Map(tv, q.carrier(), std::move(img));
  }

private:
  std::size_t budget_;
};

class PatchedMonad final : public LaxMonad {
public:
  PatchedMonad(MonadRef base, ExtensionEntry entry, std::string name)
      : base_(std::move(base)), entry_(std::move(entry)), name_(std::move(name)) {}

  std::string name() const override { return name_; }
  std::size_t budget() const noexcept override { return base_->budget(); }
  bool partial_multiplication() const noexcept override { return base_->partial_multiplication(); }
  SetRef apply(const SetRef& x) const override { return base_->apply(x); }
  Map on_map(const Map& f, const SetRef& tx, const SetRef& ty) const override {
    return base_->on_map(f, tx, ty);
  }
  Map unit_at(const SetRef& x, const SetRef& tx) const override { return base_->unit_at(x, tx); }
  Map mult_at(const SetRef& x, const SetRef& tx, const SetRef& ttx) const override {
    return base_->mult_at(x, tx, ttx);
  }
  Value extend_entry(const VRel& r, const SetRef& tx, std::size_t a, const SetRef& ty,
                     std::size_t b) const override {
    return entry_(*base_, r, tx, a, ty, b);
  }
  std::optional<Map> xi(const Quantale& q) const override { return base_->xi(q); }

private:
  MonadRef base_;
  ExtensionEntry entry_;
  std::string name_;
};

} // namespace

MonadRef identity_monad() {
  static const MonadRef id = std::make_shared<IdentityMonad>();
  return id;
}

MonadRef make_builtin_monad(std::string_view name, std::size_t budget) {
  if (name == "identity")
    return identity_monad();
  if (name == "powerset") {
    static const MonadRef powerset = std::make_shared<PowersetMonad>();
    return powerset;
  }
  if (name == "list") {
    if (budget < 1)
      throw ConfigError("list monad needs a budget of at least 1");
    // Interned per budget, like the builtin quantales.
    static std::mutex lock;
    static std::map<std::size_t, MonadRef> lists;
    std::lock_guard<std::mutex> guard(lock);
    auto& slot = lists[budget];
    if (!slot)
      slot = std::make_shared<ListMonad>(budget);
    return slot;
  }
  throw ConfigError("unknown monad '" + std::string(name) + "'");
}

MonadRef with_extension(MonadRef base, ExtensionEntry entry, std::string name) {
  return std::make_shared<PatchedMonad>(std::move(base), std::move(entry), std::move(name));
}

} // namespace tvcat
