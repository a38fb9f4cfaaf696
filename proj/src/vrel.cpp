#include "tvcat/vrel.hpp"

#include "tvcat/errors.hpp"

#include <string>

namespace tvcat {

Map::Map(SetRef src, SetRef tgt, std::vector<std::size_t> img)
    : source(std::move(src)), target(std::move(tgt)), image(std::move(img)) {
  if (image.size() != source->size())
    throw ShapeError("map image has " + std::to_string(image.size()) + " entries for a source of " +
                     std::to_string(source->size()));
  for (auto y : image)
    if (y != undefined && y >= target->size())
      throw ShapeError("map value outside its target");
}

Map Map::identity(const SetRef& x) {
  std::vector<std::size_t> img(x->size());
  for (std::size_t i = 0; i < img.size(); ++i)
    img[i] = i;
  return Map(x, x, std::move(img));
}

Map Map::constant(const SetRef& x, const SetRef& y, std::size_t y0) {
  return Map(x, y, std::vector<std::size_t>(x->size(), y0));
}

bool Map::total() const noexcept {
  for (auto y : image)
    if (y == undefined)
      return false;
  return true;
}

Map Map::then(const Map& g) const {
  if (!same_set(target, g.source))
    throw ShapeError("composing maps with mismatched middle set");
  std::vector<std::size_t> img(image.size(), undefined);
  for (std::size_t i = 0; i < image.size(); ++i)
    if (image[i] != undefined)
      img[i] = g.image[image[i]];
  return Map(source, g.target, std::move(img));
}

VRel::VRel(QuantaleRef q, SetRef source, SetRef target)
    : VRel(q, std::move(source), std::move(target), q->bottom()) {}

VRel::VRel(QuantaleRef q, SetRef source, SetRef target, Value fill)
    : q_(std::move(q)), src_(std::move(source)), tgt_(std::move(target)), rows_(src_->size()),
      cols_(tgt_->size()) {
  if (rows_ != 0 && cols_ > FinSet::max_size * 16 / rows_)
    throw BudgetError("relation of " + std::to_string(rows_) + " x " + std::to_string(cols_) +
                      " entries exceeds the cap");
  data_.assign(rows_ * cols_, fill);
}

VRel compose(const VRel& r, const VRel& s) {
  if (r.quantale() != s.quantale())
    throw ShapeError("composing relations over different quantales");
  if (!same_set(r.target(), s.source()))
    throw ShapeError("composing relations with mismatched middle set");
  const auto& q = *r.quantale();
  VRel out(r.quantale(), r.source(), s.target());
  const Value bot = q.bottom();
  for (std::size_t x = 0; x < r.rows(); ++x)
    for (std::size_t y = 0; y < r.cols(); ++y) {
      const Value rv = r.at(x, y);
      if (rv == bot)
        continue;
      for (std::size_t z = 0; z < s.cols(); ++z)
        out.set(x, z, q.join(out.at(x, z), q.tensor(rv, s.at(y, z))));
    }
  return out;
}

VRel transpose(const VRel& r) {
  VRel out(r.quantale(), r.target(), r.source());
  for (std::size_t x = 0; x < r.rows(); ++x)
    for (std::size_t y = 0; y < r.cols(); ++y)
      out.set(y, x, r.at(x, y));
  return out;
}

VRel graph(const QuantaleRef& q, const Map& f) {
  VRel out(q, f.source, f.target);
  for (std::size_t x = 0; x < f.image.size(); ++x)
    if (f.defined(x))
      out.set(x, f(x), q->unit());
  return out;
}

VRel identity_rel(const QuantaleRef& q, const SetRef& x) { return graph(q, Map::identity(x)); }

void require_same_shape(const VRel& r, const VRel& r2, const char* what) {
  if (r.quantale() != r2.quantale() || !same_set(r.source(), r2.source()) ||
      !same_set(r.target(), r2.target()))
    throw ShapeError(std::string(what) + ": relations differ in shape");
}

Verdict rel_leq(const VRel& r, const VRel& r2) {
  require_same_shape(r, r2, "rel_leq");
  const auto& q = *r.quantale();
  for (std::size_t x = 0; x < r.rows(); ++x)
    for (std::size_t y = 0; y < r.cols(); ++y)
      if (!q.leq(r.at(x, y), r2.at(x, y)))
        return Verdict::no({r.source()->label(x), r.target()->label(y)}, {x, y});
  return Verdict::yes();
}

Verdict rel_eq(const VRel& r, const VRel& r2) {
  require_same_shape(r, r2, "rel_eq");
  for (std::size_t x = 0; x < r.rows(); ++x)
    for (std::size_t y = 0; y < r.cols(); ++y)
      if (r.at(x, y) != r2.at(x, y))
        return Verdict::no({r.source()->label(x), r.target()->label(y)}, {x, y});
  return Verdict::yes();
}

} // namespace tvcat

namespace tvcat {

std::string rel_literal(const VRel& r) {
  const auto& q = *r.quantale();
  std::string out = "[";
  for (std::size_t x = 0; x < r.rows(); ++x) {
    out += x ? ",[" : "[";
    for (std::size_t y = 0; y < r.cols(); ++y) {
      if (y)
        out += ',';
      out += q.value_name(r.at(x, y));
    }
    out += ']';
  }
  return out + "]";
}

VRel rel_from_literal(const QuantaleRef& q, const SetRef& source, const SetRef& target,
                      std::string_view text) {
  VRel out(q, source, target);
  std::size_t x = 0, y = 0;
  int depth = 0;
  std::string token;
  auto flush = [&] {
    if (token.empty())
      return;
    auto v = q->find(token);
    if (!v)
      throw ConfigError("unknown value '" + token + "' in relation literal");
    if (x >= out.rows() || y >= out.cols())
      throw ShapeError("relation literal does not fit its shape");
    out.set(x, y++, *v);
    token.clear();
  };
  // Powerset value names contain commas inside braces.
  bool in_braces = false;
  for (char c : text) {
    if (in_braces || (depth == 2 && c != ',' && c != ']' && c != '[')) {
      token += c;
      if (c == '{')
        in_braces = true;
      else if (c == '}')
        in_braces = false;
      continue;
    }
    if (c == '[') {
      ++depth;
    } else if (c == ']') {
      if (depth == 2) {
        flush();
        ++x;
        y = 0;
      }
      --depth;
    } else if (c == ',' && depth == 2) {
      flush();
    }
  }
  if (x != out.rows())
    throw ShapeError("relation literal does not fit its shape");
  return out;
}

} // namespace tvcat
