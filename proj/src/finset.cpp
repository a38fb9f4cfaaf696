#include "tvcat/finset.hpp"

#include "tvcat/errors.hpp"

#include <algorithm>

namespace tvcat {

namespace {

std::size_t checked_mul(std::size_t a, std::size_t b) {
  if (a != 0 && b > FinSet::max_size / a)
    throw BudgetError("finite set exceeds " + std::to_string(FinSet::max_size) + " elements");
  return a * b;
}

std::size_t checked_add(std::size_t a, std::size_t b) {
  if (a + b > FinSet::max_size)
    throw BudgetError("finite set exceeds " + std::to_string(FinSet::max_size) + " elements");
  return a + b;
}

} // namespace

SetRef FinSet::atoms(std::vector<std::string> names) {
  if (names.size() > max_size)
    throw BudgetError("finite set exceeds " + std::to_string(max_size) + " elements");
  std::vector<std::string> sorted = names;
  std::sort(sorted.begin(), sorted.end());
  if (auto dup = std::adjacent_find(sorted.begin(), sorted.end()); dup != sorted.end())
    throw ConfigError("duplicate element '" + *dup + "'");
  auto s = std::shared_ptr<FinSet>(new FinSet());
  s->kind_ = Kind::atoms;
  s->size_ = names.size();
  s->names_ = std::move(names);
  return s;
}

SetRef FinSet::range(std::size_t n) {
  std::vector<std::string> names;
  names.reserve(n);
  for (std::size_t i = 0; i < n; ++i)
    names.push_back(std::to_string(i));
  return atoms(std::move(names));
}

SetRef FinSet::lists(SetRef base, std::size_t max_length) {
  auto s = std::shared_ptr<FinSet>(new FinSet());
  s->kind_ = Kind::lists;
  s->max_length_ = max_length;
  const std::size_t n = base->size();
  std::size_t power = 1;
  std::size_t total = 0;
  for (std::size_t k = 0; k <= max_length; ++k) {
    s->offsets_.push_back(total);
    total = checked_add(total, power);
    if (k < max_length)
      power = checked_mul(power, n);
  }
  s->offsets_.push_back(total);
  s->size_ = total;
  s->base_ = std::move(base);
  return s;
}

SetRef FinSet::subsets(SetRef base) {
  if (base->size() > max_subset_base)
    throw BudgetError("powerset of a " + std::to_string(base->size()) +
                      "-element set exceeds the cap");
  auto s = std::shared_ptr<FinSet>(new FinSet());
  s->kind_ = Kind::subsets;
  s->size_ = std::size_t{1} << base->size();
  s->base_ = std::move(base);
  return s;
}

SetRef FinSet::pairs(SetRef left, SetRef right) {
  auto s = std::shared_ptr<FinSet>(new FinSet());
  s->kind_ = Kind::pairs;
  s->size_ = checked_mul(left->size(), right->size());
  s->base_ = std::move(left);
  s->right_ = std::move(right);
  return s;
}

std::size_t FinSet::length(std::size_t i) const {
  switch (kind_) {
  case Kind::lists: {
    auto it = std::upper_bound(offsets_.begin(), offsets_.end(), i);
    return static_cast<std::size_t>(it - offsets_.begin()) - 1;
  }
  case Kind::subsets: {
    std::size_t n = 0;
    for (std::size_t m = i; m; m &= m - 1)
      ++n;
    return n;
  }
  default:
    throw ShapeError("length() on a set that is neither lists nor subsets");
  }
}

std::vector<std::size_t> FinSet::items(std::size_t i) const {
  std::vector<std::size_t> out;
  switch (kind_) {
  case Kind::lists: {
    const std::size_t k = length(i);
    const std::size_t n = base_->size();
    std::size_t rest = i - offsets_[k];
    out.assign(k, 0);
    for (std::size_t j = k; j-- > 0;) {
      out[j] = rest % n;
      rest /= n;
    }
    return out;
  }
  case Kind::subsets:
    for (std::size_t b = 0; b < base_->size(); ++b)
      if (i >> b & 1)
        out.push_back(b);
    return out;
  default:
    throw ShapeError("items() on a set that is neither lists nor subsets");
  }
}

std::size_t FinSet::encode(std::span<const std::size_t> items) const {
  switch (kind_) {
  case Kind::lists: {
    if (items.size() > max_length_)
      return npos;
    const std::size_t n = base_->size();
    std::size_t idx = 0;
    for (auto x : items)
      idx = idx * n + x;
    return offsets_[items.size()] + idx;
  }
  case Kind::subsets: {
    std::size_t mask = 0;
    for (auto x : items)
      mask |= std::size_t{1} << x;
    return mask;
  }
  default:
    throw ShapeError("encode() on a set that is neither lists nor subsets");
  }
}

std::string FinSet::label(std::size_t i) const {
  switch (kind_) {
  case Kind::atoms:
    return names_.at(i);
  case Kind::pairs:
    return "(" + base_->label(first(i)) + "," + right_->label(second(i)) + ")";
  case Kind::lists:
  case Kind::subsets: {
    const bool list = kind_ == Kind::lists;
    std::string out(1, list ? '[' : '{');
    bool firstItem = true;
    for (auto x : items(i)) {
      if (!firstItem)
        out += ',';
      firstItem = false;
      out += base_->label(x);
    }
    out += list ? ']' : '}';
    return out;
  }
  }
  return {};
}

std::optional<std::size_t> FinSet::find(std::string_view label) const {
  if (kind_ == Kind::atoms) {
    for (std::size_t i = 0; i < names_.size(); ++i)
      if (names_[i] == label)
        return i;
    return std::nullopt;
  }
  for (std::size_t i = 0; i < size_; ++i)
    if (this->label(i) == label)
      return i;
  return std::nullopt;
}

std::vector<std::string> FinSet::labels() const {
  std::vector<std::string> out;
  out.reserve(size_);
  for (std::size_t i = 0; i < size_; ++i)
    out.push_back(label(i));
  return out;
}

bool FinSet::same_as(const FinSet& other) const noexcept {
  if (this == &other)
    return true;
  if (kind_ != other.kind_ || size_ != other.size_)
    return false;
  switch (kind_) {
  case Kind::atoms:
    return names_ == other.names_;
  case Kind::lists:
    return max_length_ == other.max_length_ && same_set(base_, other.base_);
  case Kind::subsets:
    return same_set(base_, other.base_);
  case Kind::pairs:
    return same_set(base_, other.base_) && same_set(right_, other.right_);
  }
  return false;
}

} // namespace tvcat
