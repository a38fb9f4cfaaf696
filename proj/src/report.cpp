#include "tvcat/report.hpp"

#include <algorithm>
#include <array>
#include <utility>

namespace tvcat {

void Report::checked(std::string_view law) {
  if (std::find(checked_.begin(), checked_.end(), law) == checked_.end())
    checked_.emplace_back(law);
}

void Report::vacuous(std::string_view law, std::string_view reason) {
  std::string entry(law);
  entry += ": ";
  entry += reason;
  if (std::find(vacuous_.begin(), vacuous_.end(), entry) == vacuous_.end())
    vacuous_.push_back(std::move(entry));
}

void Report::fail(std::string law, std::vector<std::string> witness,
                  std::vector<std::size_t> coords, std::string detail) {
  checked(law);
  auto stored = std::count_if(violations_.begin(), violations_.end(),
                              [&](const Violation& v) { return v.law == law; });
  if (static_cast<std::size_t>(stored) >= max_per_law) {
    ++suppressed_[law];
    return;
  }
  violations_.push_back({std::move(law), std::move(witness), std::move(coords), std::move(detail)});
}

void Report::absorb(const Report& other, std::string_view scope) {
  auto scoped = [&](const std::string& law) {
    if (scope.empty())
      return law;
    return std::string(scope) + "/" + law;
  };
  for (const auto& law : other.checked_)
    checked(scoped(law));
  for (const auto& v : other.vacuous_)
    if (std::find(vacuous_.begin(), vacuous_.end(), scoped(v)) == vacuous_.end())
      vacuous_.push_back(scoped(v));
  for (const auto& v : other.violations_)
    fail(scoped(v.law), v.witness, v.coords, v.detail);
  for (const auto& [law, n] : other.suppressed_)
    suppressed_[scoped(law)] += n;
  for (const auto& n : other.notes_)
    notes_.push_back(scope.empty() ? n : std::string(scope) + ": " + n);
}

std::size_t Report::total_violations() const noexcept {
  std::size_t n = violations_.size();
  for (const auto& [law, k] : suppressed_)
    n += k;
  return n;
}

std::size_t Report::count(std::string_view law) const noexcept {
  std::size_t n = 0;
  for (const auto& v : violations_)
    if (v.law == law)
      ++n;
  if (auto it = suppressed_.find(std::string(law)); it != suppressed_.end())
    n += it->second;
  return n;
}

std::string law_family(std::string_view law) {
  // Scoped names ("induced/cat-mult") are classified by their last segment.
  if (auto slash = law.rfind('/'); slash != std::string_view::npos)
    law = law.substr(slash + 1);

  static constexpr std::array<std::pair<std::string_view, std::string_view>, 17> table{{
      {"lax", "(lax)"},
      {"oplax", "(oplax)"},
      {"mon", "(mon)"},
      {"coh", "(coh)"},
      {"nat", "(nat)"},
      {"cat", "(cat)"},
      {"fun", "(fun)"},
      {"mod", "(mod)"},
      {"kz", "(mod)"},
      {"mod-vs-fun", "Mod-vs-Fun"},
      {"yoneda", "Yoneda"},
      {"transpose", "(transpose-compat)"},
      {"beta-hat", "(beta-hat-iso)"},
      {"xi", "(xi-algebra)"},
      {"monad", "(monad)"},
      {"algebra", "(algebra)"},
      {"adjunction", "(adj)"},
  }};
  // Longest matching prefix wins so "mod-vs-fun" beats "mod".
  std::string_view best;
  std::string_view label;
  for (const auto& [prefix, family] : table) {
    if (law.substr(0, prefix.size()) == prefix && prefix.size() > best.size()) {
      best = prefix;
      label = family;
    }
  }
  if (label.empty())
    return std::string(law);
  return std::string(label);
}

} // namespace tvcat
