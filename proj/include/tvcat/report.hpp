#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace tvcat {

/// One failed instance of a law. `witness` holds printable labels of the
/// offending elements or relations; `coords` the raw element indices in the
/// same order, so a test can replay the witness against the library.
struct Violation {
  std::string law;
  std::vector<std::string> witness;
  std::vector<std::size_t> coords;
  std::string detail;

  friend bool operator==(const Violation&, const Violation&) = default;
};

/// Machine-readable outcome of a law check. Violations are data, not errors.
///
/// Only the first `max_per_law` violations of each law are stored; the rest
/// are counted in `suppressed` so that reports stay small and deterministic.
class Report {
public:
  static constexpr std::size_t max_per_law = 16;

  Report() = default;
  explicit Report(std::string subject) : subject_(std::move(subject)) {}

  const std::string& subject() const noexcept { return subject_; }
  void set_subject(std::string s) { subject_ = std::move(s); }

  bool ok() const noexcept { return violations_.empty(); }

  /// Records that `law` was checked (idempotent, keeps first-seen order).
  void checked(std::string_view law);
  /// Records a law that holds automatically for thin V.
  void vacuous(std::string_view law, std::string_view reason = "vacuous: thin");
  void note(std::string line) { notes_.push_back(std::move(line)); }

  void fail(std::string law, std::vector<std::string> witness,
            std::vector<std::size_t> coords, std::string detail = {});

  /// Appends everything from `other`, prefixing its law names with `scope`.
  void absorb(const Report& other, std::string_view scope = {});

  const std::vector<std::string>& inventory() const noexcept { return checked_; }
  const std::vector<std::string>& vacuous_laws() const noexcept { return vacuous_; }
  const std::vector<Violation>& violations() const noexcept { return violations_; }
  const std::vector<std::string>& notes() const noexcept { return notes_; }
  const std::map<std::string, std::size_t>& suppressed() const noexcept { return suppressed_; }

  std::size_t total_violations() const noexcept;
  std::size_t count(std::string_view law) const noexcept;
  bool has(std::string_view law) const noexcept { return count(law) > 0; }

  friend bool operator==(const Report&, const Report&) = default;

private:
  std::string subject_;
  std::vector<std::string> checked_;
  std::vector<std::string> vacuous_;
  std::vector<Violation> violations_;
  std::map<std::string, std::size_t> suppressed_;
  std::vector<std::string> notes_;
};

/// Printable family label of a law id: "cat-unit" -> "(cat)",
/// "oplax-beta" -> "(oplax)", "yoneda-equality" -> "Yoneda", ...
std::string law_family(std::string_view law);

/// Boolean answer with an optional witness, for the checks whose contract is
/// "true, or false with the first offending tuple".
struct Verdict {
  bool holds = true;
  std::vector<std::string> witness;
  std::vector<std::size_t> coords;

  explicit operator bool() const noexcept { return holds; }

  static Verdict yes() { return {}; }
  static Verdict no(std::vector<std::string> witness, std::vector<std::size_t> coords) {
    return {false, std::move(witness), std::move(coords)};
  }
};

} // namespace tvcat
