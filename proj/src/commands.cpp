#include "tvcat/commands.hpp"

#include "tvcat/errors.hpp"

#include <functional>
#include <sstream>

namespace tvcat {

using nlohmann::json;

namespace {

json map_to_json(const Map& f) {
  json pairs = json::array();
  for (std::size_t i = 0; i < f.image.size(); ++i)
    if (f.defined(i))
      pairs.push_back(json::array({element_to_json(*f.source, i), element_to_json(*f.target, f(i))}));
  return pairs;
}

json relation_to_json(const TVRel& r) {
  const auto& q = *r.rel.quantale();
  json entries = json::array();
  for (std::size_t t = 0; t < r.rel.rows(); ++t)
    for (std::size_t y = 0; y < r.rel.cols(); ++y)
      if (r.rel.at(t, y) != q.bottom())
        entries.push_back(json::array({element_to_json(*r.rel.source(), t),
                                       element_to_json(*r.rel.target(), y), q.value_name(r.rel.at(t, y))}));
  return json{{"source", r.source.name}, {"target", r.target.name}, {"entries", std::move(entries)}};
}

json algebra_to_json(const TAlgebra& alg) {
  return json{{"base", structure_to_json(alg.base)}, {"action", map_to_json(alg.action)}};
}

// "(cat) cat-mult"; laws outside the labelled families print bare.
std::string labelled(const std::string& law) {
  const std::string family = law_family(law);
  return family == law ? law : family + ' ' + law;
}

std::vector<SetRef> law_samples(const LaxMonad& m, std::size_t largest, Report& note_to) {
  std::vector<SetRef> out;
  for (std::size_t n = 1; n <= largest; ++n) {
    std::vector<std::string> names;
    for (std::size_t i = 0; i < n; ++i)
      names.push_back("x" + std::to_string(i));
    auto x = FinSet::atoms(std::move(names));
    try {
      (void)m.apply(x, 3);
    } catch (const BudgetError&) {
      note_to.note("sample of size " + std::to_string(n) + " skipped: third iterate exceeds the cap");
      break;
    }
    out.push_back(std::move(x));
  }
  if (out.empty())
    throw BudgetError("monad " + m.name() + ": no sample carrier fits the budget");
  return out;
}

struct Runner {
  const Document& doc;
  const CommandOptions& opts;
  CommandResult result;

  void add(std::string title, Report rep, json payload = nullptr) {
    result.sections.push_back({std::move(title), std::move(rep), std::move(payload)});
  }

  const TVStructure& structure(const std::string& name) const {
    auto it = doc.structures.find(name);
    if (it == doc.structures.end())
      throw ConfigError("'" + name + "' is not a structure");
    return it->second;
  }

  // Runs `body`; precondition failures become a failed section.
  void guarded(const std::string& title, const std::function<void()>& body) {
    try {
      body();
    } catch (const PreconditionError& e) {
      Report rep(title);
      rep.fail("precondition", {}, {}, e.what());
      add(title, std::move(rep));
    }
  }

  std::vector<std::string> targets_or(std::vector<std::string> fallback) const {
    if (!opts.targets.empty())
      return opts.targets;
    if (fallback.empty())
      throw ConfigError("command '" + opts.command + "' needs at least one --target");
    return fallback;
  }

  std::vector<std::string> all_structures() const {
    std::vector<std::string> out;
    for (const auto& [name, _] : doc.structures)
      out.push_back(name);
    return out;
  }

  void laws() {
    add("quantale " + doc.quantale->name(), check_quantale_laws(*doc.quantale));
    Report notes;
    auto samples = law_samples(*doc.monad, doc.monad == identity_monad() ? 3 : 2, notes);
    LawOptions lo;
    lo.seed = opts.seed;
    Report rep = check_extension_laws(*doc.monad, doc.quantale, samples, lo);
    for (const auto& n : notes.notes())
      rep.note(n);
    add("extension " + doc.monad->name(), std::move(rep));
  }

  void check() {
    std::vector<std::string> fallback = all_structures();
    for (const auto& [name, _] : doc.maps)
      fallback.push_back(name);
    for (const auto& [name, _] : doc.algebras)
      fallback.push_back(name);
    for (const auto& name : targets_or(fallback)) {
      auto kind = doc.kind_of(name);
      if (!kind)
        throw ConfigError("unknown target '" + name + "'");
      switch (*kind) {
      case Document::Kind::structure:
        add("check " + name, check_category(structure(name)));
        break;
      case Document::Kind::map: {
        const auto& m = doc.maps.at(name);
        Report rep("functor " + name);
        record_functor(rep, "fun", structure(m.source), structure(m.target), m.map);
        add("check " + name, std::move(rep));
        break;
      }
      case Document::Kind::algebra:
        add("check " + name, check_algebra(doc.algebras.at(name).algebra));
        break;
      case Document::Kind::relation:
        throw ConfigError("'" + name + "' is a relation; use the module command");
      }
    }
  }

  void free() {
    for (const auto& name : targets_or({})) {
      guarded("free " + name, [&] {
        const auto& s = structure(name);
        if (s.is_vcat()) {
          auto out = free_tvcat(s, doc.monad);
          add("free " + name, std::move(out.report), structure_to_json(out.value));
        } else {
          auto out = free_algebra(s);
          add("free " + name, std::move(out.report), algebra_to_json(out.value));
        }
      });
    }
  }

  void underlying() {
    for (const auto& name : targets_or({})) {
      guarded("underlying " + name, [&] {
        if (auto it = doc.algebras.find(name); it != doc.algebras.end()) {
          auto out = algebra_to_tvcat(it->second.algebra);
          add("underlying " + name, std::move(out.report), structure_to_json(out.value));
        } else {
          auto out = underlying_vcat(structure(name));
          add("underlying " + name, std::move(out.report), structure_to_json(out.value));
        }
      });
    }
  }

  void induced() {
    for (const auto& name : targets_or({})) {
      guarded("induced " + name, [&] {
        auto out = induced_structure(structure(name));
        add("induced " + name, std::move(out.report), structure_to_json(out.value));
      });
    }
  }

  void kz() {
    for (const auto& name : targets_or({}))
      guarded("kz " + name, [&] { add("kz " + name, check_kz(structure(name))); });
  }

  void represent() {
    for (const auto& name : targets_or({})) {
      guarded("represent " + name, [&] {
        const auto& s = structure(name);
        Report rep("representability of " + name);
        rep.checked("rep-roundtrip");
        auto cert = find_representation(s);
        if (!cert) {
          rep.note("none found");
          add("represent " + name, std::move(rep), json{{"found", false}});
          return;
        }
        if (!cert->roundtrip_ok)
          rep.fail("rep-roundtrip", {}, {}, "a(e f x', x) != a(x', x) for the structure map");
        if (!cert->unique_up_to_iso)
          rep.note("qualifying maps are not all isomorphic");
        json payload{{"found", true},
                     {"structure_map", map_to_json(cert->structure_map)},
                     {"functor_ok", cert->functor_ok},
                     {"adjunction_ok", cert->adjunction_ok},
                     {"roundtrip_ok", cert->roundtrip_ok},
                     {"qualifying", cert->qualifying.size()},
                     {"unique_up_to_iso", cert->unique_up_to_iso}};
        add("represent " + name, std::move(rep), std::move(payload));
      });
    }
  }

  void dual() {
    for (const auto& name : targets_or({})) {
      guarded("dual " + name, [&] {
        if (auto it = doc.algebras.find(name); it != doc.algebras.end()) {
          auto out = dual_algebra(it->second.algebra);
          add("dual " + name, std::move(out.report), algebra_to_json(out.value));
          return;
        }
        const auto& s = structure(name);
        auto out = dual_tvcat(s);
        add("dual " + name, std::move(out.report), structure_to_json(out.value));
        if (s.is_vcat())
          return;
        auto cert = find_representation(s);
        if (!cert) {
          Report rep("representable dual of " + name);
          rep.note("not representable; no dual on the same carrier");
          add("representable dual " + name, std::move(rep));
          return;
        }
        auto rop = dual_representable(s, *cert);
        add("representable dual " + name, std::move(rop.report), structure_to_json(rop.value));
      });
    }
  }

  void compose_relations() {
    const auto targets = targets_or({});
    if (targets.size() < 2)
      throw ConfigError("compose needs two or more relation targets, first to last");
    for (const auto& name : targets)
      if (!doc.relations.count(name))
        throw ConfigError("'" + name + "' is not a relation");
    TVRel acc = doc.tvrel(targets[0]);
    std::string title = targets[0];
    for (std::size_t i = 1; i < targets.size(); ++i) {
      acc = kleisli_compose(acc, doc.tvrel(targets[i]));
      title = targets[i] + " o " + title;
    }
    add("compose " + title, Report("Kleisli composite " + title), relation_to_json(acc));
  }

  void module() {
    for (const auto& name : targets_or({})) {
      if (!doc.relations.count(name))
        throw ConfigError("'" + name + "' is not a relation");
      guarded("module " + name, [&] {
        const TVRel r = doc.tvrel(name);
        auto cmp = module_functor_equiv(r);
        Report rep("module " + name);
        rep.checked("module");
        if (!cmp.module)
          rep.fail("module", cmp.module.witness, cmp.module.coords, "not invariant under convolution");
        add("module " + name, std::move(rep), json{{"module", cmp.module.holds}});
        add("Mod-vs-Fun " + name, std::move(cmp.report),
            json{{"module", cmp.module.holds}, {"functor", cmp.functor.holds}});
      });
    }
  }

  void yoneda() {
    for (const auto& name : targets_or({})) {
      guarded("yoneda " + name, [&] {
        const auto& s = structure(name);
        auto space = presheaf_space(s);
        json presheaves = json::array();
        for (std::size_t i = 0; i < space.presheaves.size(); ++i)
          presheaves.push_back(space.space.carrier->label(i));
        json payload{{"presheaves", std::move(presheaves)}, {"space", structure_to_json(space.space)}};
        add("yoneda " + name, yoneda_check(s, space), std::move(payload));
      });
    }
  }
};

} // namespace

bool CommandResult::ok() const noexcept {
  for (const auto& s : sections)
    if (!s.report.ok())
      return false;
  return true;
}

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names{"laws", "check",     "free", "underlying", "induced", "kz",
                                              "represent", "dual", "compose", "module", "yoneda"};
  return names;
}

CommandResult run_command(const Document& doc, const CommandOptions& opts) {
  Runner run{doc, opts, {}};
  run.result.command = opts.command;
  run.result.targets = opts.targets;
  for (const auto& t : opts.targets)
    if (!doc.kind_of(t))
      throw ConfigError("unknown target '" + t + "'");

  const std::string& c = opts.command;
  if (c == "laws")
    run.laws();
  else if (c == "check")
    run.check();
  else if (c == "free")
    run.free();
  else if (c == "underlying")
    run.underlying();
  else if (c == "induced")
    run.induced();
  else if (c == "kz")
    run.kz();
  else if (c == "represent")
    run.represent();
  else if (c == "dual")
    run.dual();
  else if (c == "compose")
    run.compose_relations();
  else if (c == "module")
    run.module();
  else if (c == "yoneda")
    run.yoneda();
  else
    throw ConfigError("unknown command '" + c + "'");
  return std::move(run.result);
}

json report_to_json(const Report& r) {
  json violations = json::array();
  for (const auto& v : r.violations())
    violations.push_back(json{{"law", v.law},
                              {"label", law_family(v.law)},
                              {"witness", v.witness},
                              {"coords", v.coords},
                              {"detail", v.detail}});
  return json{{"subject", r.subject()},          {"ok", r.ok()},
              {"checked", r.inventory()},        {"vacuous", r.vacuous_laws()},
              {"violations", std::move(violations)}, {"suppressed", r.suppressed()},
              {"notes", r.notes()}};
}

Report report_from_json(const json& j) {
  Report r(j.at("subject").get<std::string>());
  for (const auto& law : j.at("checked"))
    r.checked(law.get<std::string>());
  for (const auto& v : j.at("vacuous")) {
    // Stored as "law: reason".
    const auto s = v.get<std::string>();
    const auto colon = s.find(": ");
    r.vacuous(s.substr(0, colon), colon == std::string::npos ? "" : s.substr(colon + 2));
  }
  for (const auto& v : j.at("violations"))
    r.fail(v.at("law").get<std::string>(), v.at("witness").get<std::vector<std::string>>(),
           v.at("coords").get<std::vector<std::size_t>>(), v.at("detail").get<std::string>());
  for (const auto& [law, n] : j.at("suppressed").items())
    for (std::size_t k = 0; k < n.get<std::size_t>(); ++k)
      r.fail(law, {}, {}, {});
  for (const auto& n : j.at("notes"))
    r.note(n.get<std::string>());
  return r;
}

std::string emit_structured(const CommandResult& result) {
  json sections = json::array();
  for (const auto& s : result.sections)
    sections.push_back(json{{"title", s.title}, {"report", report_to_json(s.report)}, {"payload", s.payload}});
  json out{{"command", result.command},
           {"targets", result.targets},
           {"status", result.ok() ? "pass" : "violations"},
           {"sections", std::move(sections)}};
  return out.dump(2) + "\n";
}

std::string emit_error(const std::string& command, const std::string& message, int exit_code) {
  json out{{"command", command}, {"status", "error"}, {"error", message}, {"exit", exit_code}};
  return out.dump(2) + "\n";
}

std::string emit_text(const CommandResult& result) {
  std::ostringstream os;
  os << "tvcat " << result.command;
  for (const auto& t : result.targets)
    os << ' ' << t;
  os << '\n' << (result.ok() ? "PASS" : "FAIL") << "\n";
  for (const auto& s : result.sections) {
    const Report& r = s.report;
    os << "\n[" << s.title << "] " << r.subject() << '\n';
    if (r.ok())
      os << "  PASS\n";
    else
      os << "  FAIL: " << r.total_violations() << " violation(s)\n";
    if (!r.inventory().empty()) {
      os << "  laws:";
      for (std::size_t i = 0; i < r.inventory().size(); ++i)
        os << (i ? ", " : " ") << labelled(r.inventory()[i]);
      os << '\n';
    }
    for (const auto& v : r.vacuous_laws())
      os << "  vacuous: " << v << '\n';
    for (const auto& v : r.violations()) {
      os << "  violation " << labelled(v.law) << " at (";
      for (std::size_t i = 0; i < v.witness.size(); ++i)
        os << (i ? ", " : "") << v.witness[i];
      os << ')';
      if (!v.detail.empty())
        os << ": " << v.detail;
      os << '\n';
    }
    for (const auto& [law, n] : r.suppressed())
      os << "  ... " << n << " more " << law << " violation(s)\n";
    for (const auto& n : r.notes())
      os << "  note: " << n << '\n';
    if (!s.payload.is_null())
      os << "  result: " << s.payload.dump() << '\n';
  }
  return os.str();
}

} // namespace tvcat
