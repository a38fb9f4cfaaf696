#include "tvcat/commands.hpp"
#include "tvcat/errors.hpp"

#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

using namespace tvcat;
using nlohmann::json;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

Document corpus(const std::string& name) { return parse_document(slurp(std::string(CORPUS_DIR) + "/" + name)); }

const char* minimal = R"({
  "quantale": {"builtin": "bool2"},
  "monad": {"builtin": "identity"},
  "structures": {"X": {"carrier": ["a"], "entries": [["a", "a", "1"]]}}
})";

std::string error_of(const std::string& text) {
  try {
    parse_document(text);
  } catch (const std::exception& e) {
    return e.what();
  }
  return {};
}

struct Run {
  int exit = -1;
  std::string out;
};

Run invoke(const std::string& args) {
  Run r;
  const std::string cmd = std::string(TVCAT_BINARY) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe);
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0)
    r.out.append(buf, n);
  const int status = pclose(pipe);
  r.exit = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

} // namespace

TEST_CASE("minimal document parses") {
  auto doc = parse_document(minimal);
  CHECK(doc.quantale->name() == "bool2");
  CHECK(doc.monad == identity_monad());
  REQUIRE(doc.structures.count("X"));
  CHECK(doc.structures.at("X").at(0, 0) == 1);
  CHECK(doc.kind_of("X") == Document::Kind::structure);
  CHECK_FALSE(doc.kind_of("Y"));
}

TEST_CASE("document errors name their cause") {
  CHECK_THROWS_AS(corpus("errors/dangling.json"), ConfigError);
  CHECK(error_of(slurp(std::string(CORPUS_DIR) + "/errors/dangling.json")).find("'Y'") != std::string::npos);

  const auto carrier = error_of(slurp(std::string(CORPUS_DIR) + "/errors/carrier.json"));
  CHECK(carrier.find("'7'") != std::string::npos);
  CHECK(carrier.find("relations.r") != std::string::npos);

  CHECK(error_of(slurp(std::string(CORPUS_DIR) + "/errors/unknown_key.json")).find("colour") != std::string::npos);

  try {
    corpus("errors/syntax.json");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 5);
    CHECK(e.column() == 1);
  }

  const auto dup = error_of(R"({"quantale": {"builtin": "bool2"}, "quantale": {"builtin": "bool2"},
                                "monad": {"builtin": "identity"}})");
  CHECK(dup.find("duplicate") != std::string::npos);

  const auto clash = error_of(R"({"quantale": {"builtin": "bool2"}, "monad": {"builtin": "identity"},
    "structures": {"X": {"carrier": ["a"], "entries": [["a", "a", "1"], ["a", "a", "0"]]}}})");
  CHECK_FALSE(clash.empty());
}

TEST_CASE("explicit quantale tables") {
  auto doc = parse_document(R"({
    "quantale": {"name": "three", "carrier": ["0", "h", "1"], "order": [["0", "h"], ["h", "1"]],
                 "tensor": [["0", "0", "0"], ["0", "0", "h"], ["0", "h", "1"]], "unit": "1"},
    "monad": {"builtin": "identity"}
  })");
  CHECK(doc.quantale->size() == 3);
  CHECK(doc.quantale->leq(0, 2)); // transitive closure of the generating pairs
  CHECK(check_quantale_laws(*doc.quantale).ok());
}

TEST_CASE("elements round trip through their JSON form") {
  auto x = FinSet::atoms({"a", "b"});
  for (const auto& set : {FinSet::lists(x, 2), FinSet::subsets(x), FinSet::pairs(x, FinSet::subsets(x))})
    for (std::size_t i = 0; i < set->size(); ++i)
      CHECK(element_from_json(*set, element_to_json(*set, i), "e") == i);
}

TEST_CASE("check on the preorder document is clean") {
  auto doc = corpus("preorder.json");
  auto result = run_command(doc, {"check", {"P"}});
  REQUIRE(result.sections.size() == 1);
  CHECK(result.sections[0].report.violations().empty());
  CHECK(result.ok());
}

TEST_CASE("dual of a preorder is serialized as the opposite order") {
  auto doc = corpus("preorder.json");
  auto result = run_command(doc, {"dual", {"P"}});
  REQUIRE(result.sections.size() == 1);
  const auto& payload = result.sections[0].payload;
  const auto& p = doc.structures.at("P");
  std::size_t count = 0;
  for (const auto& e : payload.at("entries")) {
    const auto x = *p.carrier->find(e[0].get<std::string>());
    const auto y = *p.carrier->find(e[1].get<std::string>());
    CHECK(p.at(y, x) == 1);
    ++count;
  }
  CHECK(count == 6);
}

TEST_CASE("representability on the powerset document") {
  auto doc = corpus("powerset_two.json");
  auto result = run_command(doc, {"represent", {"M", "F"}});
  REQUIRE(result.sections.size() == 2);
  for (const auto& s : result.sections) {
    const auto& payload = s.payload;
    if (payload.at("found").get<bool>()) {
      CHECK(payload.at("roundtrip_ok").get<bool>());
      CHECK(payload.at("structure_map").size() == 4);
    } else {
      CHECK(s.report.notes() == std::vector<std::string>{"none found"});
    }
  }
}

TEST_CASE("text reports") {
  CommandResult empty{"laws", {}, {{"s", Report("nothing"), nullptr}}};
  empty.sections[0].report.checked("cat-unit");
  const auto text = emit_text(empty);
  CHECK(text.find("PASS") != std::string::npos);
  CHECK(text.find("(cat) cat-unit") != std::string::npos);

  Report r("one");
  r.checked("lax");
  r.fail("lax", {"[[1,0],[0,1]]", "[[0,1],[1,0]]"}, {3, 5}, "detail");
  CommandResult bad{"laws", {}, {{"s", r, nullptr}}};
  const auto fail = emit_text(bad);
  CHECK(fail.find("FAIL") != std::string::npos);
  CHECK(fail.find("(lax) lax") != std::string::npos);
  CHECK(fail.find("([[1,0],[0,1]], [[0,1],[1,0]])") != std::string::npos);
}

TEST_CASE("structured reports round trip and are deterministic") {
  Report r("sample");
  r.checked("cat-unit");
  r.vacuous("mon");
  r.note("a note");
  for (std::size_t i = 0; i < Report::max_per_law + 3; ++i)
    r.fail("cat-unit", {"x" + std::to_string(i)}, {i}, "d");
  CHECK(report_from_json(json::parse(report_to_json(r).dump())) == r);

  auto doc = corpus("powerset_two.json");
  const auto first = emit_structured(run_command(doc, {"kz", {"M", "F"}}));
  const auto second = emit_structured(run_command(doc, {"kz", {"M", "F"}}));
  CHECK(first == second);
  auto parsed = json::parse(first);
  CHECK(parsed.at("status") == "pass");
  for (const auto& s : parsed.at("sections"))
    CHECK(report_from_json(s.at("report")).ok());
}

TEST_CASE("violation witnesses replay against the library") {
  auto doc = corpus("violations.json");
  auto result = run_command(doc, {"check", {"N"}});
  REQUIRE(result.sections.size() == 1);
  const auto& n = doc.structures.at("N");
  for (const auto& v : result.sections[0].report.violations()) {
    REQUIRE(v.law == "cat-mult");
    REQUIRE(v.coords.size() == 3);
    // (x, y, z) with x <= y <= z but not x <= z.
    CHECK(n.at(v.coords[0], v.coords[1]) == 1);
    CHECK(n.at(v.coords[1], v.coords[2]) == 1);
    CHECK(n.at(v.coords[0], v.coords[2]) == 0);
  }

  auto functor = run_command(doc, {"check", {"flip"}});
  const auto& fv = functor.sections[0].report.violations().at(0);
  const auto& q = doc.structures.at("Q");
  const auto& flip = doc.maps.at("flip").map;
  CHECK(q.at(fv.coords[0], fv.coords[1]) > q.at(flip(fv.coords[0]), flip(fv.coords[1])));
}

TEST_CASE("unknown commands and targets") {
  auto doc = parse_document(minimal);
  CHECK_THROWS_AS(run_command(doc, {"frobnicate", {}}), ConfigError);
  CHECK_THROWS_AS(run_command(doc, {"check", {"Nope"}}), ConfigError);
  CHECK_THROWS_AS(run_command(doc, {"kz", {}}), ConfigError);
}

TEST_CASE("binary exit codes") {
  const std::string dir = CORPUS_DIR;
  CHECK(invoke("check --doc " + dir + "/preorder.json").exit == 0);
  CHECK(invoke("check --doc " + dir + "/violations.json").exit == 1);
  CHECK(invoke("check --doc " + dir + "/errors/syntax.json").exit == 2);
  CHECK(invoke("frobnicate --doc " + dir + "/preorder.json").exit == 2);
  CHECK(invoke("check --doc " + dir + "/missing.json").exit == 2);
  CHECK(invoke("check --doc " + dir + "/errors/budget.json").exit == 3);

  auto err = invoke("check --format structured --doc " + dir + "/errors/dangling.json");
  CHECK(err.exit == 2);
  auto j = json::parse(err.out);
  CHECK(j.at("status") == "error");
  CHECK(j.at("exit") == 2);

  // The budget flag overrides the document.
  CHECK(invoke("check --budget 1 --doc " + dir + "/errors/budget.json").exit == 0);
}
