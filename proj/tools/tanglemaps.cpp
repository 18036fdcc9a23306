#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "tangle/crosscheck.hpp"
#include "tangle/quiverlab.hpp"

using namespace tangle;

namespace {

constexpr int kOk = 0, kCheckFailed = 1, kUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Framework parse_framework(const std::string& s) {
  if (s == "rt") return Framework::rt;
  if (s == "viro") return Framework::viro;
  if (s == "osz") return Framework::osz;
  throw UsageError("unknown framework " + s);
}

Side parse_side(const std::string& s) {
  if (s == "right") return Side::right;
  if (s == "left") return Side::left;
  throw UsageError("unknown truncation " + s);
}

Grading parse_grading(const std::string& s) {
  if (s == "single") return Grading::single;
  if (s == "multi") return Grading::multi;
  throw UsageError("unknown grading " + s);
}

// `basis` may be empty (framework default) or native|dual|modified-right|modified-left.
PipelineOptions make_options(const std::string& fw, const std::string& basis, const std::string& trunc,
                             const std::string& grading) {
  PipelineOptions o;
  o.framework = parse_framework(fw);
  o.grading = parse_grading(grading);
  o.side = parse_side(trunc);
  if (basis.empty()) {
    o.basis = o.framework == Framework::osz ? BasisKind::modified
              : o.framework == Framework::viro ? BasisKind::dual
                                               : BasisKind::native;
  } else if (basis == "native") {
    o.basis = BasisKind::native;
  } else if (basis == "dual") {
    o.basis = BasisKind::dual;
  } else if (basis == "modified-right" || basis == "modified-left") {
    o.basis = BasisKind::modified;
    o.side = basis == "modified-right" ? Side::right : Side::left;
  } else {
    throw UsageError("unknown basis " + basis);
  }
  if (o.framework == Framework::osz && o.basis != BasisKind::modified)
    throw UsageError("the osz framework works over idempotent bases; use --basis modified-right|modified-left");
  if (o.framework == Framework::rt && o.basis == BasisKind::dual) throw UsageError("the rt framework has no dual basis");
  if (o.framework == Framework::rt && o.grading == Grading::multi) throw UsageError("the rt framework is singly graded");
  return o;
}

std::string region_bits(std::uint64_t x, int n) {
  std::string s;
  for (int j = 0; j <= n; ++j) s += ((x >> j) & 1u) ? '1' : '0';
  return s;
}

int run_eval(const std::string& file, const PipelineOptions& o) {
  TangleDiagram d = parse_diagram(read_file(file));
  if (!d.closed && d.has_terminal()) throw UsageError("an open tangle cannot end in term");
  GradedMatrix m = compose_diagram(d, o);
  nlohmann::json j = m.to_json();
  j["framework"] = to_string(o.framework);
  j["grading"] = to_string(o.grading);
  std::cout << j.dump(2) << "\n";
  return kOk;
}

int run_verify(const std::string& suite, int max_n) {
  if (max_n < 2 || max_n > 8) throw UsageError("--max-n must lie in [2, 8]");
  static const std::vector<std::string> suites = {"crossings", "extrema", "relations", "derivation", "states", "all"};
  if (std::find(suites.begin(), suites.end(), suite) == suites.end()) throw UsageError("unknown suite " + suite);
  bool all_pass = true;
  auto report = [&](const std::string& name, const Report& r) {
    std::cout << (r.pass() ? "PASS " : "FAIL ") << name << ": " << r.summary() << "\n";
    for (const auto& d : r.details) std::cout << "  " << d << "\n";
    all_pass = all_pass && r.pass();
  };
  const bool all = suite == "all";
  if (all || suite == "crossings") {
    report("crossings", sweep_crossings(max_n));
    report("dictionary", check_dictionary_uniqueness(std::min(max_n, 3)));
  }
  if (all || suite == "extrema") report("extrema", sweep_extrema(max_n));
  if (all || suite == "derivation") report("derivation", sweep_modified_derivation(max_n));
  if (all || suite == "states") report("states", sweep_state_sums(max_n));
  if (all || suite == "relations")
    for (auto fw : {Framework::rt, Framework::viro, Framework::osz})
      report(std::string("relations ") + to_string(fw), check_relations(fw, max_n));
  return all_pass ? kOk : kCheckFailed;
}

int run_states(const std::string& file, Side trunc, Grading g) {
  TangleDiagram d = parse_diagram(read_file(file));
  for (std::size_t k = 0; k < d.events.size(); ++k) {
    const Event& e = d.events[k];
    if (!is_crossing(e.kind)) continue;
    Slice s = d.slice(k);
    std::cout << "# event " << k + 1 << ": " << e.str() << " pattern " << to_string(e.cross) << "\n";
    auto states = enumerate_crossing_states(s.below.n, e.index, s.below, e.sign(), trunc, g);
    std::optional<VarMap> vm;
    if (g == Grading::multi) vm = osz_local_vars(e, osz_crossing_ctx(), diagram_layout(d, k, d.component_context()));
    for (const auto& st : states) {
      QL a = vm ? (*vm)(st.alex) : st.alex;
      std::cout << "x=" << region_bits(st.x, s.below.n) << " y=" << region_bits(st.y, s.above.n)
                << " corner=" << to_string(st.corner) << " maslov=" << st.maslov << " alex=" << a.pretty() << "\n";
    }
  }
  return kOk;
}

int run_alexander(const std::string& file, const PipelineOptions& o, bool oracle) {
  TangleDiagram d = parse_diagram(read_file(file));
  if (!d.closed || !d.has_terminal()) throw UsageError("alexander needs a closed diagram ending in term");
  GradedMatrix m = compose_diagram(d, o);
  QL raw = m.at(0, 0);
  QL delta = normalize_alexander(raw);
  std::cout << "raw: " << raw.pretty() << "\n";
  std::cout << "alexander: " << delta.pretty() << "\n";
  if (!oracle) return kOk;
  OracleResult r = oracle_state_sum(d);
  const bool agree = normalize_alexander(r.value) == delta;
  std::cout << "oracle: " << r.value.pretty() << " (" << r.states << " states)\n";
  std::cout << "oracle agrees: " << (agree ? "yes" : "no") << "\n";
  return agree ? kOk : kCheckFailed;
}

int run_quiverlab(std::int64_t cutoff) {
  using namespace tangle::quiver;
  if (cutoff < kMinCutoff) throw UsageError("cutoff must be at least " + std::to_string(kMinCutoff) + " quarter units");
  std::map<std::string, std::size_t> counts;
  for (const auto& m : quiver_basis(cutoff)) ++counts[family_of(m).value_or("other")];
  std::cout << "basis (|intrinsic| <= " << cutoff << " quarter units)\n";
  for (const auto& [f, c] : counts) std::cout << "  " << f << ": " << c << "\n";
  HomologyTable h = omega_homology(cutoff);
  std::cout << "omega module dimension: " << h.module_dim << "\n";
  std::cout << "d^2 = 0: " << (h.d_squared_zero ? "yes" : "no") << "\n";
  std::cout << "interior homology (maslov, intrinsic/4):\n";
  for (const auto& [b, r] : h.interior) std::cout << "  (" << b.maslov << ", " << b.intrinsic << "/4) rank " << r << "\n";
  for (const auto& [b, r] : h.boundary)
    std::cout << "  boundary (" << b.maslov << ", " << b.intrinsic << "/4) rank " << r << " [untrusted]\n";
  std::cout << "total interior rank: " << h.interior_total() << "\n";
  for (const auto& g : h.generators) std::cout << "generator: " << word_name(g) << ".x\n";
  return h.d_squared_zero ? kOk : kCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Decategorified tangle maps: evaluation, verification, states, Alexander polynomials"};
  app.require_subcommand(1);

  std::string file, framework = "osz", basis, trunc = "right", grading = "single", suite = "all";
  int max_n = 4;
  bool oracle = false;
  std::int64_t cutoff = 12;

  auto* eval = app.add_subcommand("eval", "Compose a diagram and print the matrix as JSON");
  eval->add_option("--framework", framework, "rt | viro | osz")->check(CLI::IsMember({"rt", "viro", "osz"}));
  eval->add_option("--basis", basis, "native | dual | modified-right | modified-left")
      ->check(CLI::IsMember({"native", "dual", "modified-right", "modified-left"}));
  eval->add_option("--trunc", trunc, "right | left")->check(CLI::IsMember({"right", "left"}));
  eval->add_option("--grading", grading, "single | multi")->check(CLI::IsMember({"single", "multi"}));
  eval->add_option("file", file, "diagram file")->required();

  auto* verify = app.add_subcommand("verify", "Run the verification suites");
  verify->add_option("--suite", suite, "crossings | extrema | relations | derivation | states | all");
  verify->add_option("--max-n", max_n, "largest strand count");

  auto* states = app.add_subcommand("states", "List partial Kauffman states at each crossing");
  states->add_option("--trunc", trunc, "right | left")->check(CLI::IsMember({"right", "left"}));
  states->add_option("--grading", grading, "single | multi")->check(CLI::IsMember({"single", "multi"}));
  states->add_option("file", file, "diagram file")->required();

  auto* alex = app.add_subcommand("alexander", "Alexander polynomial of a closed diagram");
  alex->add_option("--framework", framework, "rt | viro | osz")->check(CLI::IsMember({"rt", "viro", "osz"}));
  alex->add_option("--basis", basis, "native | dual | modified-right | modified-left")
      ->check(CLI::IsMember({"native", "dual", "modified-right", "modified-left"}));
  alex->add_option("--trunc", trunc, "right | left")->check(CLI::IsMember({"right", "left"}));
  alex->add_option("--grading", grading, "single | multi")->check(CLI::IsMember({"single", "multi"}));
  alex->add_flag("--oracle", oracle, "also evaluate the region state sum");
  alex->add_option("file", file, "diagram file")->required();

  auto* quiv = app.add_subcommand("quiverlab", "Basis counts and homology of the one-generator module");
  quiv->add_option("--cutoff", cutoff, "intrinsic-degree window in quarter units");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*eval) return run_eval(file, make_options(framework, basis, trunc, grading));
    if (*verify) return run_verify(suite, max_n);
    if (*states) return run_states(file, parse_side(trunc), parse_grading(grading));
    if (*alex) return run_alexander(file, make_options(framework, basis, trunc, grading), oracle);
    if (*quiv) return run_quiverlab(cutoff);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n" << app.help();
    return kUsage;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kCheckFailed;
  }
  return kUsage;
}
