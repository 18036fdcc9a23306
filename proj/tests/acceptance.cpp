// One line per acceptance criterion. Exact comparisons throughout; runtimes
// are wall-clock and checked against the limits below.
#include <chrono>
#include <cstdio>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "golden.hpp"
#include "tangle/crosscheck.hpp"
#include "tangle/quiverlab.hpp"

using namespace tangle;

namespace {

struct Outcome {
  bool ok = false;
  std::string detail;
};

int failures = 0;

template <class F>
void criterion(int id, const std::string& name, double limit_s, F&& f) {
  auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = f();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const bool in_time = limit_s <= 0 || s < limit_s;
  const bool pass = o.ok && in_time;
  if (!pass) ++failures;
  char timing[96];
  if (limit_s > 0) std::snprintf(timing, sizeof timing, "%.2fs (limit %.0fs)", s, limit_s);
  else std::snprintf(timing, sizeof timing, "%.2fs", s);
  std::printf("%s %d %s: %s; %s%s\n", pass ? "PASS" : "FAIL", id, name.c_str(), o.detail.c_str(), timing,
              in_time ? "" : " [over time]");
  std::fflush(stdout);
}

Outcome from(const Report& r) {
  std::string d = r.summary();
  if (!r.details.empty()) d += "; first failure: " + r.details.front();
  return {r.pass(), d};
}

std::string read(const std::string& name) {
  std::ifstream in(std::string(FIXTURE_DIR) + "/" + name);
  if (!in) throw std::runtime_error("missing fixture " + name);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

const std::vector<std::pair<std::string, std::string>> kKnots = {
    {"unknot.tgl", "1"},
    {"trefoil.tgl", "t - 1 + t^-1"},
    {"trefoil_mirror.tgl", "t - 1 + t^-1"},
    {"trefoil_r2.tgl", "t - 1 + t^-1"},
    {"figure_eight.tgl", "-t + 3 - t^-1"},
    {"knot_5_1.tgl", "t^2 - t + 1 - t^-1 + t^-2"},
    {"knot_6_1.tgl", "-2*t + 5 - 2*t^-1"},
};

}  // namespace

int main() {
  criterion(1, "ground-truth local tables", 1, [] {
    auto [n, bad] = golden::run_all();
    std::string d = std::to_string(n) + " entries compared, " + std::to_string(bad.size()) + " mismatches";
    if (!bad.empty()) d += "; first: " + bad.front();
    return Outcome{bad.empty() && n > 0, d};
  });

  criterion(2, "modified-basis derivation n<=6", 30, [] { return from(sweep_modified_derivation(6)); });

  criterion(3, "partial Kauffman state sums n<=6", 30, [] { return from(sweep_state_sums(6)); });

  criterion(4, "crossing and extremum theorems n<=6", 60, [] {
    Report r = sweep_crossings(6);
    r.merge(sweep_extrema(6));
    r.merge(check_dictionary_uniqueness(3));
    return from(r);
  });

  criterion(5, "braid, R2 and zigzag relations n<=4", 30, [] {
    Report r;
    for (auto fw : {Framework::rt, Framework::viro, Framework::osz}) r.merge(check_relations(fw, 4));
    return from(r);
  });

  criterion(6, "Alexander polynomials vs oracle and Seifert", 5, [] {
    Report r;
    for (const auto& [file, want] : kKnots) {
      std::string text = read(file);
      TangleDiagram d = parse_diagram(text);
      QL raw = compose_diagram(d, {}).at(0, 0);
      QL delta = normalize_alexander(raw);
      r.expect(delta.pretty() == want, [&] { return file + ": pipeline " + delta.pretty(); });
      r.expect(delta.sum_of_coefficients() == 1, [&] { return file + ": value at 1"; });
      OracleResult o = oracle_state_sum(d);
      r.expect(o.value == raw.with_context(VarContext::single_t()),
               [&] { return file + ": oracle " + o.value.pretty() + " vs " + raw.pretty(); });
      auto notes = fixture_annotations(text);
      auto V = nlohmann::json::parse(notes.at("seifert")).get<std::vector<std::vector<long>>>();
      QL det = V.empty() ? QL::constant(VarContext::single_t(), 1) : seifert_determinant(V);
      r.expect(normalize_alexander(det).pretty() == want, [&] { return file + ": seifert " + det.pretty(); });
      r.expect(notes.at("alexander") == want, [&] { return file + ": recorded value " + notes.at("alexander"); });
    }
    return from(r);
  });

  criterion(7, "multi/single collapse and Viro-to-RT specialization", 0, [] {
    Report r = check_specialization();
    r.merge(check_collapse_tables());
    for (const auto& [file, want] : kKnots) {
      TangleDiagram d = parse_diagram(read(file));
      for (auto side : {Side::right, Side::left})
        for (auto fw : {Framework::osz, Framework::viro}) {
          QL m = compose_diagram(d, {fw, BasisKind::modified, side, Grading::multi}).at(0, 0);
          QL s = compose_diagram(d, {fw, BasisKind::modified, side, Grading::single}).at(0, 0);
          r.expect(collapse_single(m) == s, [&] { return file + " " + to_string(fw) + ": collapsed multi differs"; });
        }
    }
    return from(r);
  });

  criterion(8, "one-generator module homology", 5, [] {
    using namespace tangle::quiver;
    Report r;
    std::map<Bidegree, int> want{{Bidegree{1, -2}, 1}};
    for (std::int64_t c : {8, 10, 12, 16}) {
      HomologyTable h = omega_homology(c);
      r.expect(h.d_squared_zero, [&] { return "d^2 != 0 at cutoff " + std::to_string(c); });
      r.expect(h.interior == want, [&] { return "interior ranks differ at cutoff " + std::to_string(c); });
      r.expect(h.generators == std::vector<std::string>{"CL"}, [&] { return "generator differs at cutoff " + std::to_string(c); });
    }
    Outcome o = from(r);
    o.detail += "; rank 1 at (maslov 1, intrinsic -1/2) generated by C1L2.x";
    return o;
  });

  criterion(9, "state-space dimensions and block structure n<=6", 0, [] { return from(check_block_structure(6)); });

  std::printf("%s: %d criteria failed\n", failures ? "FAIL" : "PASS", failures);
  return failures ? 1 : 0;
}
