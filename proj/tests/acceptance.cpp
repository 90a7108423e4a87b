#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>

#include "invariants.hpp"

using namespace ffoil;

namespace {

constexpr double kGainTolerance = 1e-6;
constexpr double kPlusGain = 1.7548875;
constexpr double kPlusSeconds = 1.0;
constexpr double kOpenDomainSeconds = 30.0;
constexpr double kInvariantSeconds = 60.0;
constexpr double kGoalRatio = 5.0;
constexpr std::size_t kOpenDomainTuples = 200;
constexpr int kOpenDomainMaxLen = 6;

struct Report {
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (cond) return;
    if (!detail.empty()) detail += "; ";
    detail += what;
    ok = false;
  }
  void note(const std::string& what) {
    if (!detail.empty()) detail += "; ";
    detail += what;
  }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

bool near(double a, double b) { return std::fabs(a - b) <= kGainTolerance; }

Definition learned_foil_plus;
Definition learned_ffoil_plus;

Report plus_foil() {
  Report r;
  const auto t0 = std::chrono::steady_clock::now();
  const Dataset ds = fixture::plus();
  BindingEngine engine(ds, Mode::Foil);
  const auto table = engine.initial_table(ds.target.positives.tuples(), closed_world_complement(ds.target, ds.types));
  r.require(table.count(Label::Pos) == 6 && table.count(Label::Neg) == 21, "initial table is not 6+/21-");
  const Literal a0 = Literal::eq_const(0, fixture::c(ds, "0"));
  const double g = engine.gain(table, a0).gain;
  r.require(near(g, kPlusGain), "gain(A=0) = " + fmt("%.9f", g));
  const auto after = engine.extend(table, a0);
  r.require(after.count(Label::Pos) == 3 && after.count(Label::Neg) == 6, "table after A=0 is not 3+/6-");

  const LearnResult res = learn_foil(ds, fixture::config(Mode::Foil, false));
  learned_foil_plus = res.definition;
  Dataset ref_ds = fixture::plus();
  const Definition ref = fixture::parse_def(fixture::kFoilPlus, ref_ds);
  Evaluator mine(res.definition, ds), theirs(ref, ref_ds);
  std::size_t agree = 0;
  for (const char* x : {"0", "1", "2"})
    for (const char* y : {"0", "1", "2"})
      for (const char* z : {"0", "1", "2"}) agree += mine.holds(fixture::tup(ds, {x, y, z})) == theirs.holds(fixture::tup(ref_ds, {x, y, z}));
  r.require(agree == 27, std::to_string(agree) + "/27 ground queries agree");
  const double secs = seconds_since(t0);
  r.require(secs < kPlusSeconds, "took " + fmt("%.2fs", secs));
  r.note("gain " + fmt("%.7f", g) + ", 27/27 agree, " + fmt("%.3fs", secs));
  return r;
}

Report plus_ffoil() {
  Report r;
  const auto t0 = std::chrono::steady_clock::now();
  const Dataset ds = fixture::plus();
  BindingEngine engine(ds, Mode::Ffoil);
  const auto table = engine.initial_table(ds.target.positives.tuples());
  r.require(table.size() == 6 && table.count(Label::Undet) == 6, "initial table is not 6 undetermined rows");
  const double g0 = engine.gain(table, Literal::eq_const(0, fixture::c(ds, "0"))).gain;
  const double gc = engine.gain(table, Literal::eq_var(0, 2)).gain;
  r.require(near(g0, 0.0), "gain(A=0) = " + fmt("%.9f", g0));
  r.require(near(gc, kPlusGain), "gain(A=C) = " + fmt("%.9f", gc));

  bool determinates = false;
  const LearnResult res = learn_ffoil(ds, fixture::config(Mode::Ffoil), [&](const TraceEvent& e) {
    if (e.kind != "step" || e.action != Action::Determinates) return;
    std::vector<std::string> names;
    for (const auto& l : e.literals) names.push_back(render_literal(l, *ds.symbols));
    determinates = determinates || (std::find(names.begin(), names.end(), "dec(B,D)") != names.end() &&
                                    std::find(names.begin(), names.end(), "dec(E,A)") != names.end());
  });
  learned_ffoil_plus = res.definition;
  r.require(determinates, "dec(B,D) and dec(E,A) not taken as determinates");
  const std::string text = render_prolog(res.definition, *ds.symbols);
  r.require(text == fixture::kFfoilPlus, "definition differs:\n" + text);
  const LearnResult foil = learn_foil(ds, fixture::config(Mode::Foil, false));
  r.require(res.peak_rows <= 6, "peak rows " + std::to_string(res.peak_rows));
  r.require(foil.peak_rows == 27, "FOIL peak rows " + std::to_string(foil.peak_rows));
  const double secs = seconds_since(t0);
  r.require(secs < kPlusSeconds, "took " + fmt("%.2fs", secs));
  r.note("peak " + std::to_string(res.peak_rows) + " vs " + std::to_string(foil.peak_rows) + ", " + fmt("%.3fs", secs));
  return r;
}

Report vocabulary() {
  Report r;
  r.require(list_vocabulary(3, 3, true).size() == 40, "(3,3) lists");
  r.require(list_vocabulary(4, 4, true).size() == 341, "(4,4) lists");
  r.require(list_vocabulary(4, 4, false).size() == 65, "(4,4) non-repeating lists");
  const struct {
    int len, alphabet;
    std::uint64_t total;
  } sorting[] = {{3, 3, 256}, {3, 4, 1681}, {4, 4, 4225}, {4, 5, 42436}};
  for (const auto& s : sorting) {
    TaskSpec spec;
    spec.task = "qsort";
    spec.max_len = s.len;
    spec.alphabet = s.alphabet;
    spec.repeats = false;
    const Dataset ds = gen_task(spec).dataset;
    const std::uint64_t got = product_size(ds.target, ds.types);
    r.require(got == s.total, "[" + std::to_string(s.len) + "," + std::to_string(s.alphabet) + "] total " + std::to_string(got));
  }
  const Dataset app = fixture::task("append");
  r.require(app.target.positives.size() == 142, "append positives");
  r.require(closed_world_complement(app.target, app.types).size() == 63858, "append negatives");
  return r;
}

Report open_domain() {
  Report r;
  const auto t0 = std::chrono::steady_clock::now();
  for (const char* task : {"append", "last"}) {
    for (Mode mode : {Mode::Foil, Mode::Ffoil}) {
      const Dataset ds = fixture::task(task);
      const LearnResult res = learn(ds, fixture::config(mode));
      TaskSpec spec;
      spec.task = task;
      const auto tests = open_domain_tuples(spec, kOpenDomainTuples, kOpenDomainMaxLen, 1, *ds.symbols);
      EvalOptions eo;
      eo.intensional = true;
      const ScoreResult s = res.definition.ordered ? score(res.definition, tests, ds, eo)
                                                   : score_ground(res.definition, tests, ds, eo);
      const std::string tag = std::string(task) + (mode == Mode::Foil ? "/foil" : "/ffoil");
      r.require(s.correct == tests.size(), tag + " " + std::to_string(s.correct) + "/" + std::to_string(tests.size()));
    }
  }
  const double secs = seconds_since(t0);
  r.require(secs < kOpenDomainSeconds, "took " + fmt("%.1fs", secs));
  r.note("4 x 200 tuples, " + fmt("%.1fs", secs));
  return r;
}

bool mentions_zero(const Clause& c, VarId v, const Dataset& ds) {
  for (const auto& l : c.body) {
    if (l.kind == LiteralKind::EqConst && !l.negated && l.args[0].id == v && ds.symbol(l.args[1].id) == "0") return true;
  }
  return false;
}

std::vector<const Literal*> recursive_calls(const Clause& c) {
  std::vector<const Literal*> out;
  for (const auto& l : c.body) {
    if (l.kind == LiteralKind::Relation && l.relation == c.head) out.push_back(&l);
  }
  return out;
}

Report arithmetic() {
  Report r;
  const Dataset gcd = fixture::task("gcd");
  const LearnResult g = learn_ffoil(gcd, fixture::config(Mode::Ffoil));
  const double train = score(g.definition, gcd.target.positives.tuples(), gcd).accuracy;
  r.require(train == 1.0, "gcd training accuracy " + fmt("%.4f", train));

  TaskSpec wide;
  wide.task = "gcd";
  wide.int_hi = 30;
  Dataset big = gen_task(wide).dataset;
  const Definition moved = fixture::parse_def(render_prolog(g.definition, *gcd.symbols), big);
  std::vector<Tuple> held_out;
  for (const auto& t : big.target.positives) {
    if (*big.symbols->numeric(t[0]) >= 21 && *big.symbols->numeric(t[1]) >= 21) held_out.push_back(t);
  }
  const ScoreResult h = score(moved, held_out, big);
  r.require(held_out.size() == 100 && h.accuracy == 1.0,
            "held-out " + std::to_string(h.correct) + "/" + std::to_string(held_out.size()));

  const Dataset ack = fixture::task("ackermann");
  const LearnResult a = learn_ffoil(ack, fixture::config(Mode::Ffoil));
  const double acc = score(a.definition, ack.target.positives.tuples(), ack).accuracy;
  r.require(ack.target.positives.size() == 51 && acc == 1.0, "ackermann accuracy " + fmt("%.4f", acc));
  bool base = false, single = false, nested = false;
  for (const auto& c : a.definition.clauses) {
    const auto calls = recursive_calls(c);
    if (calls.empty() && mentions_zero(c, 0, ack)) base = true;
    if (calls.size() == 1 && mentions_zero(c, 1, ack)) single = true;
    if (calls.size() == 2) {
      for (const Literal* x : calls)
        for (const Literal* y : calls)
          if (x != y && x->args[2] == y->args[1]) nested = true;
    }
  }
  r.require(base && single && nested, "ackermann clauses do not show the A=0 / B=0 / nested cases");
  r.note("gcd 400/400 and " + std::to_string(h.correct) + "/100 held out; ackermann 51/51 in " +
         std::to_string(a.definition.clauses.size()) + " clauses + default");
  return r;
}

Report goal_ratio() {
  Report r;
  Dataset ds = fixture::plus();
  const Query q = parse_query("plus(1,1,X)", *ds.symbols);
  const EvalResult foil = solve(q, learned_foil_plus, ds);
  const EvalResult ffoil = solve(q, learned_ffoil_plus, ds, {});
  const ConstId two = fixture::c(ds, "2");
  r.require(!foil.answers.empty() && foil.answers[0].back() == two, "FOIL answer is not 2");
  r.require(!ffoil.answers.empty() && ffoil.answers[0].back() == two, "FFOIL answer is not 2");
  r.require(static_cast<double>(foil.goal_count) >= kGoalRatio * static_cast<double>(ffoil.goal_count),
            "ratio below 5");
  r.note(std::to_string(foil.goal_count) + " vs " + std::to_string(ffoil.goal_count) + " goals");
  return r;
}

Report noisy() {
  Report r;
  const auto run = [] {
    const Dataset ds = gen_noisy_functional(200, 5, 2, 0.10, 7).dataset;
    return std::make_pair(ds, learn_ffoil(ds, fixture::config(Mode::Ffoil)));
  };
  const auto [ds, res] = run();
  const auto& pos = ds.target.positives.tuples();
  const CoverageLedger before = coverage_ledger(res.before_simplification, pos, ds);
  r.require(before.uncovered >= 1, "pre-simplification definition covers every tuple");
  r.require(res.simplified, "global simplification did not run");
  Definition simplified = res.definition;
  simplified.default_clause.reset();
  const CoverageLedger after = coverage_ledger(simplified, pos, ds);
  r.require(simplified.literal_count() < res.before_simplification.literal_count(),
            "literals " + std::to_string(res.before_simplification.literal_count()) + " -> " +
                std::to_string(simplified.literal_count()));
  r.require(after.errors() <= before.errors(),
            "errors " + std::to_string(before.errors()) + " -> " + std::to_string(after.errors()));

  std::map<ConstId, std::size_t> freq;
  for (const auto& t : pos) ++freq[t.back()];
  std::size_t modal = 0;
  for (const auto& [_, n] : freq) modal = std::max(modal, n);
  const double modal_rate = static_cast<double>(modal) / static_cast<double>(pos.size());
  const double acc = score(res.definition, pos, ds).accuracy;
  r.require(acc >= modal_rate, "accuracy " + fmt("%.3f", acc) + " below modal " + fmt("%.3f", modal_rate));

  const auto [ds2, res2] = run();
  r.require(render_prolog(res2.definition, *ds2.symbols) == render_prolog(res.definition, *ds.symbols),
            "second run differs");
  r.note("literals " + std::to_string(res.before_simplification.literal_count()) + " -> " +
         std::to_string(simplified.literal_count()) + ", errors " + std::to_string(before.errors()) + " -> " +
         std::to_string(after.errors()) + ", accuracy " + fmt("%.3f", acc) + " vs modal " + fmt("%.3f", modal_rate));
  return r;
}

Report invariant_suites() {
  Report r;
  const auto t0 = std::chrono::steady_clock::now();
  for (const auto& inv : invariants::all()) {
    const auto o = inv.run();
    r.require(o.ok, std::string(inv.name) + ": " + o.detail);
  }
  const double secs = seconds_since(t0);
  r.require(secs < kInvariantSeconds, "took " + fmt("%.1fs", secs));
  r.note(std::to_string(invariants::all().size()) + " suites, " + fmt("%.2fs", secs));
  return r;
}

}  // namespace

int main() {
  const std::pair<const char*, std::function<Report()>> criteria[] = {
      {"plus trace, FOIL", plus_foil},
      {"plus trace, FFOIL", plus_ffoil},
      {"vocabulary counts", vocabulary},
      {"open-domain append/last", open_domain},
      {"gcd and ackermann", arithmetic},
      {"goal-count ratio", goal_ratio},
      {"noisy functional path", noisy},
      {"invariant suites", invariant_suites},
  };
  int failed = 0;
  int index = 0;
  for (const auto& [name, run] : criteria) {
    ++index;
    Report r;
    try {
      r = run();
    } catch (const std::exception& e) {
      r.require(false, std::string("threw: ") + e.what());
    }
    std::printf("criterion %d %-26s %s  %s\n", index, name, r.ok ? "PASS" : "FAIL", r.detail.c_str());
    std::fflush(stdout);
    failed += !r.ok;
  }
  return failed == 0 ? 0 : 1;
}
