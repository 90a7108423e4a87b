#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "ffoil/evaluator.hpp"
#include "ffoil/learner.hpp"
#include "ffoil/taskgen.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;
using namespace ffoil;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitPartial = 2;

struct LearnFlags {
  std::string mode = "ffoil";
  double neg_sample = 1.0;
  std::uint64_t seed = 0;
  int max_depth = 4;
  double near_max = 0.80;
  bool no_negation = false;
  std::uint64_t budget = 1'000'000;

  void add_to(CLI::App* app) {
    app->add_option("--mode", mode, "foil or ffoil")->check(CLI::IsMember({"foil", "ffoil"}));
    app->add_option("--neg-sample", neg_sample, "fraction of closed-world negatives kept (FOIL)");
    app->add_option("--seed", seed, "sampling seed");
    app->add_option("--max-depth", max_depth, "maximum variable depth");
    app->add_option("--near-max-gain", near_max, "near-maximum gain ratio");
    app->add_flag("--no-negation", no_negation, "pure Prolog: no not(...) or \\= literals");
    app->add_option("--budget", budget, "evaluation budget in goals");
  }

  LearnerConfig config() const {
    LearnerConfig cfg;
    cfg.mode = mode == "foil" ? Mode::Foil : Mode::Ffoil;
    cfg.neg_sample = neg_sample;
    cfg.seed = seed;
    cfg.max_depth = max_depth;
    cfg.near_max_ratio = near_max;
    cfg.allow_negation = !no_negation;
    cfg.eval_budget = budget;
    return cfg;
  }
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path + "'");
  out << text;
}

Dataset load(const std::string& path) {
  try {
    return parse_dataset(read_file(path));
  } catch (const ParseError& e) {
    throw Error(path + ":" + std::to_string(e.line()) + ":" + std::to_string(e.column()) + ": " + e.what());
  }
}

Definition load_definition(const std::string& path, SymbolTable& symbols) {
  try {
    return parse_prolog_definition(read_file(path), symbols);
  } catch (const ParseError& e) {
    throw Error(path + ":" + std::to_string(e.line()) + ":" + std::to_string(e.column()) + ": " + e.what());
  }
}

std::string tuple_text(const Tuple& t, const Dataset& ds) {
  std::string s;
  for (std::size_t i = 0; i < t.size(); ++i) s += (i ? "," : "") + ds.symbol(t[i]);
  return s;
}

json config_json(const LearnerConfig& c) {
  return json{{"mode", c.mode == Mode::Foil ? "foil" : "ffoil"},
              {"max_depth", c.max_depth},
              {"near_max_ratio", c.near_max_ratio},
              {"neg_sample", c.neg_sample},
              {"seed", c.seed},
              {"allow_negation", c.allow_negation},
              {"max_clause_len", c.max_clause_len},
              {"backtrack_checkpoints", c.backtrack_checkpoints},
              {"determinate_cap", c.determinate_cap},
              {"max_backtracks", c.max_backtracks},
              {"min_clause_accuracy", c.min_clause_accuracy},
              {"lookahead", c.lookahead},
              {"eval_budget", c.eval_budget}};
}

struct Experiment {
  json report;
  bool complete = false;
  std::string definition_text;
};

// Learns, then scores the definition on the training tuples and, when given,
// on open-domain tuples with intensional background relations.
Experiment run_experiment(const std::string& id, const Dataset& ds, const LearnerConfig& cfg,
                          const std::vector<Tuple>* open_domain = nullptr) {
  const auto t0 = std::chrono::steady_clock::now();
  const LearnResult r = learn(ds, cfg);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  EvalOptions eo;
  eo.budget = cfg.eval_budget;
  const auto& positives = ds.target.positives.tuples();
  const ScoreResult train = score(r.definition, positives, ds, eo);
  std::uint64_t goals_total = 0, goals_max = 0;
  {
    Evaluator ev(r.definition, ds, eo);
    for (const auto& t : positives) {
      EvalResult d;
      ev.answer_standard_query(std::span<const ConstId>(t).first(t.size() - 1), &d);
      goals_total += d.goal_count;
      goals_max = std::max(goals_max, d.goal_count);
    }
  }

  Experiment ex;
  ex.complete = r.complete;
  ex.definition_text = render_prolog(r.definition, *ds.symbols);
  json& j = ex.report;
  j["task"] = id;
  j["mode"] = cfg.mode == Mode::Foil ? "foil" : "ffoil";
  j["config"] = config_json(cfg);
  j["positives"] = r.positives;
  j["negatives"] = r.negatives;
  j["initial_rows"] = r.initial_rows;
  j["peak_rows"] = r.peak_rows;
  j["complete"] = r.complete;
  j["clauses"] = r.definition.clauses.size() + (r.definition.default_clause ? 1 : 0);
  j["literals"] = r.definition.literal_count();
  j["definition"] = ex.definition_text;
  if (r.simplified) {
    j["before_simplification"] = render_prolog(r.before_simplification, *ds.symbols);
    j["errors_before_simplification"] = r.errors_before_simplification;
    j["errors_after_simplification"] = r.errors_after_simplification;
  }
  j["uncovered"] = r.uncovered.size();
  j["backtracks"] = r.backtracks;
  j["training_accuracy"] = train.accuracy;
  if (open_domain) {
    EvalOptions io = eo;
    io.intensional = true;
    // Unordered definitions may need to build lists they cannot enumerate, so
    // they are checked on ground tuples instead of standard queries.
    const ScoreResult od = r.definition.ordered ? score(r.definition, *open_domain, ds, io)
                                                : score_ground(r.definition, *open_domain, ds, io);
    j["open_domain_accuracy"] = od.accuracy;
    j["open_domain_tests"] = open_domain->size();
  } else {
    j["open_domain_accuracy"] = nullptr;
  }
  j["goal_count"] = {{"queries", positives.size()},
                     {"total", goals_total},
                     {"max", goals_max},
                     {"mean", positives.empty() ? 0.0 : static_cast<double>(goals_total) / positives.size()}};
  j["notes"] = r.notes;
  j["seconds"] = secs;
  return ex;
}

int cmd_gen(const TaskSpec& spec, const std::string& out) {
  const GeneratedTask g = gen_task(spec);
  if (out.empty() || out == "-") {
    std::cout << g.text();
  } else {
    write_file(out, g.text());
  }
  return kExitOk;
}

int cmd_learn(const std::string& data, const LearnFlags& flags, const std::string& out) {
  const Dataset ds = load(data);
  const Experiment ex = run_experiment(fs::path(data).stem().string(), ds, flags.config());
  if (out.empty()) {
    std::cout << ex.definition_text << ex.report.dump(2) << '\n';
  } else {
    write_file(out + ".pl", ex.definition_text);
    write_file(out + ".report.json", ex.report.dump(2) + "\n");
    std::cout << ex.definition_text;
  }
  return ex.complete ? kExitOk : kExitPartial;
}

int cmd_trace(const std::string& data, const LearnFlags& flags) {
  const Dataset ds = load(data);
  const LearnResult r = learn(ds, flags.config(), [&](const TraceEvent& ev) {
    std::cout << "[clause " << ev.clause << "] " << ev.kind;
    if (ev.kind == "step" || ev.kind == "backtrack") {
      std::cout << ' ' << action_name(ev.action) << ':';
      for (const auto& lit : ev.literals) std::cout << ' ' << render_literal(lit, *ds.symbols);
      std::cout << "  gain=" << ev.stats.gain << " max=" << ev.stats.max_possible << " k=" << ev.stats.k;
    }
    std::cout << "  rows=" << ev.rows << "\n  " << ev.clause_text << '\n';
    if (!ev.table_dump.empty()) {
      std::istringstream lines(ev.table_dump);
      for (std::string line; std::getline(lines, line);) std::cout << "    " << line << '\n';
    }
  });
  std::cout << "% definition\n" << render_prolog(r.definition, *ds.symbols);
  return r.complete ? kExitOk : kExitPartial;
}

int cmd_eval(const std::string& def_path, const std::string& data, const std::string& query, bool all,
             const EvalOptions& eo) {
  const Dataset ds = load(data);
  const Definition def = load_definition(def_path, *ds.symbols);
  const Query q = parse_query(query, *ds.symbols);
  const EvalResult r = solve(q, def, ds, eo);
  if (r.error) throw Error(*r.error);
  const std::size_t shown = all ? r.answers.size() : std::min<std::size_t>(r.answers.size(), 1);
  if (shown == 0) std::cout << "no\n";
  for (std::size_t i = 0; i < shown; ++i) std::cout << q.relation << '(' << tuple_text(r.answers[i], ds) << ")\n";
  std::cout << "goal_count\t" << r.goal_count << '\n';
  if (r.budget_exhausted) std::cout << "budget_exhausted\n";
  return kExitOk;
}

int cmd_score(const std::string& def_path, const std::string& data, const std::string& section,
              const EvalOptions& eo) {
  const Dataset ds = load(data);
  const Definition def = load_definition(def_path, *ds.symbols);
  std::vector<Tuple> tests;
  if (section == "train") {
    tests = ds.target.positives.tuples();
  } else if (ds.test_tuples) {
    tests = ds.test_tuples->tuples();
  } else {
    throw Error("'" + data + "' has no test section");
  }
  const ScoreResult s = score(def, tests, ds, eo);
  std::cout << "tuple\texpected\tgot\tverdict\n";
  for (const auto& v : s.verdicts) {
    const Tuple inputs(v.tuple.begin(), v.tuple.end() - 1);
    std::cout << tuple_text(inputs, ds) << '\t' << ds.symbol(v.tuple.back()) << '\t'
              << (v.got ? ds.symbol(*v.got) : "no answer") << '\t'
              << (v.correct ? "correct" : v.budget_exhausted ? "budget" : "wrong") << '\n';
  }
  std::cout << "accuracy\t" << s.correct << '/' << tests.size() << '\t' << s.accuracy << '\n';
  return kExitOk;
}

// Manifest lines: `<task> <foil|ffoil> [key=value ...]`, `#` comments.
// Keys: alphabet, max_len, repeats, int_lo, int_hi, seed, noise, neg_sample,
// max_depth, no_negation, open_domain (count of open-domain tuples).
struct SuiteRow {
  TaskSpec spec;
  LearnerConfig cfg;
  std::size_t open_domain = 0;
};

std::vector<SuiteRow> parse_manifest(const std::string& text, const std::string& path) {
  std::vector<SuiteRow> rows;
  std::istringstream lines(text);
  std::size_t line_no = 0;
  for (std::string line; std::getline(lines, line);) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream words(line);
    SuiteRow row;
    std::string mode;
    if (!(words >> row.spec.task)) continue;
    auto fail = [&](const std::string& msg) { throw Error(path + ":" + std::to_string(line_no) + ": " + msg); };
    if (!(words >> mode) || (mode != "foil" && mode != "ffoil")) fail("expected mode foil or ffoil");
    row.cfg.mode = mode == "foil" ? Mode::Foil : Mode::Ffoil;
    for (std::string kv; words >> kv;) {
      const auto eq = kv.find('=');
      if (eq == std::string::npos) fail("expected key=value, got '" + kv + "'");
      const std::string key = kv.substr(0, eq), val = kv.substr(eq + 1);
      try {
        if (key == "alphabet") row.spec.alphabet = std::stoi(val);
        else if (key == "max_len") row.spec.max_len = std::stoi(val);
        else if (key == "repeats") row.spec.repeats = val == "1" || val == "true";
        else if (key == "int_lo") row.spec.int_lo = std::stoi(val);
        else if (key == "int_hi") row.spec.int_hi = std::stoi(val);
        else if (key == "seed") row.spec.seed = row.cfg.seed = std::stoull(val);
        else if (key == "noise") row.spec.noise_rate = std::stod(val);
        else if (key == "neg_sample") row.cfg.neg_sample = std::stod(val);
        else if (key == "max_depth") row.cfg.max_depth = std::stoi(val);
        else if (key == "no_negation") row.cfg.allow_negation = !(val == "1" || val == "true");
        else if (key == "open_domain") row.open_domain = std::stoul(val);
        else fail("unknown key '" + key + "'");
      } catch (const std::logic_error&) {
        fail("bad value in '" + kv + "'");
      }
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

int cmd_suite(const std::string& manifest, const std::string& out_json) {
  const auto rows = parse_manifest(read_file(manifest), manifest);
  json all = json::array();
  std::cout << "task\tmode\tpositives\tnegatives\tinitial_rows\tpeak_rows\tclauses\tliterals\tcomplete\t"
               "training_accuracy\topen_domain_accuracy\tseconds\n";
  bool every_complete = true;
  for (const auto& row : rows) {
    GeneratedTask g = gen_task(row.spec);
    std::vector<Tuple> od;
    if (row.open_domain > 0) od = open_domain_tuples(row.spec, row.open_domain, 6, row.spec.seed, *g.dataset.symbols);
    const Experiment ex = run_experiment(row.spec.task, g.dataset, row.cfg, row.open_domain ? &od : nullptr);
    const json& j = ex.report;
    every_complete = every_complete && ex.complete;
    std::cout << j["task"].get<std::string>() << '\t' << j["mode"].get<std::string>() << '\t' << j["positives"] << '\t'
              << j["negatives"] << '\t' << j["initial_rows"] << '\t' << j["peak_rows"] << '\t' << j["clauses"] << '\t'
              << j["literals"] << '\t' << (ex.complete ? "yes" : "no") << '\t' << j["training_accuracy"] << '\t'
              << (j["open_domain_accuracy"].is_null() ? std::string("-") : j["open_domain_accuracy"].dump()) << '\t'
              << j["seconds"] << '\n';
    all.push_back(j);
  }
  if (!out_json.empty()) write_file(out_json, all.dump(2) + "\n");
  return every_complete ? kExitOk : kExitPartial;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"FOIL and FFOIL learners for relational and functional targets"};
  app.require_subcommand(1);

  TaskSpec spec;
  std::string gen_out;
  int alphabet = 0, max_len = -1, int_lo = -1, int_hi = -1;
  bool no_repeats = false;
  auto* gen = app.add_subcommand("gen", "generate a benchmark dataset");
  gen->add_option("--task", spec.task, "task name")->required()->check(CLI::IsMember(task_names()));
  gen->add_option("--alphabet", alphabet, "list element alphabet size");
  gen->add_option("--max-len", max_len, "maximum list length");
  gen->add_flag("--no-repeats", no_repeats, "lists with distinct elements only");
  gen->add_option("--int-lo", int_lo, "smallest integer");
  gen->add_option("--int-hi", int_hi, "largest integer");
  gen->add_option("--seed", spec.seed, "noisy-fn seed");
  gen->add_option("--noise", spec.noise_rate, "noisy-fn corrupted fraction");
  gen->add_option("--inputs", spec.n_inputs, "noisy-fn entity count");
  gen->add_option("--outputs", spec.n_outputs, "noisy-fn output count");
  gen->add_option("--rule-depth", spec.rule_depth, "noisy-fn literals per hidden rule");
  gen->add_option("-o,--out", gen_out, "output file (default stdout)");

  LearnFlags flags;
  std::string data, out;
  auto* learn_cmd = app.add_subcommand("learn", "learn a definition and write a report");
  learn_cmd->add_option("--data", data, "dataset file")->required();
  learn_cmd->add_option("--out", out, "write <out>.pl and <out>.report.json");
  flags.add_to(learn_cmd);

  auto* trace_cmd = app.add_subcommand("trace", "learn with step-by-step binding tables");
  trace_cmd->add_option("--data", data, "dataset file")->required();
  flags.add_to(trace_cmd);

  std::string def_path, query, section = "test";
  bool all = false, intensional = false;
  std::uint64_t budget = 1'000'000;
  auto* eval_cmd = app.add_subcommand("eval", "answer one query with a definition");
  eval_cmd->add_option("--def", def_path, "definition file (.pl)")->required();
  eval_cmd->add_option("--data", data, "dataset with the background relations")->required();
  eval_cmd->add_option("--query", query, "query such as 'plus(1,1,X)'")->required();
  eval_cmd->add_flag("--all", all, "print every answer, not just the first");
  eval_cmd->add_flag("--intensional", intensional, "procedural list and number relations");
  eval_cmd->add_option("--budget", budget, "goal budget");

  auto* score_cmd = app.add_subcommand("score", "score a definition by standard queries");
  score_cmd->add_option("--def", def_path, "definition file (.pl)")->required();
  score_cmd->add_option("--data", data, "dataset file")->required();
  score_cmd->add_option("--test", section, "test (the dataset's test section) or train")
      ->check(CLI::IsMember({"test", "train"}));
  score_cmd->add_flag("--intensional", intensional, "procedural list and number relations");
  score_cmd->add_option("--budget", budget, "goal budget");

  std::string manifest, suite_json;
  auto* suite_cmd = app.add_subcommand("suite", "run a manifest of tasks and print a TSV table");
  suite_cmd->add_option("manifest", manifest, "manifest file")->required();
  suite_cmd->add_option("--json", suite_json, "also write every report to this file");

  CLI11_PARSE(app, argc, argv);

  try {
    EvalOptions eo;
    eo.budget = budget;
    eo.intensional = intensional;
    if (*gen) {
      if (alphabet > 0) spec.alphabet = alphabet;
      if (max_len >= 0) spec.max_len = max_len;
      if (no_repeats) spec.repeats = false;
      if (int_lo >= 0) spec.int_lo = int_lo;
      if (int_hi >= 0) spec.int_hi = int_hi;
      return cmd_gen(spec, gen_out);
    }
    if (*learn_cmd) return cmd_learn(data, flags, out);
    if (*trace_cmd) return cmd_trace(data, flags);
    if (*eval_cmd) return cmd_eval(def_path, data, query, all, eo);
    if (*score_cmd) return cmd_score(def_path, data, section, eo);
    if (*suite_cmd) return cmd_suite(manifest, suite_json);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}
