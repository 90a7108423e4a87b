#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ffoil/dataset.hpp"
#include "ffoil/evaluator.hpp"
#include "ffoil/learner.hpp"
#include "ffoil/taskgen.hpp"

namespace py = pybind11;
using namespace ffoil;

namespace {

using Row = std::vector<std::string>;

Row names(const Dataset& ds, std::span<const ConstId> t) {
  Row out;
  for (ConstId c : t) out.push_back(c == kUndetermined ? "_" : ds.symbol(c));
  return out;
}

std::vector<Row> rows(const Dataset& ds, const std::vector<Tuple>& ts) {
  std::vector<Row> out;
  for (const auto& t : ts) out.push_back(names(ds, t));
  return out;
}

Tuple ids(Dataset& ds, const Row& row) {
  Tuple t;
  for (const auto& s : row) t.push_back(ds.symbols->intern(s));
  return t;
}

struct PyLearnResult {
  std::string definition;
  std::string before_simplification;
  bool complete = false;
  bool simplified = false;
  std::size_t positives = 0, negatives = 0, initial_rows = 0, peak_rows = 0, backtracks = 0;
  std::size_t clauses = 0, literals = 0;
  std::vector<Row> uncovered;
  std::vector<std::string> notes;
};

PyLearnResult run_learn(const Dataset& ds, const std::string& mode, double neg_sample, std::uint64_t seed,
                        int max_depth, double near_max_gain, bool allow_negation, std::uint64_t budget) {
  LearnerConfig cfg;
  if (mode == "foil") cfg.mode = Mode::Foil;
  else if (mode == "ffoil") cfg.mode = Mode::Ffoil;
  else throw Error("mode must be 'foil' or 'ffoil'");
  cfg.neg_sample = neg_sample;
  cfg.seed = seed;
  cfg.max_depth = max_depth;
  cfg.near_max_ratio = near_max_gain;
  cfg.allow_negation = allow_negation;
  cfg.eval_budget = budget;
  LearnResult r;
  {
    py::gil_scoped_release release;
    r = learn(ds, cfg);
  }
  PyLearnResult out;
  out.definition = render_prolog(r.definition, *ds.symbols);
  if (r.simplified) out.before_simplification = render_prolog(r.before_simplification, *ds.symbols);
  out.complete = r.complete;
  out.simplified = r.simplified;
  out.positives = r.positives;
  out.negatives = r.negatives;
  out.initial_rows = r.initial_rows;
  out.peak_rows = r.peak_rows;
  out.backtracks = r.backtracks;
  out.clauses = r.definition.all_clauses().size();
  out.literals = r.definition.literal_count();
  out.uncovered = rows(ds, r.uncovered);
  out.notes = r.notes;
  return out;
}

EvalOptions options(bool intensional, std::uint64_t budget) {
  EvalOptions o;
  o.intensional = intensional;
  o.budget = budget;
  return o;
}

}  // namespace

PYBIND11_MODULE(_ffoil, m) {
  m.doc() = "Relational and functional relational rule learning";

  // Translators run newest first, so the subclass goes last.
  py::register_exception<Error>(m, "FfoilError", PyExc_RuntimeError);
  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);

  py::class_<Dataset>(m, "Dataset")
      .def_static("parse", [](const std::string& text) { return parse_dataset(text); }, py::arg("text"))
      .def_static("load", &load_dataset, py::arg("path"))
      .def("render", &render_dataset)
      .def_property_readonly("target", [](const Dataset& ds) { return ds.target.name; })
      .def_property_readonly("arity", [](const Dataset& ds) { return ds.target.arity(); })
      .def_property_readonly("positives", [](const Dataset& ds) { return rows(ds, ds.target.positives.tuples()); })
      .def_property_readonly("backgrounds",
                             [](const Dataset& ds) {
                               std::vector<std::string> out;
                               for (const auto& b : ds.backgrounds) out.push_back(b.name);
                               return out;
                             })
      .def("closed_world_negatives",
           [](const Dataset& ds) { return rows(ds, closed_world_complement(ds.target, ds.types)); })
      .def("is_functional", [](const Dataset& ds) { return check_functional(ds.target).functional; })
      .def("__repr__", [](const Dataset& ds) {
        return "<Dataset " + ds.target.name + "/" + std::to_string(ds.target.arity()) + ", " +
               std::to_string(ds.target.positives.size()) + " positives>";
      });

  py::class_<PyLearnResult>(m, "LearnResult")
      .def_readonly("definition", &PyLearnResult::definition)
      .def_readonly("before_simplification", &PyLearnResult::before_simplification)
      .def_readonly("complete", &PyLearnResult::complete)
      .def_readonly("simplified", &PyLearnResult::simplified)
      .def_readonly("positives", &PyLearnResult::positives)
      .def_readonly("negatives", &PyLearnResult::negatives)
      .def_readonly("initial_rows", &PyLearnResult::initial_rows)
      .def_readonly("peak_rows", &PyLearnResult::peak_rows)
      .def_readonly("backtracks", &PyLearnResult::backtracks)
      .def_readonly("clauses", &PyLearnResult::clauses)
      .def_readonly("literals", &PyLearnResult::literals)
      .def_readonly("uncovered", &PyLearnResult::uncovered)
      .def_readonly("notes", &PyLearnResult::notes);

  m.def(
      "gen_task",
      [](const std::string& task, std::optional<int> alphabet, std::optional<int> max_len, std::optional<bool> repeats,
         std::optional<int> int_lo, std::optional<int> int_hi, std::uint64_t seed, double noise) {
        TaskSpec s;
        s.task = task;
        s.alphabet = alphabet;
        s.max_len = max_len;
        s.repeats = repeats;
        s.int_lo = int_lo;
        s.int_hi = int_hi;
        s.seed = seed;
        s.noise_rate = noise;
        return gen_task(s).text();
      },
      py::arg("task"), py::kw_only(), py::arg("alphabet") = py::none(), py::arg("max_len") = py::none(),
      py::arg("repeats") = py::none(), py::arg("int_lo") = py::none(), py::arg("int_hi") = py::none(),
      py::arg("seed") = 0, py::arg("noise") = 0.10, "Dataset text for a benchmark task.");
  m.def("task_names", &task_names);
  m.def("list_vocabulary", &list_vocabulary, py::arg("alphabet"), py::arg("max_len"), py::arg("repeats") = true);
  m.def("information", &information, py::arg("n_plus"), py::arg("n_minus"));

  m.def("learn", &run_learn, py::arg("dataset"), py::kw_only(), py::arg("mode") = "ffoil",
        py::arg("neg_sample") = 1.0, py::arg("seed") = 0, py::arg("max_depth") = 4, py::arg("near_max_gain") = 0.80,
        py::arg("allow_negation") = true, py::arg("budget") = 1'000'000);

  m.def(
      "solve",
      [](const std::string& definition, Dataset& ds, const std::string& query, bool all, bool intensional,
         std::uint64_t budget) {
        const Definition def = parse_prolog_definition(definition, *ds.symbols);
        const Query q = parse_query(query, *ds.symbols);
        const EvalResult r = solve(q, def, ds, options(intensional, budget));
        py::dict out;
        std::vector<Row> answers;
        for (const auto& a : r.answers) {
          answers.push_back(names(ds, a));
          if (!all) break;
        }
        out["answers"] = answers;
        out["goal_count"] = r.goal_count;
        out["budget_exhausted"] = r.budget_exhausted;
        out["error"] = r.error;
        return out;
      },
      py::arg("definition"), py::arg("dataset"), py::arg("query"), py::kw_only(), py::arg("all") = false,
      py::arg("intensional") = false, py::arg("budget") = 1'000'000,
      "Answers a query such as 'plus(1,1,X)' with a definition in Prolog text.");

  m.def(
      "score",
      [](const std::string& definition, Dataset& ds, const std::vector<Row>& tuples, bool intensional,
         std::uint64_t budget) {
        const Definition def = parse_prolog_definition(definition, *ds.symbols);
        std::vector<Tuple> tests;
        for (const auto& row : tuples) tests.push_back(ids(ds, row));
        const EvalOptions o = options(intensional, budget);
        return (def.ordered ? score(def, tests, ds, o) : score_ground(def, tests, ds, o)).accuracy;
      },
      py::arg("definition"), py::arg("dataset"), py::arg("tuples"), py::kw_only(), py::arg("intensional") = false,
      py::arg("budget") = 1'000'000,
      "Fraction of tuples answered correctly: by standard query for ordered definitions, by ground checks otherwise.");
}
