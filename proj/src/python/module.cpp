#include "gamebpa/game.hpp"
#include "gamebpa/lts.hpp"
#include "gamebpa/parser.hpp"
#include "gamebpa/rewrite.hpp"
#include "gamebpa/selftest.hpp"
#include "gamebpa/term.hpp"

#include <nlohmann/json.hpp>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace gamebpa;

namespace {

RewriteOptions make_rewrite_options(const std::string& mode, std::size_t step_cap) {
  RewriteOptions o;
  o.mode = mode == "p-view" ? RewriteMode::PView : RewriteMode::Full;
  o.step_cap = step_cap;
  return o;
}

py::object weight_as_int(const Term& t) {
  auto builtins = py::module_::import("builtins");
  return builtins.attr("int")(weight(t).str());
}

std::vector<std::string> sequence_names(const MoveSequence& moves) {
  std::vector<std::string> out;
  for (const auto& m : moves) out.push_back(m.name);
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Process terms with player/opponent choice: axiom-driven rewriting, "
            "transition semantics, bisimulation checking and game strategies.";

  py::register_exception<ParseError>(m, "ParseError");
  py::register_exception<GameError>(m, "GameError");
  py::register_exception<StepLimitError>(m, "StepLimitError");
  py::register_exception<StateLimitError>(m, "StateLimitError");

  py::class_<Term>(m, "Term")
      .def_static("action", [](const std::string& name) { return Term::action(name); })
      .def_static("deadlock", &Term::deadlock)
      .def_static("seq", &Term::seq)
      .def_static("alt", &Term::alt)
      .def_static("opp_alt", &Term::opp_alt)
      .def_static("play", &Term::play)
      .def_property_readonly("kind", [](const Term& t) { return kind_name(t.kind()); })
      .def_property_readonly("is_action", &Term::is_action)
      .def_property_readonly("is_deadlock", &Term::is_deadlock)
      .def_property_readonly("label",
                             [](const Term& t) { return t.label().name; })
      .def_property_readonly("left", &Term::left)
      .def_property_readonly("right", &Term::right)
      .def("__str__", &print_term)
      .def("__repr__",
           [](const Term& t) { return "Term('" + print_term(t) + "')"; })
      .def("__eq__", &structural_equal, py::is_operator());

  m.def("parse_term", [](const std::string& src) { return parse_term(src); });
  m.def("print_term", &print_term);
  m.def("ac_flatten", &ac_flatten);
  m.def("ac_equal", &ac_equal);
  m.def("weight", &weight_as_int);
  m.def("is_basic_term", &is_basic_term);

  py::class_<GameDeclaration>(m, "GameDeclaration")
      .def_property_readonly("players",
                             [](const GameDeclaration& d) {
                               std::vector<std::string> out;
                               for (const auto& r : d.players) out.push_back(r.name);
                               return out;
                             })
      .def("owner_of", [](const GameDeclaration& d, const std::string& label) {
        auto owner = d.owner_of(ActionLabel{label});
        return owner ? py::cast(owner->name) : py::none().cast<py::object>();
      });
  m.def("parse_game_decl",
        [](const std::string& src) { return parse_game_decl(src); });

  m.def(
      "validate_ownership",
      [](const Term& t, const GameDeclaration& d, const std::string& viewer) {
        std::vector<std::string> out;
        for (const auto& w : validate_ownership(t, d, Role{viewer}))
          out.push_back(w.message);
        return out;
      },
      py::arg("term"), py::arg("declaration"), py::arg("viewer"));

  py::class_<RewriteStep>(m, "RewriteStep")
      .def_property_readonly("rule",
                             [](const RewriteStep& s) { return rule_name(s.rule); })
      .def_readonly("position", &RewriteStep::position)
      .def_readonly("before", &RewriteStep::before)
      .def_readonly("after", &RewriteStep::after);

  py::class_<RewriteTrace>(m, "RewriteTrace")
      .def_readonly("initial", &RewriteTrace::initial)
      .def_readonly("final", &RewriteTrace::final)
      .def_readonly("steps", &RewriteTrace::steps)
      .def("to_json",
           [](const RewriteTrace& t) { return trace_to_json(t).dump(); });

  m.def(
      "normalize",
      [](const Term& t, const std::string& mode, std::size_t step_cap) {
        return normalize(t, make_rewrite_options(mode, step_cap));
      },
      py::arg("term"), py::arg("mode") = "full",
      py::arg("step_cap") = std::size_t{1'000'000});
  m.def(
      "rewrite_step",
      [](const Term& t, const std::string& mode) -> py::object {
        auto step = rewrite_step(t, make_rewrite_options(mode, 1));
        return step ? py::cast(*step) : py::none().cast<py::object>();
      },
      py::arg("term"), py::arg("mode") = "full");

  m.def("transitions", [](const Term& t) {
    std::vector<std::pair<std::string, py::object>> out;
    for (const auto& tr : transitions(t))
      out.emplace_back(tr.label.name, tr.target ? py::cast(*tr.target)
                                                : py::none().cast<py::object>());
    return out;
  });

  py::class_<Lts>(m, "Lts")
      .def_readonly("states", &Lts::states)
      .def_property_readonly("root", [](const Lts& l) { return l.root; })
      .def_property_readonly("transitions",
                             [](const Lts& l) {
                               std::vector<std::tuple<StateId, std::string, StateId>> out;
                               for (const auto& tr : l.transitions)
                                 out.emplace_back(tr.from, tr.label.name, tr.to);
                               return out;
                             })
      .def_property_readonly("terminating",
                             [](const Lts& l) {
                               std::vector<std::pair<StateId, std::string>> out;
                               for (const auto& [s, a] : l.terminating)
                                 out.emplace_back(s, a.name);
                               return out;
                             })
      .def("to_json", [](const Lts& l) { return lts_to_json(l).dump(); })
      .def("to_dot", [](const Lts& l) { return export_dot(l); });

  m.def(
      "build_lts",
      [](const Term& t, std::size_t state_cap) {
        return build_lts(t, LtsOptions{state_cap});
      },
      py::arg("term"), py::arg("state_cap") = std::size_t{100'000});

  py::class_<BisimResult>(m, "BisimResult")
      .def_readonly("equivalent", &BisimResult::equivalent)
      .def_readonly("relation", &BisimResult::relation)
      .def_property_readonly("witness", [](const BisimResult& r) {
        return sequence_names(r.witness);
      });

  m.def(
      "bisimilar",
      [](const Term& t, const Term& u, std::size_t state_cap) {
        return bisimilar(t, u, LtsOptions{state_cap});
      },
      py::arg("left"), py::arg("right"),
      py::arg("state_cap") = std::size_t{100'000});

  py::class_<GameTree>(m, "GameTree")
      .def_property_readonly("owner",
                             [](const GameTree& t) {
                               return t.owner ? py::cast(t.owner->name)
                                              : py::none().cast<py::object>();
                             })
      .def_property_readonly("moves",
                             [](const GameTree& t) {
                               std::vector<std::string> out;
                               for (const auto& [m_, sub] : t.children)
                                 out.push_back(m_.name);
                               return out;
                             })
      .def("child",
           [](const GameTree& t, const std::string& move) {
             for (const auto& [m_, sub] : t.children)
               if (m_.name == move) return sub;
             throw GameError("no child move '" + move + "'");
           })
      .def_property_readonly("is_leaf", &GameTree::is_leaf)
      .def("to_dot", [](const GameTree& t) { return export_dot(t); });

  m.def(
      "game_tree_from_term",
      [](const Term& t, const GameDeclaration& d, const std::string& viewer,
         bool strict) {
        GameTreeOptions opts;
        opts.strict = strict;
        auto result = game_tree_from_term(t, d, Role{viewer}, opts);
        return py::make_tuple(result.tree, result.warnings);
      },
      py::arg("term"), py::arg("declaration"), py::arg("viewer"),
      py::arg("strict") = false);

  py::class_<Strategy>(m, "Strategy")
      .def_property_readonly("role",
                             [](const Strategy& s) { return s.role.name; })
      .def_readonly("tree", &Strategy::tree)
      .def("to_term", &strategy_to_term)
      .def("to_json", [](const Strategy& s) { return strategy_to_json(s).dump(); });

  m.def("enumerate_strategies",
        [](const GameTree& tree, const std::string& role) {
          return enumerate_strategies(tree, Role{role});
        });
  m.def("count_strategies", [](const GameTree& tree, const std::string& role) {
    return count_strategies(tree, Role{role});
  });
  m.def("strategy_to_term", &strategy_to_term);

  py::class_<PlaySet>(m, "PlaySet")
      .def_property_readonly("traces",
                             [](const PlaySet& p) {
                               std::vector<std::vector<std::string>> out;
                               for (const auto& t : p.traces)
                                 out.push_back(sequence_names(t));
                               return out;
                             })
      .def_property_readonly("maximal", [](const PlaySet& p) {
        return p.maximal ? py::cast(sequence_names(*p.maximal))
                         : py::none().cast<py::object>();
      });

  m.def("intersect_strategies", &intersect_strategies);

  py::class_<PlayReport>(m, "PlayReport")
      .def_readonly("pass_", &PlayReport::pass)
      .def_readonly("play_term", &PlayReport::play_term)
      .def_property_readonly("maximal_trace",
                             [](const PlayReport& r) {
                               return sequence_names(r.maximal_trace);
                             })
      .def_readonly("trace", &PlayReport::trace)
      .def("to_json", [](const PlayReport& r) { return report_to_json(r).dump(); });

  m.def(
      "verify_play",
      [](const std::vector<Strategy>& strategies, const GameDeclaration& decl,
         const std::string& mode, std::size_t step_cap) {
        return verify_play(strategies, decl, make_rewrite_options(mode, step_cap));
      },
      py::arg("strategies"), py::arg("declaration"), py::arg("mode") = "full",
      py::arg("step_cap") = std::size_t{1'000'000});

  m.def(
      "run_selftest",
      [](std::uint64_t seed, std::size_t count) {
        SelftestConfig cfg;
        cfg.seed = seed;
        cfg.count = count;
        std::vector<py::dict> out;
        for (const auto& r : run_selftest(cfg)) {
          py::dict d;
          d["suite"] = r.name;
          d["cases"] = r.cases;
          d["failures"] = r.failures;
          d["seconds"] = r.seconds;
          out.push_back(std::move(d));
        }
        return out;
      },
      py::arg("seed") = std::uint64_t{42}, py::arg("count") = std::size_t{100});
}
