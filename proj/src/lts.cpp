#include "gamebpa/lts.hpp"

#include "gamebpa/parser.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace gamebpa {

StateLimitError::StateLimitError(std::size_t cap)
    : std::runtime_error("state cap of " + std::to_string(cap) + " exceeded") {}

namespace {

int compare_transition(const TermTransition& a, const TermTransition& b) {
  if (a.label != b.label) return a.label < b.label ? -1 : 1;
  if (!a.target || !b.target) {
    if (!a.target && !b.target) return 0;
    return !a.target ? -1 : 1;  // termination sorts before continuations
  }
  return compare(*a.target, *b.target);
}

void collect_transitions(const Term& t, std::vector<TermTransition>& out) {
  switch (t.kind()) {
    case TermKind::Deadlock:
      return;
    case TermKind::Action:
      out.push_back({t.label(), std::nullopt});
      return;
    case TermKind::Alt:
    case TermKind::OppAlt:
      collect_transitions(t.left(), out);
      collect_transitions(t.right(), out);
      return;
    case TermKind::Seq: {
      std::vector<TermTransition> first;
      collect_transitions(t.left(), first);
      for (auto& tr : first) {
        Term next = tr.target ? Term::seq(*tr.target, t.right()) : t.right();
        out.push_back({tr.label, next});
      }
      return;
    }
    case TermKind::Play: {
      std::vector<TermTransition> ls, rs;
      collect_transitions(t.left(), ls);
      collect_transitions(t.right(), rs);
      for (const auto& a : ls) {
        for (const auto& b : rs) {
          if (a.label != b.label) continue;
          if (!a.target && !b.target)
            out.push_back({a.label, std::nullopt});
          else if (!a.target)
            out.push_back({a.label, *b.target});
          else if (!b.target)
            out.push_back({a.label, *a.target});
          else
            out.push_back({a.label, Term::play(*a.target, *b.target)});
        }
      }
      return;
    }
  }
}

}  // namespace

std::vector<TermTransition> transitions(const Term& t) {
  std::vector<TermTransition> out;
  collect_transitions(t, out);
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return compare_transition(a, b) < 0;
  });
  out.erase(std::unique(out.begin(), out.end(),
                        [](const auto& a, const auto& b) {
                          return compare_transition(a, b) == 0;
                        }),
            out.end());
  return out;
}

Lts build_lts(const Term& t, const LtsOptions& opts) {
  Lts lts;
  struct Less {
    bool operator()(const Term& a, const Term& b) const { return compare(a, b) < 0; }
  };
  std::map<Term, StateId, Less> index;

  auto intern = [&](const Term& canonical) {
    auto it = index.find(canonical);
    if (it != index.end()) return it->second;
    if (lts.states.size() >= opts.state_cap) throw StateLimitError(opts.state_cap);
    StateId id = lts.states.size();
    lts.states.push_back(canonical);
    index.emplace(canonical, id);
    return id;
  };

  intern(ac_flatten(t));
  for (StateId cur = 0; cur < lts.states.size(); ++cur) {
    // states grows while we scan; plain index loop doubles as the BFS queue
    std::set<std::pair<ActionLabel, StateId>> seen_edges;
    std::set<ActionLabel> seen_terminations;
    for (const auto& tr : transitions(lts.states[cur])) {
      if (!tr.target) {
        if (seen_terminations.insert(tr.label).second)
          lts.terminating.emplace_back(cur, tr.label);
      } else {
        StateId to = intern(ac_flatten(*tr.target));
        if (seen_edges.emplace(tr.label, to).second)
          lts.transitions.push_back({cur, tr.label, to});
      }
    }
  }
  return lts;
}

namespace {

// Partition refinement over the disjoint union of two LTSs plus one tick state.
// Successful termination is modelled as an edge into the tick state, which
// starts in its own block so it can never merge with ordinary stuck states.
struct BisimUniverse {
  std::size_t n_total;           // real states + tick
  StateId tick;
  StateId root_a, root_b;
  std::size_t offset_b;
  // outgoing edges, sorted by (label, to)
  std::vector<std::vector<std::pair<ActionLabel, StateId>>> edges;
  std::vector<std::size_t> block;

  BisimUniverse(const Lts& a, const Lts& b) {
    offset_b = a.states.size();
    n_total = a.states.size() + b.states.size() + 1;
    tick = n_total - 1;
    root_a = a.root;
    root_b = offset_b + b.root;
    edges.resize(n_total);
    auto add = [&](const Lts& l, std::size_t off) {
      for (const auto& tr : l.transitions)
        edges[off + tr.from].emplace_back(tr.label, off + tr.to);
      for (const auto& [state, label] : l.terminating)
        edges[off + state].emplace_back(label, tick);
    };
    add(a, 0);
    add(b, offset_b);
    for (auto& es : edges) std::sort(es.begin(), es.end());

    block.assign(n_total, 0);
    block[tick] = 1;
    refine();
  }

  void refine() {
    std::size_t n_blocks = 2;
    for (;;) {
      using Signature = std::pair<std::size_t, std::set<std::pair<ActionLabel, std::size_t>>>;
      std::map<Signature, std::size_t> next_id;
      std::vector<std::size_t> next(n_total);
      for (StateId s = 0; s < n_total; ++s) {
        Signature sig{block[s], {}};
        for (const auto& [label, to] : edges[s]) sig.second.emplace(label, block[to]);
        auto [it, inserted] = next_id.emplace(sig, next_id.size());
        next[s] = it->second;
      }
      if (next_id.size() == n_blocks) break;
      n_blocks = next_id.size();
      block = std::move(next);
    }
  }

  bool same_block(StateId p, StateId q) const { return block[p] == block[q]; }
};

// Shortest action sequence certifying that p and q are not bisimilar. Closed
// terms generate acyclic LTSs, so the min-max recursion terminates.
struct WitnessSearch {
  const BisimUniverse& u;
  std::map<std::pair<StateId, StateId>, std::vector<ActionLabel>> memo;

  std::vector<ActionLabel> find(StateId p, StateId q) {
    auto key = std::minmax(p, q);
    if (auto it = memo.find(key); it != memo.end()) return it->second;

    auto labels = [&](StateId s) {
      std::set<ActionLabel> out;
      for (const auto& [label, to] : u.edges[s]) out.insert(label);
      return out;
    };
    std::set<ActionLabel> lp = labels(p), lq = labels(q);
    std::vector<ActionLabel> best;
    if (lp != lq) {
      std::vector<ActionLabel> diff;
      std::set_symmetric_difference(lp.begin(), lp.end(), lq.begin(), lq.end(),
                                    std::back_inserter(diff));
      best = {diff.front()};
    } else {
      auto succs = [&](StateId s, const ActionLabel& a) {
        std::vector<StateId> out;
        for (const auto& [label, to] : u.edges[s])
          if (label == a) out.push_back(to);
        return out;
      };
      // Attacker move: a successor no opposing successor is equivalent to.
      // The defender then maximizes the remaining length.
      auto consider = [&](StateId from, StateId other) {
        for (const auto& [label, to] : u.edges[from]) {
          auto replies = succs(other, label);
          bool unmatched = std::none_of(replies.begin(), replies.end(),
                                        [&](StateId r) { return u.same_block(to, r); });
          if (!unmatched) continue;
          std::vector<ActionLabel> worst;
          for (StateId r : replies) {
            auto w = find(to, r);
            if (w.size() > worst.size()) worst = std::move(w);
          }
          std::vector<ActionLabel> cand{label};
          cand.insert(cand.end(), worst.begin(), worst.end());
          if (best.empty() || cand.size() < best.size() ||
              (cand.size() == best.size() && cand < best))
            best = std::move(cand);
        }
      };
      consider(p, q);
      consider(q, p);
    }
    memo.emplace(key, best);
    return best;
  }
};

}  // namespace

BisimResult bisimilar(const Term& t, const Term& u, const LtsOptions& opts) {
  Lts a = build_lts(t, opts);
  Lts b = build_lts(u, opts);
  BisimUniverse universe(a, b);

  BisimResult result;
  result.equivalent = universe.same_block(universe.root_a, universe.root_b);
  if (result.equivalent) {
    for (StateId i = 0; i < a.states.size(); ++i)
      for (StateId j = 0; j < b.states.size(); ++j)
        if (universe.same_block(i, universe.offset_b + j))
          result.relation.emplace_back(i, j);
  } else {
    WitnessSearch search{universe, {}};
    result.witness = search.find(universe.root_a, universe.root_b);
  }
  return result;
}

std::string export_dot(const Lts& lts) {
  std::ostringstream os;
  os << "digraph lts {\n";
  os << "  rankdir=LR;\n";
  os << "  node [shape=circle];\n";
  for (StateId i = 0; i < lts.states.size(); ++i) {
    os << "  n" << i << " [label=\"" << print_term(lts.states[i]) << "\"";
    if (i == lts.root) os << ", style=bold";
    os << "];\n";
  }
  if (!lts.terminating.empty())
    os << "  tick [label=\"\", shape=doublecircle];\n";
  for (const auto& tr : lts.transitions)
    os << "  n" << tr.from << " -> n" << tr.to << " [label=\"" << tr.label.name
       << "\"];\n";
  for (const auto& [state, label] : lts.terminating)
    os << "  n" << state << " -> tick [label=\"" << label.name << "\"];\n";
  os << "}\n";
  return os.str();
}

nlohmann::json lts_to_json(const Lts& lts) {
  nlohmann::json states = nlohmann::json::array();
  for (const auto& s : lts.states) states.push_back(print_term(s));
  nlohmann::json transitions = nlohmann::json::array();
  for (const auto& tr : lts.transitions)
    transitions.push_back(
        {{"from", tr.from}, {"label", tr.label.name}, {"to", tr.to}});
  nlohmann::json terminating = nlohmann::json::array();
  for (const auto& [state, label] : lts.terminating)
    terminating.push_back({{"state", state}, {"label", label.name}});
  return {{"states", std::move(states)},
          {"root", lts.root},
          {"transitions", std::move(transitions)},
          {"terminating", std::move(terminating)}};
}

}  // namespace gamebpa
