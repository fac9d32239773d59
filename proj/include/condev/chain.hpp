#pragma once

#include <condev/dist.hpp>
#include <condev/machine.hpp>
#include <condev/solve.hpp>

#include <json.hpp>

#include <algorithm>
#include <cstdint>
#include <deque>
#include <map>
#include <numeric>
#include <vector>

namespace condev {

/// Finite Markov chain over machine states, exact rational entries, with the
/// carried output map.
///
/// Step convention: step n describes the machine after n letters, so the
/// initial vector is already the distribution after the first letter (the
/// pre-letter state has mass 1 on the machine's initial state; we fold that
/// one step into `initial`).
struct markov_chain {
  std::vector<std::vector<rat>> p; // row-stochastic
  std::vector<rat> initial;
  std::vector<tri> output;

  std::size_t state_count() const { return output.size(); }
};

inline void validate(const markov_chain& x) {
  const std::size_t n = x.state_count();
  if (x.p.size() != n || x.initial.size() != n)
    throw validation_error("chain shape mismatch");
  rat s0 = 0;
  for (const auto& v : x.initial) {
    if (v < 0)
      throw validation_error("negative initial probability");
    s0 += v;
  }
  if (s0 != 1)
    throw validation_error("initial vector sums to " + to_string(s0) + ", expected 1");
  for (const auto& row : x.p) {
    if (row.size() != n)
      throw validation_error("chain matrix must be square");
    rat s = 0;
    for (const auto& v : row) {
      if (v < 0)
        throw validation_error("negative transition probability");
      s += v;
    }
    if (s != 1)
      throw validation_error("matrix row sums to " + to_string(s) + ", expected 1");
  }
}

/// p(q,q') = sum of Pr({w}) over atoms w with delta(q,w) = q'.
inline markov_chain induce(const moore_machine& m, const dist& d) {
  if (!(m.events == d.events))
    throw validation_error("machine and distribution use different event sets");
  markov_chain x;
  const std::size_t n = m.state_count();
  x.output = m.output;
  x.p.assign(n, std::vector<rat>(n, rat(0)));
  for (std::size_t q = 0; q < n; ++q)
    for (atom_t a = 0; a < m.events.atom_count(); ++a)
      x.p[q][m.next[q][a]] += d.prob[a];
  x.initial = x.p[m.initial];
  validate(x);
  return x;
}

/// Distribution of the state after n letters (exact): initial * P^(n-1).
inline std::vector<rat> n_step_distribution(const markov_chain& x, std::size_t n) {
  if (n < 1)
    throw validation_error("n must be at least 1");
  std::vector<rat> v = x.initial;
  std::vector<rat> next(v.size());
  for (std::size_t step = 1; step < n; ++step) {
    std::fill(next.begin(), next.end(), rat(0));
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (v[i] == 0)
        continue;
      for (std::size_t j = 0; j < v.size(); ++j)
        if (x.p[i][j] != 0)
          next[j] += v[i] * x.p[i][j];
    }
    std::swap(v, next);
  }
  return v;
}

/// Floating-point fast path for large n.
inline std::vector<double> n_step_distribution_fp(const markov_chain& x, std::size_t n) {
  if (n < 1)
    throw validation_error("n must be at least 1");
  const std::size_t size = x.state_count();
  std::vector<std::vector<double>> p(size, std::vector<double>(size));
  for (std::size_t i = 0; i < size; ++i)
    for (std::size_t j = 0; j < size; ++j)
      p[i][j] = to_double(x.p[i][j]);
  std::vector<double> v(size), next(size);
  for (std::size_t i = 0; i < size; ++i)
    v[i] = to_double(x.initial[i]);
  for (std::size_t step = 1; step < n; ++step) {
    std::fill(next.begin(), next.end(), 0.0);
    for (std::size_t i = 0; i < size; ++i) {
      if (v[i] == 0.0)
        continue;
      for (std::size_t j = 0; j < size; ++j)
        next[j] += v[i] * p[i][j];
    }
    std::swap(v, next);
  }
  return v;
}

enum class class_kind { ergodic, transient };

struct state_classification {
  std::vector<std::vector<std::uint32_t>> classes;
  std::vector<class_kind> kind;          // per class
  std::vector<std::uint64_t> period;     // per class; 0 for transient classes
  std::vector<std::uint32_t> class_of;   // per state
};

namespace detail {

/// Tarjan SCCs over the positive-probability edge graph; classes come out in
/// reverse topological order and are re-sorted by smallest member.
inline std::vector<std::vector<std::uint32_t>> positive_sccs(const markov_chain& x) {
  const std::size_t n = x.state_count();
  std::vector<std::vector<std::uint32_t>> adj(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (x.p[i][j] > 0)
        adj[i].push_back(static_cast<std::uint32_t>(j));

  std::vector<int> index(n, -1), low(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<std::uint32_t> stack;
  std::vector<std::vector<std::uint32_t>> sccs;
  int counter = 0;

  // Iterative Tarjan to stay safe on larger machines.
  struct frame {
    std::uint32_t v;
    std::size_t edge;
  };
  for (std::uint32_t root = 0; root < n; ++root) {
    if (index[root] != -1)
      continue;
    std::vector<frame> call{{root, 0}};
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!call.empty()) {
      auto& f = call.back();
      if (f.edge < adj[f.v].size()) {
        const auto w = adj[f.v][f.edge++];
        if (index[w] == -1) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = true;
          call.push_back({w, 0});
        } else if (on_stack[w]) {
          low[f.v] = std::min(low[f.v], index[w]);
        }
      } else {
        if (low[f.v] == index[f.v]) {
          std::vector<std::uint32_t> scc;
          for (;;) {
            const auto w = stack.back();
            stack.pop_back();
            on_stack[w] = false;
            scc.push_back(w);
            if (w == f.v)
              break;
          }
          std::sort(scc.begin(), scc.end());
          sccs.push_back(std::move(scc));
        }
        const auto v = f.v;
        call.pop_back();
        if (!call.empty())
          low[call.back().v] = std::min(low[call.back().v], low[v]);
      }
    }
  }
  std::sort(sccs.begin(), sccs.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  return sccs;
}

/// Period of a strongly connected class: gcd of depth(u) + 1 - depth(v) over
/// intra-class positive edges u -> v, with depths from a BFS layering.
inline std::uint64_t class_period(const markov_chain& x, const std::vector<std::uint32_t>& cls) {
  std::map<std::uint32_t, std::int64_t> depth;
  std::deque<std::uint32_t> queue{cls.front()};
  depth[cls.front()] = 0;
  std::vector<bool> in_class(x.state_count(), false);
  for (auto q : cls)
    in_class[q] = true;
  std::uint64_t g = 0;
  while (!queue.empty()) {
    const auto u = queue.front();
    queue.pop_front();
    for (std::size_t v = 0; v < x.state_count(); ++v) {
      if (x.p[u][v] == 0 || !in_class[v])
        continue;
      auto it = depth.find(static_cast<std::uint32_t>(v));
      if (it == depth.end()) {
        depth[static_cast<std::uint32_t>(v)] = depth[u] + 1;
        queue.push_back(static_cast<std::uint32_t>(v));
      } else {
        const std::int64_t diff = depth[u] + 1 - it->second;
        g = std::gcd(g, static_cast<std::uint64_t>(diff < 0 ? -diff : diff));
      }
    }
  }
  return g == 0 ? 1 : g;
}

} // namespace detail

/// Communication classes of the positive-edge graph; bottom classes are
/// ergodic, the rest transient. Periods only for ergodic classes.
inline state_classification classify_states(const markov_chain& x) {
  state_classification out;
  out.classes = detail::positive_sccs(x);
  const std::size_t n = x.state_count();
  out.class_of.assign(n, 0);
  for (std::uint32_t c = 0; c < out.classes.size(); ++c)
    for (auto q : out.classes[c])
      out.class_of[q] = c;
  out.kind.resize(out.classes.size());
  out.period.assign(out.classes.size(), 0);
  for (std::uint32_t c = 0; c < out.classes.size(); ++c) {
    bool bottom = true;
    for (auto q : out.classes[c])
      for (std::size_t j = 0; j < n && bottom; ++j)
        if (x.p[q][j] > 0 && out.class_of[j] != c)
          bottom = false;
    out.kind[c] = bottom ? class_kind::ergodic : class_kind::transient;
    if (bottom)
      out.period[c] = detail::class_period(x, out.classes[c]);
  }
  return out;
}

struct limit_vector {
  bool exists = false;
  std::vector<rat> value; // zero on transient and unreachable states
};

namespace detail {

inline std::vector<bool> reachable_from_initial(const markov_chain& x) {
  const std::size_t n = x.state_count();
  std::vector<bool> seen(n, false);
  std::deque<std::uint32_t> queue;
  for (std::size_t i = 0; i < n; ++i)
    if (x.initial[i] > 0) {
      seen[i] = true;
      queue.push_back(static_cast<std::uint32_t>(i));
    }
  while (!queue.empty()) {
    const auto u = queue.front();
    queue.pop_front();
    for (std::size_t v = 0; v < n; ++v)
      if (x.p[u][v] > 0 && !seen[v]) {
        seen[v] = true;
        queue.push_back(static_cast<std::uint32_t>(v));
      }
  }
  return seen;
}

/// Unique stationary vector of an irreducible closed class, by exact
/// elimination on pi (P - I) = 0 with the normalization row appended.
inline std::vector<rat> stationary_of_class(const markov_chain& x,
                                            const std::vector<std::uint32_t>& cls) {
  const std::size_t k = cls.size();
  std::vector<std::vector<rat>> a(k + 1, std::vector<rat>(k, rat(0)));
  std::vector<rat> b(k + 1, rat(0));
  for (std::size_t col = 0; col < k; ++col) {
    for (std::size_t row = 0; row < k; ++row)
      a[col][row] = x.p[cls[row]][cls[col]];
    a[col][col] -= 1;
  }
  for (std::size_t row = 0; row < k; ++row)
    a[k][row] = 1;
  b[k] = 1;
  return solve_unique(std::move(a), std::move(b));
}

} // namespace detail

/// Limit of the n-step distribution. Exists iff every ergodic class
/// reachable from the initial distribution is aperiodic; per-class mass is
/// the absorption probability, split within the class by its stationary
/// vector. Transient states get limit 0.
inline limit_vector limiting_distribution(const markov_chain& x) {
  const std::size_t n = x.state_count();
  const auto reach = detail::reachable_from_initial(x);
  const auto cls = classify_states(x);

  std::vector<std::uint32_t> ergodic_classes;
  for (std::uint32_t c = 0; c < cls.classes.size(); ++c) {
    if (cls.kind[c] != class_kind::ergodic)
      continue;
    if (!reach[cls.classes[c].front()])
      continue;
    if (cls.period[c] != 1)
      return limit_vector{false, {}};
    ergodic_classes.push_back(c);
  }

  // Reachable transient states feeding absorption.
  std::vector<std::uint32_t> transients;
  for (std::size_t q = 0; q < n; ++q)
    if (reach[q] && cls.kind[cls.class_of[q]] == class_kind::transient)
      transients.push_back(static_cast<std::uint32_t>(q));

  std::vector<std::size_t> tr_index(n, SIZE_MAX);
  for (std::size_t i = 0; i < transients.size(); ++i)
    tr_index[transients[i]] = i;

  limit_vector out;
  out.exists = true;
  out.value.assign(n, rat(0));

  for (auto c : ergodic_classes) {
    const auto& members = cls.classes[c];
    // Absorption probability from the initial distribution: direct mass plus
    // mass routed through transient states, via (I - Q) b = r.
    rat absorbed = 0;
    for (auto q : members)
      absorbed += x.initial[q];
    if (!transients.empty()) {
      const std::size_t t = transients.size();
      std::vector<std::vector<rat>> a(t, std::vector<rat>(t, rat(0)));
      std::vector<rat> r(t, rat(0));
      for (std::size_t i = 0; i < t; ++i) {
        for (std::size_t j = 0; j < t; ++j)
          a[i][j] = -x.p[transients[i]][transients[j]];
        a[i][i] += 1;
        for (auto q : members)
          r[i] += x.p[transients[i]][q];
      }
      const auto b = solve_unique(std::move(a), std::move(r));
      for (std::size_t i = 0; i < t; ++i)
        absorbed += x.initial[transients[i]] * b[i];
    }
    if (absorbed == 0)
      continue;
    const auto pi = detail::stationary_of_class(x, members);
    for (std::size_t i = 0; i < members.size(); ++i)
      out.value[members[i]] = absorbed * pi[i];
  }
  return out;
}

struct support_cycle {
  std::size_t preperiod = 0;                 // number of leading supports before the cycle
  std::vector<std::vector<bool>> cycle;      // supports R_n repeating forever
};

/// The support R_n of the n-step distribution evolves deterministically
/// under the positive-edge successor map, so it is eventually periodic.
inline support_cycle support_sequence(const markov_chain& x, std::size_t cap = std::size_t{1} << 20) {
  const std::size_t n = x.state_count();
  std::vector<bool> current(n, false);
  for (std::size_t i = 0; i < n; ++i)
    current[i] = x.initial[i] > 0;

  std::map<std::vector<bool>, std::size_t> seen; // support -> first index (0-based)
  std::vector<std::vector<bool>> history;
  for (std::size_t step = 0;; ++step) {
    if (step > cap)
      throw cap_exceeded("support sequence exceeded the iteration cap");
    auto it = seen.find(current);
    if (it != seen.end()) {
      support_cycle out;
      out.preperiod = it->second;
      out.cycle.assign(history.begin() + static_cast<std::ptrdiff_t>(it->second), history.end());
      return out;
    }
    seen.emplace(current, step);
    history.push_back(current);
    std::vector<bool> next(n, false);
    for (std::size_t i = 0; i < n; ++i) {
      if (!current[i])
        continue;
      for (std::size_t j = 0; j < n; ++j)
        if (x.p[i][j] > 0)
          next[j] = true;
    }
    current = std::move(next);
  }
}

inline nlohmann::json to_json(const markov_chain& x) {
  nlohmann::json j;
  j["step_convention"] =
      "step n is the distribution after n letters; the initial vector already "
      "accounts for the first letter";
  j["states"] = x.state_count();
  j["matrix"] = nlohmann::json::array();
  for (const auto& row : x.p) {
    nlohmann::json jr = nlohmann::json::array();
    for (const auto& v : row)
      jr.push_back(to_string(v));
    j["matrix"].push_back(jr);
  }
  j["initial"] = nlohmann::json::array();
  for (const auto& v : x.initial)
    j["initial"].push_back(to_string(v));
  j["outputs"] = nlohmann::json::array();
  for (tri t : x.output)
    j["outputs"].push_back(to_token(t));
  return j;
}

} // namespace condev
