#pragma once

#include <condev/formula.hpp>
#include <condev/three_valued.hpp>

#include <cstdint>
#include <map>
#include <tuple>
#include <vector>

namespace condev {

namespace detail {

/// Flattened formula program evaluated one letter at a time.
///
/// Nodes are deduplicated structurally and stored children-first. Temporal
/// nodes own one memory bit holding, after each step, the value needed at the
/// next position: the argument's current value for "previously", the node's
/// own current value for Since/once/hist. All recurrences:
///   Y f      at s: false at s=0, else f(s-1)
///   f S g    at s: g(s) or (f(s) and (f S g)(s-1)), with (f S g)(0) = g(0)
///   once f   at s: f(s) or once(s-1)
///   hist f   at s: f(s) and hist(s-1)
class stepper {
public:
  explicit stepper(const std::vector<formula>& roots) {
    for (const auto& r : roots)
      root_ids_.push_back(intern(r));
  }

  std::size_t memory_bits() const { return memory_slots_; }
  std::size_t root_count() const { return root_ids_.size(); }

  /// Consumes one atom. `memory` has memory_bits() entries (ignored when
  /// `first`); updated in place. Returns the current value of every node;
  /// index by root id via root_value().
  void step(atom_t a, bool first, std::vector<bool>& memory, std::vector<bool>& values) const {
    values.resize(nodes_.size());
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
      const auto& n = nodes_[i];
      bool v = false;
      switch (n.kind) {
      case fop::tru: v = true; break;
      case fop::fls: v = false; break;
      case fop::var: v = (a >> n.var) & 1u; break;
      case fop::lnot: v = !values[n.left]; break;
      case fop::lor: v = values[n.left] || values[n.right]; break;
      case fop::land: v = values[n.left] && values[n.right]; break;
      case fop::imp: v = !values[n.left] || values[n.right]; break;
      case fop::iff: v = values[n.left] == values[n.right]; break;
      case fop::prev: v = first ? false : memory[n.slot]; break;
      case fop::since:
        v = values[n.right] || (values[n.left] && (first ? false : memory[n.slot]));
        break;
      case fop::once: v = values[n.left] || (first ? false : memory[n.slot]); break;
      case fop::hist: v = values[n.left] && (first ? true : memory[n.slot]); break;
      }
      values[i] = v;
    }
    memory.resize(memory_slots_);
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
      const auto& n = nodes_[i];
      if (n.kind == fop::prev)
        memory[n.slot] = values[n.left];
      else if (n.kind == fop::since || n.kind == fop::once || n.kind == fop::hist)
        memory[n.slot] = values[i];
    }
  }

  bool root_value(std::size_t root, const std::vector<bool>& values) const {
    return values[root_ids_[root]];
  }

private:
  struct node {
    fop kind;
    std::uint32_t var = 0;
    std::uint32_t left = 0, right = 0;
    std::uint32_t slot = 0;
  };

  std::uint32_t intern(const formula& f) {
    std::uint32_t l = 0, r = 0;
    if (is_unary(f.kind()) || is_binary(f.kind()))
      l = intern(f.left());
    if (is_binary(f.kind()))
      r = intern(f.right());
    const std::uint32_t var = f.kind() == fop::var ? static_cast<std::uint32_t>(f.var_index()) : 0;
    const auto key = std::make_tuple(f.kind(), var, l, r);
    auto it = index_.find(key);
    if (it != index_.end())
      return it->second;
    node n{f.kind(), var, l, r, 0};
    if (f.kind() == fop::prev || f.kind() == fop::since || f.kind() == fop::once ||
        f.kind() == fop::hist)
      n.slot = static_cast<std::uint32_t>(memory_slots_++);
    const auto id = static_cast<std::uint32_t>(nodes_.size());
    nodes_.push_back(n);
    index_.emplace(key, id);
    return id;
  }

  std::vector<node> nodes_;
  std::map<std::tuple<fop, std::uint32_t, std::uint32_t, std::uint32_t>, std::uint32_t> index_;
  std::vector<std::uint32_t> root_ids_;
  std::size_t memory_slots_ = 0;
};

} // namespace detail

/// Satisfaction at the last state of w.
inline bool eval_formula(const formula& f, const word& w) {
  if (w.empty())
    throw validation_error("models must be nonempty");
  detail::stepper st({f});
  std::vector<bool> memory, values;
  for (std::size_t i = 0; i < w.size(); ++i)
    st.step(w[i], i == 0, memory, values);
  return st.root_value(0, values);
}

/// Per-prefix values of (phi|psi): 1 if phi and psi, 0 if not-phi and psi,
/// undefined where psi fails.
inline std::vector<tri> trace_conditional(const cond& c, const word& w) {
  if (w.empty())
    throw validation_error("models must be nonempty");
  detail::stepper st({c.consequent, c.antecedent});
  std::vector<bool> memory, values;
  std::vector<tri> out;
  out.reserve(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) {
    st.step(w[i], i == 0, memory, values);
    const bool phi = st.root_value(0, values);
    const bool psi = st.root_value(1, values);
    out.push_back(psi ? tri_of(phi) : tri::undef);
  }
  return out;
}

inline tri eval_conditional(const cond& c, const word& w) {
  return trace_conditional(c, w).back();
}

} // namespace condev
