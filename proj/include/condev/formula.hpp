#pragma once

#include <condev/events.hpp>

#include <cassert>
#include <memory>
#include <string>

namespace condev {

enum class fop : std::uint8_t {
  tru,
  fls,
  var,
  lnot,
  lor,
  land,
  imp,
  iff,
  prev,  // previously (one step back)
  since, // left Since right
  once,  // somewhere in the past
  hist,  // always in the past
};

inline bool is_unary(fop k) { return k == fop::lnot || k == fop::prev || k == fop::once || k == fop::hist; }
inline bool is_binary(fop k) {
  return k == fop::lor || k == fop::land || k == fop::imp || k == fop::iff || k == fop::since;
}

/// Immutable formula over an ambient event set; variables are event indices.
class formula {
public:
  formula() : formula(truth(false)) {}

  static formula truth(bool b) { return formula(std::make_shared<node>(b ? fop::tru : fop::fls)); }
  static formula var(std::size_t event_index) {
    auto n = std::make_shared<node>(fop::var);
    n->var = event_index;
    return formula(std::move(n));
  }
  static formula lnot(formula a) { return unary(fop::lnot, std::move(a)); }
  static formula prev(formula a) { return unary(fop::prev, std::move(a)); }
  static formula once(formula a) { return unary(fop::once, std::move(a)); }
  static formula hist(formula a) { return unary(fop::hist, std::move(a)); }
  static formula lor(formula a, formula b) { return binary(fop::lor, std::move(a), std::move(b)); }
  static formula land(formula a, formula b) { return binary(fop::land, std::move(a), std::move(b)); }
  static formula imp(formula a, formula b) { return binary(fop::imp, std::move(a), std::move(b)); }
  static formula iff(formula a, formula b) { return binary(fop::iff, std::move(a), std::move(b)); }
  static formula since(formula a, formula b) { return binary(fop::since, std::move(a), std::move(b)); }

  fop kind() const { return node_->kind; }
  std::size_t var_index() const {
    assert(node_->kind == fop::var);
    return node_->var;
  }
  formula left() const { return formula(node_->left); }
  formula right() const { return formula(node_->right); }

  /// Largest referenced event index + 1 (0 for closed formulas).
  std::size_t min_event_count() const {
    switch (kind()) {
    case fop::tru:
    case fop::fls: return 0;
    case fop::var: return var_index() + 1;
    default: {
      std::size_t m = left().min_event_count();
      if (is_binary(kind()))
        m = std::max(m, right().min_event_count());
      return m;
    }
    }
  }

private:
  struct node {
    explicit node(fop k) : kind(k) {}
    fop kind;
    std::size_t var = 0;
    std::shared_ptr<const node> left, right;
  };

  explicit formula(std::shared_ptr<const node> n) : node_(std::move(n)) {}

  static formula unary(fop k, formula a) {
    auto n = std::make_shared<node>(k);
    n->left = a.node_;
    return formula(std::move(n));
  }
  static formula binary(fop k, formula a, formula b) {
    auto n = std::make_shared<node>(k);
    n->left = a.node_;
    n->right = b.node_;
    return formula(std::move(n));
  }

  std::shared_ptr<const node> node_;
};

/// A conditional pair (consequent | antecedent).
struct cond {
  formula consequent; // phi
  formula antecedent; // psi
};

/// Rewrites derived connectives into the core {true,false,var,not,or,prev,since}.
/// once f = true S f; hist f = not (true S not f); and/imp/iff via not/or.
inline formula expand(const formula& f) {
  switch (f.kind()) {
  case fop::tru:
  case fop::fls:
  case fop::var: return f;
  case fop::lnot: return formula::lnot(expand(f.left()));
  case fop::prev: return formula::prev(expand(f.left()));
  case fop::lor: return formula::lor(expand(f.left()), expand(f.right()));
  case fop::since: return formula::since(expand(f.left()), expand(f.right()));
  case fop::once: return formula::since(formula::truth(true), expand(f.left()));
  case fop::hist:
    return formula::lnot(formula::since(formula::truth(true), formula::lnot(expand(f.left()))));
  case fop::land:
    return formula::lnot(formula::lor(formula::lnot(expand(f.left())), formula::lnot(expand(f.right()))));
  case fop::imp: return formula::lor(formula::lnot(expand(f.left())), expand(f.right()));
  case fop::iff: {
    auto a = expand(f.left());
    auto b = expand(f.right());
    auto ab = formula::lor(formula::lnot(a), b);
    auto ba = formula::lor(formula::lnot(b), a);
    return formula::lnot(formula::lor(formula::lnot(ab), formula::lnot(ba)));
  }
  }
  throw internal_error("unhandled formula kind");
}

namespace detail {

// Precedence levels, loosest first: <-> , -> , or , and , S , unary.
inline int precedence(fop k) {
  switch (k) {
  case fop::iff: return 1;
  case fop::imp: return 2;
  case fop::lor: return 3;
  case fop::land: return 4;
  case fop::since: return 5;
  case fop::lnot:
  case fop::prev:
  case fop::once:
  case fop::hist: return 6;
  default: return 7;
  }
}

inline void print(const formula& f, const event_set& es, int parent_level, bool right_operand,
                  std::string& out) {
  const int level = precedence(f.kind());
  // or/and/S are parsed left-associative; -> and <-> associate to the right.
  const bool left_assoc = f.kind() == fop::lor || f.kind() == fop::land || f.kind() == fop::since;
  const bool right_assoc = f.kind() == fop::imp || f.kind() == fop::iff;
  const bool needs_parens = level < parent_level ||
      (level == parent_level && right_operand && left_assoc) ||
      (level == parent_level && !right_operand && right_assoc);
  if (needs_parens)
    out += '(';
  switch (f.kind()) {
  case fop::tru: out += "true"; break;
  case fop::fls: out += "false"; break;
  case fop::var: out += es.name(f.var_index()); break;
  case fop::lnot:
    out += "not ";
    print(f.left(), es, level, false, out);
    break;
  case fop::prev:
    out += "Y ";
    print(f.left(), es, level, false, out);
    break;
  case fop::once:
    out += "once ";
    print(f.left(), es, level, false, out);
    break;
  case fop::hist:
    out += "hist ";
    print(f.left(), es, level, false, out);
    break;
  default: {
    const char* sym = nullptr;
    switch (f.kind()) {
    case fop::lor: sym = " or "; break;
    case fop::land: sym = " and "; break;
    case fop::imp: sym = " -> "; break;
    case fop::iff: sym = " <-> "; break;
    case fop::since: sym = " S "; break;
    default: throw internal_error("unhandled operator");
    }
    print(f.left(), es, level, false, out);
    out += sym;
    print(f.right(), es, level, true, out);
    break;
  }
  }
  if (needs_parens)
    out += ')';
}

} // namespace detail

inline std::string to_string(const formula& f, const event_set& es) {
  std::string out;
  detail::print(f, es, 0, false, out);
  return out;
}

inline std::string to_string(const cond& c, const event_set& es) {
  return "(" + to_string(c.consequent, es) + " | " + to_string(c.antecedent, es) + ")";
}

} // namespace condev
