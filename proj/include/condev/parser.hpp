#pragma once

#include <condev/formula.hpp>

#include <cctype>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace condev {

class parse_error : public std::runtime_error {
public:
  parse_error(const std::string& message, std::size_t position)
      : std::runtime_error(message + " (at position " + std::to_string(position) + ")"),
        position_(position) {}

  std::size_t position() const { return position_; }

private:
  std::size_t position_;
};

namespace detail {

enum class tok_kind { ident, kw_not, kw_and, kw_or, kw_true, kw_false, kw_prev, kw_since, kw_once, kw_hist, arrow, darrow, lparen, rparen, bar, end };

struct token {
  tok_kind kind;
  std::string text;
  std::size_t pos;
};

inline std::vector<token> tokenize(std::string_view text) {
  std::vector<token> out;
  std::size_t i = 0;
  while (i < text.size()) {
    const char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (c == '(') {
      out.push_back({tok_kind::lparen, "(", i++});
    } else if (c == ')') {
      out.push_back({tok_kind::rparen, ")", i++});
    } else if (c == '|') {
      out.push_back({tok_kind::bar, "|", i++});
    } else if (c == '!') {
      out.push_back({tok_kind::kw_not, "!", i++});
    } else if (text.compare(i, 3, "<->") == 0) {
      out.push_back({tok_kind::darrow, "<->", i});
      i += 3;
    } else if (text.compare(i, 2, "->") == 0) {
      out.push_back({tok_kind::arrow, "->", i});
      i += 2;
    } else if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t j = i + 1;
      while (j < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_'))
        ++j;
      std::string w{text.substr(i, j - i)};
      tok_kind k = tok_kind::ident;
      if (w == "not")
        k = tok_kind::kw_not;
      else if (w == "and")
        k = tok_kind::kw_and;
      else if (w == "or")
        k = tok_kind::kw_or;
      else if (w == "true")
        k = tok_kind::kw_true;
      else if (w == "false")
        k = tok_kind::kw_false;
      else if (w == "Y")
        k = tok_kind::kw_prev;
      else if (w == "S")
        k = tok_kind::kw_since;
      else if (w == "once")
        k = tok_kind::kw_once;
      else if (w == "hist")
        k = tok_kind::kw_hist;
      out.push_back({k, std::move(w), i});
      i = j;
    } else {
      throw parse_error(std::string("unexpected character '") + c + "'", i);
    }
  }
  out.push_back({tok_kind::end, "", text.size()});
  return out;
}

class formula_parser {
public:
  formula_parser(std::string_view text, const event_set& events)
      : tokens_(tokenize(text)), events_(events) {}

  formula parse_whole_formula() {
    formula f = parse_iff();
    expect_end();
    return f;
  }

  cond parse_whole_conditional() {
    expect(tok_kind::lparen, "expected '('");
    formula phi = parse_iff();
    if (peek().kind != tok_kind::bar)
      throw parse_error("expected '|' between consequent and antecedent", peek().pos);
    advance();
    formula psi = parse_iff();
    if (peek().kind == tok_kind::bar)
      throw parse_error("only one '|' is allowed in a conditional", peek().pos);
    expect(tok_kind::rparen, "expected ')'");
    expect_end();
    return cond{std::move(phi), std::move(psi)};
  }

private:
  const token& peek() const { return tokens_[pos_]; }
  void advance() { ++pos_; }

  void expect(tok_kind k, const char* message) {
    if (peek().kind != k)
      throw parse_error(message, peek().pos);
    advance();
  }

  void expect_end() {
    if (peek().kind != tok_kind::end)
      throw parse_error("unexpected trailing input '" + peek().text + "'", peek().pos);
  }

  formula parse_iff() {
    formula lhs = parse_imp();
    if (peek().kind == tok_kind::darrow) {
      advance();
      return formula::iff(std::move(lhs), parse_iff());
    }
    return lhs;
  }

  formula parse_imp() {
    formula lhs = parse_or();
    if (peek().kind == tok_kind::arrow) {
      advance();
      return formula::imp(std::move(lhs), parse_imp());
    }
    return lhs;
  }

  formula parse_or() {
    formula lhs = parse_and();
    while (peek().kind == tok_kind::kw_or) {
      advance();
      lhs = formula::lor(std::move(lhs), parse_and());
    }
    return lhs;
  }

  formula parse_and() {
    formula lhs = parse_since();
    while (peek().kind == tok_kind::kw_and) {
      advance();
      lhs = formula::land(std::move(lhs), parse_since());
    }
    return lhs;
  }

  formula parse_since() {
    formula lhs = parse_unary();
    while (peek().kind == tok_kind::kw_since) {
      advance();
      lhs = formula::since(std::move(lhs), parse_unary());
    }
    return lhs;
  }

  formula parse_unary() {
    const token& t = peek();
    switch (t.kind) {
    case tok_kind::kw_not:
      advance();
      return formula::lnot(parse_unary());
    case tok_kind::kw_prev:
      advance();
      return formula::prev(parse_unary());
    case tok_kind::kw_once:
      advance();
      return formula::once(parse_unary());
    case tok_kind::kw_hist:
      advance();
      return formula::hist(parse_unary());
    case tok_kind::kw_true:
      advance();
      return formula::truth(true);
    case tok_kind::kw_false:
      advance();
      return formula::truth(false);
    case tok_kind::ident: {
      auto idx = events_.index_of(t.text);
      if (!idx)
        throw parse_error("unknown event name '" + t.text + "'", t.pos);
      advance();
      return formula::var(*idx);
    }
    case tok_kind::lparen: {
      advance();
      formula f = parse_iff();
      expect(tok_kind::rparen, "expected ')'");
      return f;
    }
    case tok_kind::end:
      throw parse_error("unexpected end of input", t.pos);
    default:
      throw parse_error("unexpected token '" + t.text + "'", t.pos);
    }
  }

  std::vector<token> tokens_;
  std::size_t pos_ = 0;
  const event_set& events_;
};

} // namespace detail

inline formula parse_formula(std::string_view text, const event_set& events) {
  return detail::formula_parser(text, events).parse_whole_formula();
}

inline cond parse_conditional(std::string_view text, const event_set& events) {
  return detail::formula_parser(text, events).parse_whole_conditional();
}

} // namespace condev
