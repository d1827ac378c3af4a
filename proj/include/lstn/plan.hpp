#pragma once

// Labeled STNs, DTNs, their text formats, and the labeled distance graph.

#include <cctype>
#include <charconv>
#include <cmath>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "lstn/environment.hpp"
#include "lstn/errors.hpp"
#include "lstn/labeled_value_set.hpp"

namespace lstn {

/// lower <= to - from <= upper whenever env holds.
struct LabeledConstraint {
  VertexId from = 0;
  VertexId to = 0;
  double lower = -kInf;
  double upper = kInf;
  Environment env;
  friend bool operator==(const LabeledConstraint&, const LabeledConstraint&) = default;
};

class LabeledSTN {
 public:
  ChoiceSpace space;
  std::vector<LabeledConstraint> constraints;

  VertexId add_event(std::string name) {
    if (name.empty()) throw InvalidInput("event name is empty");
    if (index_.count(name)) throw InvalidInput("duplicate event '" + name + "'");
    const auto id = static_cast<VertexId>(events_.size());
    index_.emplace(name, id);
    events_.push_back(std::move(name));
    return id;
  }

  std::optional<VertexId> find_event(std::string_view name) const {
    auto it = index_.find(std::string(name));
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  VertexId event(std::string_view name) const {
    auto id = find_event(name);
    if (!id) throw InvalidInput("unknown event '" + std::string(name) + "'");
    return *id;
  }

  const std::vector<std::string>& events() const { return events_; }
  std::size_t event_count() const { return events_.size(); }
  const std::string& event_name(VertexId v) const { return events_.at(v); }

  void add_constraint(LabeledConstraint c) {
    if (c.from >= events_.size() || c.to >= events_.size())
      throw InvalidInput("constraint endpoint out of range");
    space.validate(c.env);
    constraints.push_back(std::move(c));
  }

  /// Convenience: add_constraint("A", "B", l, u, {{"x", "1"}}).
  void add_constraint(std::string_view from, std::string_view to, double lower, double upper,
                      std::initializer_list<std::pair<std::string_view, std::string_view>> env = {}) {
    add_constraint(LabeledConstraint{event(from), event(to), lower, upper, space.environment(env)});
  }

  friend bool operator==(const LabeledSTN& a, const LabeledSTN& b) {
    return a.events_ == b.events_ && a.space == b.space && a.constraints == b.constraints;
  }

 private:
  std::vector<std::string> events_;
  std::unordered_map<std::string, VertexId> index_;
};

struct SimpleConstraint {
  VertexId from = 0;
  VertexId to = 0;
  double lower = -kInf;
  double upper = kInf;
  friend bool operator==(const SimpleConstraint&, const SimpleConstraint&) = default;
};

struct DTN {
  std::vector<std::string> events;
  std::vector<std::vector<SimpleConstraint>> constraints;
};

/// Vertices are dense ids; W(u, v) = w encodes v - u <= w.
class LabeledDistanceGraph {
 public:
  using Key = std::pair<VertexId, VertexId>;

  ChoiceSpace space;
  std::vector<std::string> names;
  std::map<Key, WeightSet> weights;

  std::size_t vertex_count() const { return names.size(); }

  const WeightSet* weight(VertexId u, VertexId v) const {
    auto it = weights.find({u, v});
    return it == weights.end() ? nullptr : &it->second;
  }

  bool add(VertexId u, VertexId v, double w, const Environment& env) {
    check(u, v);
    return weights[{u, v}].insert(w, env);
  }

  bool add(VertexId u, VertexId v, double w, const Environment& env, const ConflictDatabase& db) {
    check(u, v);
    if (db.is_subsumed(env)) return false;
    return weights[{u, v}].insert(w, env);
  }

  void remove_empty() {
    std::erase_if(weights, [](const auto& kv) { return kv.second.empty(); });
  }

  void purge_conflicted(const ConflictDatabase& db) {
    for (auto& [k, w] : weights) w.purge_conflicted(db);
    remove_empty();
  }

  void purge_unsatisfiable(const ConflictDatabase& db) {
    for (auto& [k, w] : weights) w.purge_unsatisfiable(db);
    remove_empty();
  }

  /// Smallest weight per edge under a complete environment; kInf if none.
  std::vector<std::vector<double>> project(const Environment& e) const {
    std::vector<std::vector<double>> m(vertex_count(), std::vector<double>(vertex_count(), kInf));
    for (const auto& [k, w] : weights)
      if (auto b = w.best_real(e)) m[k.first][k.second] = *b;
    return m;
  }

  std::size_t pair_count() const {
    std::size_t n = 0;
    for (const auto& [k, w] : weights) n += w.size();
    return n;
  }

  friend bool operator==(const LabeledDistanceGraph& a, const LabeledDistanceGraph& b) {
    return a.names == b.names && a.space == b.space && a.weights == b.weights;
  }

 private:
  void check(VertexId u, VertexId v) const {
    if (u >= vertex_count() || v >= vertex_count()) throw InvalidInput("vertex id out of range");
  }
};

inline LabeledDistanceGraph to_labeled_distance_graph(const LabeledSTN& plan) {
  LabeledDistanceGraph g;
  g.space = plan.space;
  g.names = plan.events();
  for (const auto& c : plan.constraints) {
    if (!std::isinf(c.upper)) g.add(c.from, c.to, c.upper, c.env);
    if (!std::isinf(c.lower)) g.add(c.to, c.from, -c.lower, c.env);
  }
  g.remove_empty();
  return g;
}

/// One fresh variable per constraint with two or more disjuncts. A DTN with
/// a single such constraint names it "x"; otherwise x1, x2, ...
inline LabeledSTN import_dtn(const DTN& d) {
  LabeledSTN plan;
  for (const auto& e : d.events) plan.add_event(e);
  std::size_t multi = 0;
  for (const auto& c : d.constraints) {
    if (c.empty()) throw InvalidInput("disjunctive constraint without disjuncts");
    if (c.size() > 1) ++multi;
  }
  std::size_t k = 0;
  for (const auto& c : d.constraints) {
    if (c.size() == 1) {
      plan.add_constraint({c[0].from, c[0].to, c[0].lower, c[0].upper, {}});
      continue;
    }
    ++k;
    std::vector<std::string> opts;
    for (std::size_t j = 1; j <= c.size(); ++j) opts.push_back(std::to_string(j));
    const VarId v = plan.space.add_variable(multi == 1 ? "x" : "x" + std::to_string(k), opts);
    for (std::size_t j = 0; j < c.size(); ++j) {
      Environment e;
      plan.space.assign(e, v, static_cast<OptId>(j));
      plan.add_constraint({c[j].from, c[j].to, c[j].lower, c[j].upper, e});
    }
  }
  return plan;
}

namespace detail {

struct Token {
  enum Kind { Word, Punct, End } kind = End;
  std::string text;
  std::size_t column = 0;
};

/// Splits one line into words and single-character punctuation. '#' ends the line.
class LineLexer {
 public:
  LineLexer(std::string_view line, std::size_t line_no) : line_(line), line_no_(line_no) { advance(); }

  const Token& peek() const { return tok_; }

  Token next() {
    Token t = tok_;
    advance();
    return t;
  }

  [[noreturn]] void fail(const Token& at, const std::string& what) const {
    throw ParseError(line_no_, at.column, what);
  }

  std::string word(const char* what) {
    if (tok_.kind != Token::Word) fail(tok_, std::string("expected ") + what);
    return next().text;
  }

  void expect(char c) {
    if (tok_.kind != Token::Punct || tok_.text[0] != c) fail(tok_, std::string("expected '") + c + "'");
    advance();
  }

  bool accept(char c) {
    if (tok_.kind == Token::Punct && tok_.text[0] == c) {
      advance();
      return true;
    }
    return false;
  }

  bool at_end() const { return tok_.kind == Token::End; }

  void expect_end() {
    if (!at_end()) fail(tok_, "unexpected '" + tok_.text + "'");
  }

  double number(const char* what) {
    const Token t = tok_;
    const std::string w = word(what);
    if (w == "inf" || w == "+inf") return kInf;
    if (w == "-inf") return -kInf;
    double v = 0;
    const char* first = w.data();
    if (*first == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, w.data() + w.size(), v);
    if (ec != std::errc{} || ptr != w.data() + w.size() || std::isnan(v)) fail(t, "bad number '" + w + "'");
    return v;
  }

  std::size_t line_no() const { return line_no_; }

 private:
  static bool word_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' || c == '-' || c == '+' ||
           c == ':' || c == '/' || static_cast<unsigned char>(c) >= 0x80;
  }

  void advance() {
    while (pos_ < line_.size() && std::isspace(static_cast<unsigned char>(line_[pos_]))) ++pos_;
    tok_ = Token{};
    tok_.column = pos_ + 1;
    if (pos_ >= line_.size() || line_[pos_] == '#') {
      tok_.kind = Token::End;
      return;
    }
    if (word_char(line_[pos_])) {
      const std::size_t start = pos_;
      while (pos_ < line_.size() && word_char(line_[pos_])) ++pos_;
      tok_.kind = Token::Word;
      tok_.text = std::string(line_.substr(start, pos_ - start));
      return;
    }
    tok_.kind = Token::Punct;
    tok_.text = std::string(1, line_[pos_++]);
  }

  std::string_view line_;
  std::size_t line_no_;
  std::size_t pos_ = 0;
  Token tok_;
};

template <typename F>
void for_each_line(std::string_view text, F&& f) {
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    LineLexer lex(line, line_no);
    if (!lex.at_end()) f(lex);
    if (nl == std::string_view::npos) break;
    text.remove_prefix(nl + 1);
  }
}

inline VertexId parse_event_ref(LineLexer& lex, const LabeledSTN& plan) {
  const Token t = lex.peek();
  const std::string name = lex.word("event name");
  auto id = plan.find_event(name);
  if (!id) lex.fail(t, "undeclared event '" + name + "'");
  return *id;
}

/// "x=a, y=b" up to end of line.
inline Environment parse_assignments(LineLexer& lex, const ChoiceSpace& space) {
  Environment e;
  do {
    const Token vt = lex.peek();
    const std::string var = lex.word("choice variable");
    auto v = space.find_variable(var);
    if (!v) lex.fail(vt, "undeclared choice variable '" + var + "'");
    lex.expect('=');
    const Token ot = lex.peek();
    const std::string opt = lex.word("option");
    auto o = space.find_option(*v, opt);
    if (!o) lex.fail(ot, "unknown option '" + opt + "' for '" + var + "'");
    if (e.assigns(*v)) lex.fail(vt, "variable '" + var + "' assigned twice");
    space.assign(e, *v, *o);
  } while (lex.accept(','));
  return e;
}

/// "{x=a, y=b}" or "{}".
inline Environment parse_braced_env(LineLexer& lex, const ChoiceSpace& space) {
  lex.expect('{');
  if (lex.accept('}')) return {};
  Environment e = parse_assignments(lex, space);
  lex.expect('}');
  return e;
}

inline void parse_interval(LineLexer& lex, double& lower, double& upper) {
  lex.expect('[');
  lower = lex.number("lower bound");
  lex.expect(',');
  upper = lex.number("upper bound");
  lex.expect(']');
}

inline void parse_var_decl(LineLexer& lex, ChoiceSpace& space) {
  const Token nt = lex.peek();
  std::string name = lex.word("variable name");
  lex.expect('{');
  std::vector<std::string> opts;
  do {
    opts.push_back(lex.word("option"));
  } while (lex.accept(','));
  lex.expect('}');
  lex.expect_end();
  try {
    space.add_variable(std::move(name), std::move(opts));
  } catch (const InvalidInput& e) {
    lex.fail(nt, e.what());
  }
}

inline void parse_event_decl(LineLexer& lex, LabeledSTN& plan) {
  const Token nt = lex.peek();
  std::string name = lex.word("event name");
  lex.expect_end();
  if (plan.find_event(name)) lex.fail(nt, "duplicate event '" + name + "'");
  plan.add_event(std::move(name));
}

}  // namespace detail

struct ParseOptions {
  bool reject_negative_upper = false;
  std::vector<std::string>* warnings = nullptr;
};

inline LabeledSTN parse_plan(std::string_view text, const ParseOptions& opts = {}) {
  LabeledSTN plan;
  detail::for_each_line(text, [&](detail::LineLexer& lex) {
    const auto kw = lex.peek();
    const std::string word = lex.word("keyword");
    if (word == "var") {
      detail::parse_var_decl(lex, plan.space);
    } else if (word == "event") {
      detail::parse_event_decl(lex, plan);
    } else if (word == "constraint") {
      LabeledConstraint c;
      c.from = detail::parse_event_ref(lex, plan);
      c.to = detail::parse_event_ref(lex, plan);
      const auto bt = lex.peek();
      detail::parse_interval(lex, c.lower, c.upper);
      if (lex.peek().kind == detail::Token::Word) {
        const auto it = lex.peek();
        if (lex.word("'if'") != "if") lex.fail(it, "expected 'if'");
        c.env = detail::parse_assignments(lex, plan.space);
      }
      lex.expect_end();
      if (c.upper < 0) {
        const std::string msg = std::to_string(lex.line_no()) + ":" + std::to_string(bt.column) +
                                ": negative upper bound";
        if (opts.reject_negative_upper) lex.fail(bt, "negative upper bound");
        if (opts.warnings) opts.warnings->push_back(msg);
      }
      plan.constraints.push_back(c);
    } else {
      lex.fail(kw, "unknown keyword '" + word + "'");
    }
  });
  return plan;
}

inline std::string render_constraint_env(const ChoiceSpace& space, const Environment& e) {
  std::string out;
  for (const auto& a : space.assignments(e)) {
    out += out.empty() ? " if " : ", ";
    out += space.name(a.var) + "=" + space.options(a.var)[a.opt];
  }
  return out;
}

inline std::string render_plan(const LabeledSTN& plan) {
  std::string out;
  for (VarId v = 0; v < plan.space.size(); ++v) {
    out += "var " + plan.space.name(v) + " { ";
    const auto& opts = plan.space.options(v);
    for (std::size_t i = 0; i < opts.size(); ++i) out += (i ? ", " : "") + opts[i];
    out += " }\n";
  }
  for (const auto& e : plan.events()) out += "event " + e + "\n";
  for (const auto& c : plan.constraints) {
    out += "constraint " + plan.event_name(c.from) + " " + plan.event_name(c.to) + " [" +
           format_number(c.lower) + ", " + format_number(c.upper) + "]" +
           render_constraint_env(plan.space, c.env) + "\n";
  }
  return out;
}

inline DTN parse_dtn(std::string_view text) {
  DTN d;
  std::unordered_map<std::string, VertexId> index;
  detail::for_each_line(text, [&](detail::LineLexer& lex) {
    const auto kw = lex.peek();
    const std::string word = lex.word("keyword");
    if (word == "event") {
      const auto nt = lex.peek();
      std::string name = lex.word("event name");
      lex.expect_end();
      if (index.count(name)) lex.fail(nt, "duplicate event '" + name + "'");
      index.emplace(name, static_cast<VertexId>(d.events.size()));
      d.events.push_back(std::move(name));
    } else if (word == "disj") {
      auto ref = [&]() {
        const auto t = lex.peek();
        const std::string n = lex.word("event name");
        auto it = index.find(n);
        if (it == index.end()) lex.fail(t, "undeclared event '" + n + "'");
        return it->second;
      };
      std::vector<SimpleConstraint> disjuncts;
      do {
        lex.expect('(');
        SimpleConstraint c;
        c.from = ref();
        c.to = ref();
        detail::parse_interval(lex, c.lower, c.upper);
        lex.expect(')');
        disjuncts.push_back(c);
      } while (lex.accept('|'));
      lex.expect_end();
      d.constraints.push_back(std::move(disjuncts));
    } else {
      lex.fail(kw, "unknown keyword '" + word + "'");
    }
  });
  return d;
}

inline std::string render_dtn(const DTN& d) {
  std::string out;
  for (const auto& e : d.events) out += "event " + e + "\n";
  for (const auto& c : d.constraints) {
    out += "disj";
    for (std::size_t j = 0; j < c.size(); ++j) {
      out += j ? " | (" : " (";
      out += d.events[c[j].from] + " " + d.events[c[j].to] + " [" + format_number(c[j].lower) + ", " +
             format_number(c[j].upper) + "])";
    }
    out += "\n";
  }
  return out;
}

}  // namespace lstn
