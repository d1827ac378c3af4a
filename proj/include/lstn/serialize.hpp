#pragma once

// Canonical text forms: the labeled compiled graph, the enumerated
// per-component graphs, and execution traces. Both compiled forms write
// edges in the same syntax, so their byte lengths are comparable.

#include <string>
#include <string_view>
#include <vector>

#include "lstn/baseline.hpp"
#include "lstn/compiler.hpp"
#include "lstn/dispatcher.hpp"
#include "lstn/plan.hpp"

namespace lstn {

namespace detail {

inline std::string render_header(const ChoiceSpace& space, const std::vector<std::string>& names) {
  std::string out;
  for (VarId v = 0; v < space.size(); ++v) {
    out += "var " + space.name(v) + " { ";
    const auto& opts = space.options(v);
    for (std::size_t i = 0; i < opts.size(); ++i) out += (i ? ", " : "") + opts[i];
    out += " }\n";
  }
  for (const auto& n : names) out += "event " + n + "\n";
  return out;
}

inline std::string render_members(const std::vector<VertexId>& members, const std::vector<std::string>& names) {
  std::string out = "{";
  for (std::size_t i = 0; i < members.size(); ++i) out += (i ? ", " : "") + names[members[i]];
  return out + "}";
}

inline void expect_format(std::string_view text, std::string_view header) {
  const auto nl = text.find('\n');
  std::string_view first = text.substr(0, nl);
  if (!first.empty() && first.back() == '\r') first.remove_suffix(1);
  if (first != header) throw ParseError(1, 1, "expected '" + std::string(header) + "'");
}

inline VertexId parse_name(LineLexer& lex, const std::vector<std::string>& names) {
  const auto t = lex.peek();
  const std::string n = lex.word("event name");
  for (VertexId v = 0; v < names.size(); ++v)
    if (names[v] == n) return v;
  lex.fail(t, "undeclared event '" + n + "'");
}

inline std::vector<VertexId> parse_members(LineLexer& lex, const std::vector<std::string>& names) {
  std::vector<VertexId> out;
  lex.expect('{');
  do {
    out.push_back(parse_name(lex, names));
  } while (lex.accept(','));
  lex.expect('}');
  std::sort(out.begin(), out.end());
  return out;
}

/// "{(v, {x=1}), ...}"
inline WeightSet parse_weight_set(LineLexer& lex, const ChoiceSpace& space) {
  WeightSet w;
  lex.expect('{');
  if (lex.accept('}')) return w;
  do {
    lex.expect('(');
    const double v = lex.number("weight");
    lex.expect(',');
    Environment e = parse_braced_env(lex, space);
    lex.expect(')');
    w.insert(v, e);
  } while (lex.accept(','));
  lex.expect('}');
  return w;
}

}  // namespace detail

inline constexpr std::string_view kLabeledFormat = "format labeled-dispatchable 1";
inline constexpr std::string_view kEnumeratedFormat = "format enumerated-dispatchable 1";

inline std::string render_compiled(const DispatchableForm& form) {
  const auto& g = form.graph;
  std::string out = std::string(kLabeledFormat) + "\n" + detail::render_header(g.space, g.names);
  for (const auto& [k, w] : g.weights) {
    const std::string r = w.render(g.space);
    if (r == "{}") continue;
    out += "edge " + g.names[k.first] + " " + g.names[k.second] + " " + r + "\n";
  }
  std::vector<ZeroGroup> groups = form.zero_related;
  std::sort(groups.begin(), groups.end(), [](const ZeroGroup& a, const ZeroGroup& b) {
    return a.members != b.members ? a.members < b.members : a.env < b.env;
  });
  for (const auto& z : groups)
    out += "zgroup " + detail::render_members(z.members, g.names) + render_constraint_env(g.space, z.env) + "\n";
  auto conflicts = form.conflicts.conflicts();
  std::sort(conflicts.begin(), conflicts.end());
  for (const auto& c : conflicts) out += "conflict " + g.space.render(c) + "\n";
  return out;
}

inline DispatchableForm parse_compiled(std::string_view text) {
  detail::expect_format(text, kLabeledFormat);
  DispatchableForm f;
  auto& g = f.graph;
  bool body = false;
  bool first = true;
  detail::for_each_line(text, [&](detail::LineLexer& lex) {
    if (first) {
      first = false;
      return;
    }
    const auto kw = lex.peek();
    const std::string word = lex.word("keyword");
    if (word == "var") {
      if (body) lex.fail(kw, "declaration after edges");
      detail::parse_var_decl(lex, g.space);
      return;
    }
    if (word == "event") {
      if (body) lex.fail(kw, "declaration after edges");
      const auto nt = lex.peek();
      std::string name = lex.word("event name");
      lex.expect_end();
      if (std::find(g.names.begin(), g.names.end(), name) != g.names.end())
        lex.fail(nt, "duplicate event '" + name + "'");
      g.names.push_back(std::move(name));
      return;
    }
    if (!body) {
      body = true;
      f.conflicts = ConflictDatabase(g.space);
    }
    if (word == "edge") {
      const VertexId u = detail::parse_name(lex, g.names);
      const VertexId v = detail::parse_name(lex, g.names);
      for (const auto& p : detail::parse_weight_set(lex, g.space)) g.add(u, v, p.value, p.env);
      lex.expect_end();
    } else if (word == "zgroup") {
      ZeroGroup z;
      z.members = detail::parse_members(lex, g.names);
      if (lex.peek().kind == detail::Token::Word) {
        const auto it = lex.peek();
        if (lex.word("'if'") != "if") lex.fail(it, "expected 'if'");
        z.env = detail::parse_assignments(lex, g.space);
      }
      lex.expect_end();
      f.zero_related.push_back(std::move(z));
    } else if (word == "conflict") {
      f.conflicts.add(detail::parse_braced_env(lex, g.space));
      lex.expect_end();
    } else {
      lex.fail(kw, "unknown keyword '" + word + "'");
    }
  });
  if (!body) f.conflicts = ConflictDatabase(g.space);
  return f;
}

inline std::string render_enumerated(const ChoiceSpace& space, const std::vector<std::string>& names,
                                     const std::vector<CompiledComponent>& comps) {
  std::string out = std::string(kEnumeratedFormat) + "\n" + detail::render_header(space, names);
  for (const auto& c : comps) {
    out += "component " + space.render(c.env) + "\n";
    const auto& w = c.graph.w;
    for (VertexId i = 0; i < w.size(); ++i)
      for (VertexId j = 0; j < w.size(); ++j)
        if (w[i][j] < kInf)
          out += "edge " + names[i] + " " + names[j] + " {(" + format_number(w[i][j]) + ", {})}\n";
    for (const auto& z : c.graph.zero_groups) out += "zgroup " + detail::render_members(z, names) + "\n";
  }
  return out;
}

struct EnumeratedForm {
  ChoiceSpace space;
  std::vector<std::string> names;
  std::vector<CompiledComponent> components;
};

inline EnumeratedForm parse_enumerated(std::string_view text) {
  detail::expect_format(text, kEnumeratedFormat);
  EnumeratedForm f;
  bool first = true;
  detail::for_each_line(text, [&](detail::LineLexer& lex) {
    if (first) {
      first = false;
      return;
    }
    const auto kw = lex.peek();
    const std::string word = lex.word("keyword");
    const bool body = !f.components.empty();
    if (word == "var" || word == "event") {
      if (body) lex.fail(kw, "declaration after components");
      if (word == "var") {
        detail::parse_var_decl(lex, f.space);
        return;
      }
      const auto nt = lex.peek();
      std::string name = lex.word("event name");
      lex.expect_end();
      if (std::find(f.names.begin(), f.names.end(), name) != f.names.end())
        lex.fail(nt, "duplicate event '" + name + "'");
      f.names.push_back(std::move(name));
      return;
    }
    if (word == "component") {
      CompiledComponent c;
      c.env = detail::parse_braced_env(lex, f.space);
      lex.expect_end();
      const std::size_t n = f.names.size();
      c.graph.w.assign(n, std::vector<double>(n, kInf));
      f.components.push_back(std::move(c));
      return;
    }
    if (!body) lex.fail(kw, "expected 'component' before '" + word + "'");
    auto& c = f.components.back();
    if (word == "edge") {
      const VertexId u = detail::parse_name(lex, f.names);
      const VertexId v = detail::parse_name(lex, f.names);
      for (const auto& p : detail::parse_weight_set(lex, f.space)) {
        if (!p.env.empty()) lex.fail(kw, "component edges carry no environment");
        c.graph.w[u][v] = std::min(c.graph.w[u][v], p.value);
      }
      lex.expect_end();
    } else if (word == "zgroup") {
      c.graph.zero_groups.push_back(detail::parse_members(lex, f.names));
      lex.expect_end();
    } else {
      lex.fail(kw, "unknown keyword '" + word + "'");
    }
  });
  return f;
}

inline std::string render_trace(const ExecutionTrace& tr, const ChoiceSpace& space,
                                const std::vector<std::string>& names) {
  std::string out;
  for (const auto& rec : tr.records) {
    out += "t=" + format_number(rec.time);
    for (const auto& s : rec.executed) out += " execute " + detail::render_members(s, names);
    for (const auto& c : rec.conflicts) out += " conflict " + space.render(c);
    out += "\n";
  }
  if (tr.completed) {
    out += "COMPLETED";
    for (VertexId v = 0; v < names.size(); ++v) out += " " + names[v] + "=" + format_number(*tr.schedule[v]);
    out += "\n";
  } else {
    out += "FAILED t=" + format_number(tr.end_time);
    if (!tr.failure_reason.empty()) out += " " + tr.failure_reason;
    if (tr.failing_conflict) out += " " + space.render(*tr.failing_conflict);
    out += "\n";
  }
  return out;
}

}  // namespace lstn
