#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "lstn/lstn.hpp"

using namespace lstn;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void emit(const std::string& out_path, const std::string& text) {
  if (out_path.empty() || out_path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw InvalidInput("cannot write " + out_path);
  out << text;
}

/// "2-11" or "2,4,6" or a mix.
std::vector<std::size_t> parse_range_list(const std::string& s) {
  std::vector<std::size_t> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto dash = item.find('-');
    try {
      if (dash == std::string::npos) {
        out.push_back(std::stoul(item));
      } else {
        const auto lo = std::stoul(item.substr(0, dash)), hi = std::stoul(item.substr(dash + 1));
        if (hi < lo) throw InvalidInput("empty range '" + item + "'");
        for (auto c = lo; c <= hi; ++c) out.push_back(c);
      }
    } catch (const std::logic_error&) {
      throw InvalidInput("bad choice list '" + s + "'");
    }
  }
  if (out.empty()) throw InvalidInput("empty choice list");
  return out;
}

struct Options {
  std::string in, in2, out;
  bool baseline = false;
  std::string policy;
  std::uint64_t seed = 0;
  double tick = 0;
  std::uint64_t cap = 4096;
  GeneratorParams gen;
  SuiteParams suite;
  std::string choices = "2-11";
};

int cmd_compile(const Options& o) {
  const auto plan = parse_plan(slurp(o.in));
  if (o.baseline) {
    const auto comps = compile_enumerated(plan, o.cap);
    if (comps.empty()) {
      std::cerr << "infeasible: no consistent component\n";
      return 1;
    }
    emit(o.out, render_enumerated(plan.space, plan.events(), comps));
    return 0;
  }
  const auto r = compile(plan);
  if (!r.feasible) {
    std::cerr << "infeasible: " << r.reason << "\n";
    return 1;
  }
  emit(o.out, render_compiled(r.form));
  return 0;
}

int cmd_dispatch(const Options& o) {
  const auto text = slurp(o.in);
  const bool enumerated = text.rfind(kEnumeratedFormat, 0) == 0;
  std::optional<DispatchableForm> form;
  std::optional<EnumeratedForm> comps;
  if (enumerated)
    comps = parse_enumerated(text);
  else
    form = parse_compiled(text);
  const auto& names = enumerated ? comps->names : form->graph.names;
  const auto& space = enumerated ? comps->space : form->graph.space;
  auto sc = parse_scenario(slurp(o.in2), names);
  if (!o.policy.empty()) {
    auto p = parse_policy(o.policy);
    if (!p) throw InvalidInput("unknown policy '" + o.policy + "'");
    sc.options.policy = *p;
  }
  if (o.seed) sc.options.seed = o.seed;
  if (o.tick > 0) sc.options.tick = o.tick;
  const auto tr = enumerated ? parallel_dispatch(comps->components, names.size(), sc.delays, sc.options)
                             : run(*form, sc.delays, sc.options);
  emit(o.out, render_trace(tr, space, names));
  return tr.completed ? 0 : 1;
}

int cmd_check(const Options& o) {
  const auto plan = parse_plan(slurp(o.in));
  std::size_t consistent = 0;
  std::string lines;
  for (const auto& c : enumerate_component_stns(plan, o.cap)) {
    lines += plan.space.render(c.env) + (c.consistent ? " consistent\n" : " inconsistent\n");
    consistent += c.consistent;
  }
  std::cout << consistent << " consistent components\n" << lines;
  return consistent ? 0 : 1;
}

int cmd_convert(const Options& o) {
  emit(o.out, render_plan(import_dtn(parse_dtn(slurp(o.in)))));
  return 0;
}

int cmd_generate(const Options& o) {
  emit(o.out, render_plan(generate(o.gen)));
  return 0;
}

int cmd_bench(Options o) {
  o.suite.choices = parse_range_list(o.choices);
  std::ostringstream csv;
  write_csv(csv, bench(o.suite));
  emit(o.out, csv.str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Labeled temporal plan compiler and dispatcher"};
  app.require_subcommand(1);
  Options o;

  auto* compile_cmd = app.add_subcommand("compile", "Compile a plan into its dispatchable form");
  compile_cmd->add_option("plan", o.in, "Plan file")->required();
  compile_cmd->add_option("-o,--out", o.out, "Output file (default stdout)");
  compile_cmd->add_flag("--baseline", o.baseline, "Compile every component separately");
  compile_cmd->add_option("--cap", o.cap, "Component enumeration cap");

  auto* dispatch_cmd = app.add_subcommand("dispatch", "Execute a compiled plan under a scenario");
  dispatch_cmd->add_option("compiled", o.in, "Compiled file")->required();
  dispatch_cmd->add_option("scenario", o.in2, "Scenario file")->required();
  dispatch_cmd->add_option("--policy", o.policy, "earliest, latest or random");
  dispatch_cmd->add_option("--seed", o.seed, "Seed for durations and the random policy");
  dispatch_cmd->add_option("--tick", o.tick, "Clock period");
  dispatch_cmd->add_option("-o,--out", o.out, "Trace file (default stdout)");

  auto* check_cmd = app.add_subcommand("check", "Report consistent components by enumeration");
  check_cmd->add_option("plan", o.in, "Plan file")->required();
  check_cmd->add_option("--cap", o.cap, "Component enumeration cap");

  auto* convert_cmd = app.add_subcommand("convert-dtn", "Convert a disjunctive network to a plan");
  convert_cmd->add_option("dtn", o.in, "DTN file")->required();
  convert_cmd->add_option("-o,--out", o.out, "Plan file (default stdout)");

  auto* gen_cmd = app.add_subcommand("generate", "Generate a random plan");
  gen_cmd->add_option("--choices", o.gen.choices, "Choice variables");
  gen_cmd->add_option("--arity", o.gen.arity, "Options per choice");
  gen_cmd->add_option("--events", o.gen.events, "Events");
  gen_cmd->add_option("--ratio", o.gen.ratio, "Constraints per event");
  gen_cmd->add_option("--weight-lo", o.gen.weight_lo, "Smallest step between reference times");
  gen_cmd->add_option("--weight-hi", o.gen.weight_hi, "Largest step between reference times");
  gen_cmd->add_option("--sharing", o.gen.sharing, "Fraction of constraints labeled {}");
  gen_cmd->add_option("--wild", o.gen.wild, "Fraction of labeled constraints drawn freely");
  gen_cmd->add_option("--seed", o.gen.seed, "Seed");
  gen_cmd->add_option("-o,--out", o.out, "Plan file (default stdout)");

  auto* bench_cmd = app.add_subcommand("bench", "Run both pipelines over a generated suite and write CSV");
  bench_cmd->add_option("--choices", o.choices, "Choice counts, e.g. 2-11 or 2,4,8");
  bench_cmd->add_option("--arity", o.suite.arity, "Options per choice");
  bench_cmd->add_option("--seeds", o.suite.seeds, "Instances per choice count");
  bench_cmd->add_option("--max-events", o.suite.max_events, "Event count cap");
  bench_cmd->add_option("--ratio", o.suite.ratio, "Constraints per event");
  bench_cmd->add_option("--sharing", o.suite.sharing, "Fraction of constraints labeled {}");
  bench_cmd->add_option("--wild", o.suite.wild, "Fraction of labeled constraints drawn freely");
  bench_cmd->add_option("--seed", o.suite.seed, "Base seed");
  bench_cmd->add_option("--repeats", o.suite.compile_repeats, "Compile repeats per pipeline");
  bench_cmd->add_option("-o,--out", o.out, "CSV file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*compile_cmd) return cmd_compile(o);
    if (*dispatch_cmd) return cmd_dispatch(o);
    if (*check_cmd) return cmd_check(o);
    if (*convert_cmd) return cmd_convert(o);
    if (*gen_cmd) return cmd_generate(o);
    if (*bench_cmd) return cmd_bench(o);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
