#include <iostream>
#include <string>
#include <utility>

#include "CLI11.hpp"
#include "carnapkit/cli.hpp"

int main(int argc, char** argv) {
  carnap::RunConfig cfg;
  std::string budget;
  CLI::App app{"carnapkit: finite models for intuitionistic consequence"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for every command");

  auto common = [&](CLI::App* sub) {
    sub->add_flag("--witness", cfg.witness, "Print counterexample valuations");
    sub->add_flag("--porcelain", cfg.porcelain, "Tab-separated output");
    sub->add_option("--budget", budget, "Budget override: N or valuations=N,nodes=N,poset=N");
  };
  auto frame_opts = [&](CLI::App* sub) {
    sub->add_option("--poset", cfg.poset, "Poset file, inline:<text>, chain:N, antichain:N or vee");
    sub->add_option("--nucleus", cfg.nucleus, "kripke, beth, dd, top or file:<path>");
    sub->add_option("--topology", cfg.topology, "Topology file, inline:<text>, sierpinski, discrete:N or trivial:N");
    sub->add_option("--interp", cfg.interp, "standard, topological or holliday");
  };

  auto* prove = app.add_subcommand("prove", "Decide a consequence in IPC or CPC");
  prove->add_option("consequence", cfg.text, "e.g. \"p, p -> q |- q\"")->required();
  prove->add_option("--logic", cfg.logic, "ipc or cpc")->check(CLI::IsMember({"ipc", "cpc"}));
  prove->add_option("--max-size", cfg.max_size, "Largest countermodel searched")->check(CLI::Range(1, 7));
  common(prove);

  auto* frame = app.add_subcommand("frame", "Describe a nuclear frame, or the Dragalin frame of a space");
  frame_opts(frame);
  common(frame);

  auto* nucleus = app.add_subcommand("nucleus", "Validate a nucleus on a poset");
  frame_opts(nucleus);
  common(nucleus);

  auto* eval = app.add_subcommand("eval", "Evaluate a formula");
  eval->add_option("formula", cfg.text)->required();
  eval->add_option("--valuation", cfg.valuation, "e.g. \"p={1},q={}\" or \"p=a\" for algebras");
  eval->add_option("--algebra", cfg.algebra, "Evaluate in an algebra instead");
  frame_opts(eval);
  common(eval);

  auto* consistency = app.add_subcommand("consistency", "Check an interpretation against consequences");
  consistency->add_option("--mode", cfg.mode, "set-fmla or fmla-fmla")->check(CLI::IsMember({"set-fmla", "fmla-fmla"}));
  consistency->add_option("--consequence", cfg.consequences, "Consequence to check (repeatable; default: the probes)");
  frame_opts(consistency);
  common(consistency);

  auto* categoricity = app.add_subcommand("categoricity", "Determine which connective tables the probes force");
  categoricity->add_option("--engine", cfg.engine, "derive or exhaustive")->check(CLI::IsMember({"derive", "exhaustive"}));
  frame_opts(categoricity);
  common(categoricity);

  auto* holliday = app.add_subcommand("holliday", "Double-negation interpretation on a space");
  frame_opts(holliday);
  common(holliday);

  auto* atom_maps = app.add_subcommand("search-atom-maps", "Classify consistent atom maps on a small frame");
  frame_opts(atom_maps);
  atom_maps->add_option("--map-nodes", cfg.map_nodes, "Search nodes per atom map");
  common(atom_maps);

  auto* lab = app.add_subcommand("fmla-fmla-lab", "Conjunction tables under single-premise consistency");
  lab->add_option("--points", cfg.points, "Size of X")->check(CLI::Range(1, 3));
  lab->add_option("--family", cfg.family, "e.g. \"{},{0},{0,1}\" (default: all subsets)");
  common(lab);

  auto* algebra = app.add_subcommand("algebra", "Algebraic interpretations");
  algebra->require_subcommand(1);
  const std::pair<const char*, const char*> actions[] = {
      {"check", "Order, Heyting and Boolean checks"},
      {"consistency", "Check consequences against an algebra"},
      {"dummett", "Arrow a -> jb for a nucleus j, or search for non-Heyting ones"},
      {"force-heyting", "Heyting equations against their witnessing consequences"},
      {"force-boolean", "As force-heyting, with the complement laws"},
  };
  for (auto [name, help] : actions) {
    auto* sub = algebra->add_subcommand(name, help);
    sub->add_option("--algebra", cfg.algebra, "Algebra file, inline:<text>, chain:N or powerset:K");
    if (std::string(name) == "consistency") sub->add_option("--consequence", cfg.consequences, "Consequence (repeatable)");
    if (std::string(name) == "dummett") {
      sub->add_option("--j", cfg.j, "Nucleus images in carrier order, e.g. \"a a 1\"");
      sub->add_option("--search", cfg.search, "Search Heyting algebras up to this size instead")->check(CLI::Range(1, 5));
    }
    common(sub);
    sub->callback([&cfg, sub] { cfg.action = sub->get_name(); });
  }

  auto* accept = app.add_subcommand("accept", "Run an acceptance suite");
  accept->add_option("suite", cfg.text, "prover, nuclei, categoricity, dragalin, holliday, algebra or all")->required();
  common(accept);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return argc > 1 && std::string(argv[1]) == "prove" ? 2 : 3;
  }
  cfg.command = app.get_subcommands().front()->get_name();
  if (!budget.empty()) {
    try {
      cfg.budget = carnap::Budget::parse(budget);
    } catch (const carnap::Error& e) {
      std::cerr << "error: " << e.what() << "\n";
      return cfg.command == "prove" ? 2 : 3;
    }
  }
  auto result = carnap::run(cfg);
  (result.exit_code == 3 || (cfg.command == "prove" && result.report.rfind("error:", 0) == 0) ? std::cerr : std::cout) << result.report;
  return result.exit_code;
}
