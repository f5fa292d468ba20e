#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "pseudosun/cli/commands.hpp"

int main(int argc, char** argv) {
  namespace cli = pseudosun::cli;
  CLI::App app{"Pseudo-sunlight from CW-pumped down-conversion"};
  app.set_version_flag("--version", PSEUDOSUN_VERSION);
  app.require_subcommand(1);

  std::string config;
  std::string out_dir = ".";
  std::uint64_t seed = 0;
  std::string chosen;
  const char* about[] = {"occupation spectrum of the source and a thermal reference",
                         "fit source parameters to a target spectrum",
                         "unconditional density-matrix dynamics",
                         "density matrix after a herald click",
                         "coincidence signal for one herald time"};
  for (std::size_t i = 0; i < std::size(cli::kCommands); ++i) {
    const std::string_view name = cli::kCommands[i];
    CLI::App* sub = app.add_subcommand(std::string(name), about[i]);
    sub->add_option("--config", config, "JSON config file")->required();
    sub->add_option("--out", out_dir, "output directory");
    sub->add_option("--seed", seed, "seed for random herald sampling");
    sub->callback([&chosen, name] { chosen = name; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : cli::kExitConfig;
  }

  cli::RunContext ctx;
  ctx.out_dir = out_dir;
  if (app.get_subcommand(chosen)->count("--seed")) ctx.seed = seed;
  return cli::execute(chosen, config, ctx, std::cout, std::cerr);
}
