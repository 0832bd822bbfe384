#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "filex/cli.hpp"

int main(int argc, char** argv) {
  using namespace filex;

  CLI::App app{"filex: finite-lexicon self-reinforcing process simulator"};
  app.require_subcommand(1);

  cli::CommonOptions opts;
  std::string mode_name;
  std::string preset_name = "full";
  std::uint64_t seed = 0;

  auto add_run_flags = [&](CLI::App* sub) {
    sub->add_option("--mode", mode_name, "sampler: reference or fast")
        ->check(CLI::IsMember({"reference", "fast"}));
    sub->add_option("--seed", seed, "override the configured seed");
  };

  std::string config_path, out_path;
  bool print_distribution = false;

  auto* run = app.add_subcommand("run", "simulate one process and print its entropy");
  run->add_option("--config", config_path, "single-run config file")->required();
  run->add_flag("--distribution", print_distribution, "also print the normalized weights");
  add_run_flags(run);

  auto* sweep = app.add_subcommand("sweep", "run an experiment sweep and write a CSV");
  sweep->add_option("--config", config_path, "experiment config file")->required();
  sweep->add_option("--out", out_path, "output CSV path")->required();
  sweep->add_option("--preset", preset_name, "sweep density")
      ->check(CLI::IsMember({"full", "reduced"}));
  sweep->add_option("--workers", opts.workers, "worker threads")
      ->check(CLI::PositiveNumber);
  add_run_flags(sweep);

  std::vector<std::string> csv_paths;
  auto* table = app.add_subcommand("table", "print Kendall tau per experiment");
  table->add_option("csv", csv_paths, "sweep CSV files")->required()->check(CLI::ExistingFile);

  std::string plot_csv;
  bool linear_x = false;
  std::size_t lexicon_size = 0;
  auto* plot = app.add_subcommand("plot", "render a sweep CSV as an SVG scatter plot");
  plot->add_option("csv", plot_csv, "sweep CSV file")->required();
  plot->add_option("--out", out_path, "output SVG path")->required();
  plot->add_flag("--linear-x", linear_x, "linear instead of logarithmic x axis");
  plot->add_option("--lexicon-size", lexicon_size, "S used for the y range (default: inferred)")
      ->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return cli::kUsageError;
  }

  if (!mode_name.empty()) opts.mode = mode_name == "fast" ? Mode::fast : Mode::reference;
  if (preset_name == "reduced") opts.preset = Preset::reduced;
  if (app.got_subcommand(run) || app.got_subcommand(sweep)) {
    auto* sub = app.got_subcommand(run) ? run : sweep;
    if (sub->count("--seed")) opts.seed = seed;
  }

  try {
    if (app.got_subcommand(run))
      return cli::cmd_run(config_path, opts, print_distribution, std::cout, std::cerr);
    if (app.got_subcommand(sweep))
      return cli::cmd_sweep(config_path, out_path, opts, std::cerr);
    if (app.got_subcommand(table)) return cli::cmd_table(csv_paths, std::cout, std::cerr);
    if (app.got_subcommand(plot)) {
      std::optional<std::size_t> s;
      if (plot->count("--lexicon-size")) s = lexicon_size;
      return cli::cmd_plot(plot_csv, out_path, linear_x, s, std::cerr);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return cli::kRuntimeError;
  }
  return cli::kUsageError;
}
