// knutson: command-line front end.  All argv parsing lives here; everything
// behind it (input resolution, computation, rendering, exit codes) is
// knutson::cli::dispatch, which the test suite drives directly.

#include <CLI11.hpp>

#include <knutson/cli.hpp>

#include <iostream>

int main(int argc, char** argv) {
  knutson::cli::RunConfig cfg;

  CLI::App app{"Knutson indices, regular inverses and Savitskii minimality for character tables and based rings"};
  app.require_subcommand(1);

  auto add_output = [&](CLI::App* sub) {
    sub->add_option("--format", cfg.format, "output format: json or pretty");
    sub->add_option("--out", cfg.out, "write the report to this file instead of stdout");
  };
  auto add_sources = [&](CLI::App* sub) {
    sub->add_option("--group", cfg.group, "group preset name, compound product like C2*S4, or group JSON path");
    sub->add_option("--ring", cfg.ring, "based-ring descriptor like (1^4,2) or ring JSON path");
    sub->add_option("--table", cfg.table, "character table JSON path");
    add_output(sub);
  };

  CLI::App* table = app.add_subcommand("table", "compute or load a character table");
  add_sources(table);

  CLI::App* index = app.add_subcommand("index", "Knutson index and regular inverse per character");
  add_sources(index);
  index->add_option("--char", cfg.chr, "single character row (0-based); default: all rows");
  index->add_flag("--oracle", cfg.oracle, "re-verify index minimality by the independent membership loop");
  index->add_flag("--sparse", cfg.sparse, "walk kernel directions toward a sparser inverse");

  CLI::App* invertible = app.add_subcommand("invertible", "regular-invertibility survey of a table");
  add_sources(invertible);

  CLI::App* sylow = app.add_subcommand("sylow", "Savitskii restriction/induction across Sylow subgroups");
  add_sources(sylow);
  sylow->add_option("--char", cfg.chr, "character row (0-based), required");

  CLI::App* minimal = app.add_subcommand("minimal", "Savitskii minimality verdicts with certificates");
  add_sources(minimal);
  minimal->add_option("--char", cfg.chr, "single character row (0-based); default: all rows");

  CLI::App* report = app.add_subcommand("savitskii-report", "invertibility against minimality, row by row");
  add_sources(report);

  CLI::App* ring_index = app.add_subcommand("ring-index", "Knutson index of a basis element of a based ring");
  add_sources(ring_index);
  ring_index->add_option("--basis", cfg.basis, "basis element index (0-based), required");

  CLI::App* survey = app.add_subcommand("survey", "index + minimality summary over a list of preset groups");
  survey->add_option("--group", cfg.survey_groups,
                     "preset to include (repeatable); default: the desk-scale survey list");
  add_output(survey);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return knutson::cli::EXIT_USAGE;
  }

  cfg.command = app.get_subcommands().front()->get_name();
  return knutson::cli::dispatch(cfg, std::cout, std::cerr);
}
