#include <iostream>

#include <CLI11.hpp>

#include "cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Build and certify Poisson pencils from a spec file", "involution-forge"};
  app.require_subcommand(1);

  iforge::cli::Options options;
  std::string spec_path;
  std::string format = "full";
  std::string pair;

  auto add = [&](const char* name, const char* help) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("spec", spec_path, "spec file, or a built-in fixture name")->required();
    sub->add_option("--seed", options.seed, "seed for every generic-point draw")->capture_default_str();
    sub->add_option("--format", format, "full (JSON report) or summary")
        ->check(CLI::IsMember({"full", "summary"}))
        ->capture_default_str();
    return sub;
  };
  add("check", "sigma conditions and recursion relations");
  add("pencil", "assembled bivectors and the full certificate");
  add("bracket", "{f,h}(lambda) through the closed formula")
      ->add_option("--pair", pair, "two family entries or expressions, comma separated")
      ->required();
  add("solve-ansatz", "parametric solution of the recursion ansatz");
  add("report", "everything");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : iforge::cli::input_error;
  }

  if (!pair.empty()) {
    auto comma = pair.find(',');
    if (comma == std::string::npos) {
      std::cerr << "--pair expects f,h\n";
      return iforge::cli::input_error;
    }
    options.pair = std::make_pair(pair.substr(0, comma), pair.substr(comma + 1));
  }
  options.format = format == "summary" ? iforge::cli::Format::summary : iforge::cli::Format::full;

  auto command = iforge::cli::parse_command(app.get_subcommands().front()->get_name());
  auto outcome = iforge::cli::run(*command, spec_path, options);
  std::cout << outcome.output;
  return outcome.status;
}
