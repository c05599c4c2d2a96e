#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "paraholo/cli.hpp"

int main(int argc, char** argv) {
  using namespace paraholo;
  CLI::App app{"para-complex geometry checks"};
  app.require_subcommand(1);

  RunConfig cfg;
  double tolerance = 0.0;
  std::string samples;
  for (const auto& name : subcommands()) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("--input", cfg.input, "problem file (JSON)")->required()->check(CLI::ExistingFile);
    sub->add_option("--tolerance", tolerance, "override the problem tolerance")->check(CLI::PositiveNumber);
    sub->add_option("--output", cfg.output, "write the report here instead of stdout");
    sub->add_option("--format", cfg.format, "json or text")->check(CLI::IsMember({"json", "text"}));
    sub->add_option("--constant-c", cfg.constant_c, "gravitational constant c");
    sub->add_option("--samples", samples, "sample points as JSON, [[[re,im],...],...]");
    sub->callback([&cfg, name] { cfg.subcommand = name; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : exit_input_error;
  }
  if (tolerance > 0.0) cfg.tolerance = tolerance;
  if (!samples.empty()) {
    try {
      Json j = Json::parse(samples);
      const int n = j.is_array() && !j.empty() && j[0].is_array() ? int(j[0].size()) : 0;
      cfg.samples = detail::get_samples(j, "--samples", std::max(n, 1));
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << "\n";
      return exit_input_error;
    }
  }

  RunResult r = run(cfg);
  if (!r.report) {
    std::cerr << "error: " << r.error << "\n";
    return r.status;
  }
  const std::string text = render(*r.report, cfg.format);
  if (cfg.output.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(cfg.output);
    if (!out) {
      std::cerr << "error: cannot write " << cfg.output << "\n";
      return exit_input_error;
    }
    out << text;
  }
  return r.status;
}
