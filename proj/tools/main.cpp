#include <chrono>
#include <fstream>
#include <iostream>
#include <iterator>
#include <map>
#include <sstream>

#include <gmp.h>

#include <CLI11.hpp>

#include "commands.hpp"

namespace {

using extri::cli::json;

std::string read_source(const std::string& path) {
  if (path == "-") return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot read " + path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::string digest(const json& j) { return extri::io::hex64(extri::io::fnv1a(extri::io::canonical_dump(j))); }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"extri: exact triangles, Floer-type index bookkeeping and lattice counts"};
  app.require_subcommand(1);

  extri::cli::Options opt;
  std::string input_path;
  std::string manifest_path;
  std::uint64_t seed = 0;
  int modulus = 0;
  std::string bound;

  const std::map<std::string, std::string> about{
      {"snf", "Smith normal form and cokernel of an integer matrix"},
      {"homology", "homology of a chain complex over Z, with field dimensions"},
      {"cone", "mapping cone of a chain map and its homology"},
      {"ss", "spectral sequence of a filtration, or the six-step check on triangle data"},
      {"lin-check", "verify triangle hypotheses, or a Pi-algebra certificate with --pi"},
      {"triangle-solve", "solve for the unknown corner of an exact triangle of graded groups"},
      {"poincare", "run the two-triangle deduction for the Poincare sphere"},
      {"index", "index formulae, gluing and charge bookkeeping"},
      {"moduli", "enumerate reducible solutions as lattice points with charges"},
  };
  for (const auto& [name, cmd] : extri::cli::commands()) {
    auto* sub = app.add_subcommand(name, about.count(name) ? about.at(name) : "");
    sub->add_option("input", input_path, "JSON input file, - for stdin");
    sub->add_option("--seed", seed, "64-bit generator seed");
    sub->add_option("--prime", opt.prime, "field characteristic for F_p computations");
    sub->add_option("--modulus", modulus, "grading modulus when the input omits it");
    sub->add_option("--bound", bound, "search or order bound");
    sub->add_flag("--certificate", opt.certificate, "certificate mode for quasi-isomorphism checks");
    sub->add_flag("--pi", opt.pi, "lin-check: verify a Pi-algebra combination certificate");
    sub->add_option("--manifest", manifest_path, "write a run manifest to this path");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n" << app.help();
    return 2;
  }

  auto* sub = app.get_subcommands().front();
  if (sub->count("--seed")) opt.seed = seed;
  if (sub->count("--modulus")) opt.modulus = modulus;
  if (sub->count("--bound")) opt.bound = bound;

  auto start = std::chrono::steady_clock::now();
  extri::cli::Outcome out;
  std::optional<json> input;
  try {
    if (!input_path.empty()) input = json::parse(read_source(input_path));
    out = extri::cli::run(sub->get_name(), input, opt);
  } catch (const std::exception& e) {
    out.exit_code = 2;
    out.output = {{"error", e.what()}, {"kind", "input"}};
  }
  auto elapsed = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();

  std::cout << extri::io::canonical_dump(out.output);

  if (!manifest_path.empty()) {
    json m = {{"command", sub->get_name()},
              {"input_digest", digest(out.input)},
              {"output_digest", digest(out.output)},
              {"exit_code", out.exit_code},
              {"elapsed_ms", elapsed},
              {"versions",
               {{"extri", "0.1.0"},
                {"gmp", gmp_version},
                {"nlohmann_json", std::to_string(NLOHMANN_JSON_VERSION_MAJOR) + "." +
                                      std::to_string(NLOHMANN_JSON_VERSION_MINOR) + "." +
                                      std::to_string(NLOHMANN_JSON_VERSION_PATCH)},
                {"cli11", CLI11_VERSION}}}};
    std::ofstream f(manifest_path);
    f << m.dump(2) << "\n";
  }
  return out.exit_code;
}
