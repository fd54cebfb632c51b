// pcm: verify almost (para)contact metric identities on coordinate charts.

#include <CLI11.hpp>

#include <iostream>

#include "pcm/pcm.hpp"

namespace {

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ',') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else if (!std::isspace(static_cast<unsigned char>(c))) {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical verification of almost (para)contact metric identities"};
  app.require_subcommand(1);

  pcm::RunConfig cfg;
  std::string suites = "all", d_eta, trace = "norm";
  auto* verify = app.add_subcommand("verify", "run identity suites on a built-in example or a structure file");
  verify->add_option("--manifold", cfg.manifold, "built-in example name or path to a .pcm file")->required();
  verify->add_option("--suite", suites, "comma-separated suites: axioms,geometry,structure,contact,normal,cone,all")
      ->capture_default_str();
  verify->add_option("--points", cfg.points, "sample points per example")->capture_default_str();
  verify->add_option("--vectors", cfg.vectors, "random vector tuples per point")->capture_default_str();
  verify->add_option("--seed", cfg.seed, "random seed")->capture_default_str();
  verify->add_option("--tol", cfg.tol, "pass threshold on normalized residuals")->capture_default_str();
  verify->add_option("--d-eta", d_eta, "exterior derivative normalization (half|one); default from file, else half")
      ->check(CLI::IsMember({"half", "one"}));
  verify->add_option("--format", cfg.format, "report format")->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();
  verify->add_option("--nabla-phi-trace", trace, "contraction used for Tr(nabla phi)^2 (norm|swapped)")
      ->check(CLI::IsMember({"norm", "swapped"}))
      ->capture_default_str();

  app.add_subcommand("list-examples", "list built-in examples");

  std::string export_name;
  auto* exp = app.add_subcommand("export-example", "print a built-in example as a structure file");
  exp->add_option("name", export_name, "example name")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (app.got_subcommand("list-examples")) {
      for (const auto& name : pcm::builtin_names()) {
        const auto& spec = pcm::builtin_spec(name);
        const auto S = pcm::load_builtin(name);
        std::cout << name << "  dim " << S.dim() << "  eps0 " << S.eps0 << "  eps1 " << S.eps1 << "  " << spec.notes
                  << "\n";
      }
      for (const auto& [e0, e1] : pcm::uncovered_sign_classes())
        std::cout << "eps0 " << e0 << "  eps1 " << e1 << "  sign class not covered\n";
      return 0;
    }
    if (app.got_subcommand("export-example")) {
      const auto S = pcm::load_builtin(export_name);
      std::cout << pcm::export_spec(S, std::nullopt, pcm::builtin_spec(export_name).notes);
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  cfg.suites = split_list(suites);
  if (!d_eta.empty()) cfg.d_eta = d_eta == "one" ? pcm::DEtaConvention::One : pcm::DEtaConvention::Half;
  cfg.trace = trace == "swapped" ? pcm::NablaPhiTrace::Swapped : pcm::NablaPhiTrace::Norm;
  const pcm::RunReport rep = pcm::run(cfg);
  if (cfg.format == "json") std::cout << pcm::to_json(rep);
  else std::cout << pcm::to_text(rep);
  if (!rep.error.empty()) std::cerr << "error: " << rep.error << "\n";
  return rep.exit_code;
}
