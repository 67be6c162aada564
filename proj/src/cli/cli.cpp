#include "ample/cli/cli.hpp"

#include <CLI11.hpp>
#include <ostream>
#include <sstream>

namespace ample::cli {

namespace {

using homology::HomologyResult;

bool has_unresolved(const HomologyResult& h) {
  for (const auto& d : h.degrees) {
    if (!d) continue;
    if (const auto* v = std::get_if<abelian::ColimitVerdict>(&d->value))
      if (const auto* f = std::get_if<abelian::Formal>(v); f && (f->unresolved || !f->torsion_resolved)) return true;
  }
  return false;
}

void put_homology(Json& report, const HomologyResult& h) {
  report["homology"] = homology_to_json(h);
  report["reliable_up_to"] = h.reliable_up_to;
  report["homology_tail"] = tail_to_json(h);
}

Json validation_checks(const models::Model& m) {
  Json checks{{"valid", true}};
  if (const auto* s = std::get_if<models::SftModel>(&m)) checks["irreducible"] = models::is_irreducible(*s);
  if (const auto* g = std::get_if<models::FiniteGroupoid>(&m)) {
    checks["objects"] = g->objects;
    checks["arrows"] = g->arrows();
    checks["principal"] = g->is_principal();
  }
  if (const auto* d = std::get_if<models::DrModel>(&m)) {
    checks["rank"] = d->rank();
    checks["vertices"] = d->size();
  }
  if (const auto* o = std::get_if<models::OdometerModel>(&m))
    checks["stabilizers"] = o->stabilizers == models::StabilizerType::dihedral ? "dihedral" : "torsion_free";
  return checks;
}

void emit(const RunConfig& config, const Json& report, std::ostream& out) {
  if (config.format == Format::structured) out << report.dump(2) << "\n";
  else out << render_text(report);
}

std::string failed_list(const spectral::HypothesisCertificate& c) {
  std::string s;
  for (const auto& f : c.failed) s += (s.empty() ? "" : ", ") + f;
  return s;
}

std::vector<linalg::Integer> parse_primes(const std::string& text) {
  std::vector<linalg::Integer> primes;
  std::string token;
  std::istringstream in(text);
  while (std::getline(in, token, ',')) {
    token.erase(0, token.find_first_not_of(" \t"));
    token.erase(token.find_last_not_of(" \t") + 1);
    if (token.empty()) continue;
    linalg::Integer p;
    if (p.set_str(token, 10) != 0 || p < 2 || mpz_probab_prime_p(p.get_mpz_t(), 30) == 0)
      throw std::invalid_argument("--probe-primes: '" + token + "' is not a prime");
    primes.push_back(p);
  }
  if (primes.empty()) throw std::invalid_argument("--probe-primes: empty list");
  return primes;
}

}  // namespace

std::string to_string(Command c) {
  switch (c) {
    case Command::validate:
      return "validate";
    case Command::homology:
      return "homology";
    case Command::ktheory:
      return "ktheory";
    case Command::oracle:
      return "oracle";
    case Command::report:
      return "report";
  }
  return "";
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  std::error_code ec;
  if (!std::filesystem::is_regular_file(config.model_file, ec)) {
    err << "ample: cannot read model file " << config.model_file.string() << "\n";
    return exit_code::usage;
  }
  models::Model model;
  try {
    model = models::load_model_file(config.model_file);
  } catch (const models::ParseError& e) {
    err << "ample: parse error: " << e.what() << "\n";
    return exit_code::parse;
  }

  Json report;
  report["model_kind"] = models::kind_name(model);
  report["model_file"] = config.model_file.string();
  report["command"] = to_string(config.command);
  report["coefficients"] = models::group_to_json(config.coefficients);
  report["homology"] = nullptr;
  report["e2_page"] = nullptr;
  report["verdict"] = nullptr;
  report["certificate"] = nullptr;
  report["checks"] = Json::object();

  try {
    models::validate(model);
  } catch (const models::ValidationError& e) {
    err << "ample: " << e.what() << "\n";
    return exit_code::validation;
  }

  homology::EngineOptions options;
  options.max_degree = config.max_degree;
  options.stab_budget = config.stab_budget;
  options.colimit.probe_primes = config.probe_primes;

  try {
    switch (config.command) {
      case Command::validate: {
        report["checks"] = validation_checks(model);
        emit(config, report, out);
        return exit_code::ok;
      }
      case Command::oracle: {
        const auto* g = std::get_if<models::FiniteGroupoid>(&model);
        if (!g) {
          err << "ample: oracle needs a finite groupoid model, got kind " << models::kind_name(model) << "\n";
          return exit_code::usage;
        }
        const HomologyResult h = homology::bar_homology(*g, config.coefficients, config.max_degree, options);
        put_homology(report, h);
        const auto violation = models::simplicial_identity_violation(*g, config.max_degree + 1, options.nerve);
        report["checks"] = Json{{"principal", g->is_principal()},
                                {"boundary_squared_zero", "verified through degree " + std::to_string(config.max_degree + 1)},
                                {"simplicial_identities", violation ? *violation : "hold through degree " + std::to_string(config.max_degree + 1)}};
        emit(config, report, out);
        return violation ? exit_code::usage : exit_code::ok;
      }
      case Command::homology: {
        const HomologyResult h = homology::compute_homology(model, config.coefficients, options);
        put_homology(report, h);
        emit(config, report, out);
        if (has_unresolved(h)) {
          err << "ample: a colimit did not stabilize within the budget of " << config.stab_budget << " steps\n";
          return exit_code::budget;
        }
        return exit_code::ok;
      }
      case Command::ktheory:
      case Command::report: {
        if (!(config.coefficients == abelian::FgAbelianGroup::free(1))) {
          err << "ample: " << to_string(config.command) << " needs integer coefficients (--coefficients Z)\n";
          return exit_code::usage;
        }
        const HomologyResult h = homology::compute_homology(model, config.coefficients, options);
        put_homology(report, h);
        const spectral::KTheoryVerdict verdict =
            spectral::assemble_k_theory(h, h.metadata, spectral::AssemblyOptions{config.assert_collapse_d3});
        const auto* ind = std::get_if<spectral::Indeterminate>(&verdict);
        const auto& cert = ind ? ind->certificate : std::get<spectral::Assembled>(verdict).certificate;
        if (ind) report["e2_page"] = page_to_json(ind->page);
        else report["e2_page"] = page_to_json(spectral::build_e2(h));
        report["verdict"] = verdict_to_json(verdict);
        report["certificate"] = certificate_to_json(cert);
        if (config.command == Command::report) {
          Json checks;
          checks["euler_rank"] = spectral::to_string(spectral::euler_rank_check(h, verdict));
          const auto constraint = spectral::euler_rank(h);
          checks["rank_constraint"] = constraint ? Json(*constraint) : Json(nullptr);
          checks["published_mismatch"] = spectral::published_mismatch(h);
          report["checks"] = checks;
        }
        emit(config, report, out);
        if (ind && ind->guard_refusal) {
          err << "ample: refused to assemble K-theory; failed hypotheses: " << failed_list(cert) << "\n";
          return exit_code::guard;
        }
        if (has_unresolved(h)) {
          err << "ample: a colimit did not stabilize within the budget of " << config.stab_budget << " steps\n";
          return exit_code::budget;
        }
        return exit_code::ok;
      }
    }
  } catch (const homology::TruncationError& e) {
    err << "ample: truncated: " << e.what() << "\n";
    return exit_code::budget;
  } catch (const homology::Unsupported& e) {
    err << "ample: refused: " << e.what() << "\n";
    return exit_code::guard;
  } catch (const spectral::MissingMetadata& e) {
    err << "ample: refused: " << e.what() << "\n";
    return exit_code::guard;
  } catch (const std::exception& e) {
    err << "ample: internal error: " << e.what() << "\n";
    return exit_code::usage;
  }
  return exit_code::usage;
}

int main_entry(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Groupoid homology and K-theory assembly for combinatorial ample groupoid models", "ample"};
  app.require_subcommand(1);

  RunConfig config;
  std::string model_file;
  std::string primes_text;
  std::string coefficients_text = "Z";
  std::string format_text = "text";

  const std::vector<std::pair<Command, std::string>> commands{
      {Command::validate, "Parse and check a model file"},
      {Command::homology, "Compute H_p with provenance"},
      {Command::ktheory, "Compute homology and assemble K-theory or report indeterminacy"},
      {Command::oracle, "Bar-complex homology of a finite groupoid"},
      {Command::report, "Homology, E2 page, K-theory verdict and checks"},
  };
  for (const auto& [command, description] : commands) {
    CLI::App* sub = app.add_subcommand(to_string(command), description);
    sub->add_option("model", model_file, "Model file (JSON)")->required();
    sub->add_option("--max-degree", config.max_degree, "Top degree for the bar complex")->capture_default_str();
    sub->add_option("--stab-budget", config.stab_budget, "Iterations allowed for colimit stabilization")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    sub->add_option("--probe-primes", primes_text, "Comma-separated primes probed in Formal colimits (default: primes <= 97)");
    sub->add_option("--coefficients", coefficients_text, "Constant coefficient group, e.g. Z or Z/4")->capture_default_str();
    sub->add_option("--format", format_text, "Output format")->check(CLI::IsMember({"text", "structured"}))->capture_default_str();
    sub->add_flag("--assert-collapse-d3", config.assert_collapse_d3,
                  "Assert the d <= 3 collapse rule (vanishing above 3, H_2 and H_3 torsion-free)");
    sub->callback([&config, command = command] { config.command = command; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? exit_code::ok : exit_code::usage;
  }

  config.model_file = model_file;
  config.format = format_text == "structured" ? Format::structured : Format::text;
  try {
    config.coefficients = abelian::parse_group(coefficients_text);
    if (!primes_text.empty()) config.probe_primes = parse_primes(primes_text);
  } catch (const std::invalid_argument& e) {
    err << "ample: " << e.what() << "\n";
    return exit_code::usage;
  }
  return run(config, out, err);
}

}  // namespace ample::cli
