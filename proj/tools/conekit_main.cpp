#include <conekit/conekit.h>

#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitSemantic = 1;
constexpr int kExitUsage = 2;

// Owns a loaded map handle.
struct MapHandle {
  ck_map* m = nullptr;
  ~MapHandle() { ck_map_free(m); }
};

// Owns an API-allocated string.
struct ApiString {
  char* s = nullptr;
  ~ApiString() { ck_string_free(s); }
};

uint64_t resolve_seed(const std::optional<uint64_t>& seed) {
  if (seed) return *seed;
  std::random_device rd;
  const uint64_t fresh = (static_cast<uint64_t>(rd()) << 32) ^ rd();
  std::cerr << "seed: " << fresh << "\n";
  return fresh;
}

int report_error(const char* context) {
  std::cerr << "conekit: " << context << ": " << ck_last_error() << "\n";
  return kExitUsage;
}

int load_map(const std::string& path, MapHandle& handle) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    std::cerr << "conekit: cannot read " << path << "\n";
    return kExitUsage;
  }
  std::ostringstream text;
  text << in.rdbuf();
  const std::string content = text.str();
  if (ck_map_load_json(content.c_str(), &handle.m) != CK_OK) {
    return report_error(path.c_str());
  }
  return kExitOk;
}

void print_owned(const ApiString& s) {
  if (s.s) std::cout << s.s << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Minkowski-space map toolkit: generate, validate, check, classify"};
  app.require_subcommand(1);

  std::optional<uint64_t> seed;
  std::string file;
  int dimension = 4;
  int patches = 5;
  double epsilon = 0.2;
  std::vector<double> vertex;
  int gen_pairs = 1000;
  double gen_scale = 10.0;
  int pairs = 100000;
  double tau_rel = 1e-9;
  int samples = 512;
  std::vector<double> base;
  int subdiv = 5;
  std::vector<double> convert_event;
  std::vector<double> convert_herm;

  auto* gen = app.add_subcommand("gen", "Emit a map spec on standard output");
  gen->require_subcommand(1);
  auto* gen_sim = gen->add_subcommand("similarity", "Seeded Poincare similarity");
  gen_sim->add_option("--seed", seed, "Seed (random and printed when omitted)");
  gen_sim->add_option("--dimension", dimension, "Space dimension")->check(CLI::Range(3, 6));
  auto* gen_deg = gen->add_subcommand("degenerate", "Patch map collapsing onto one cone");
  gen_deg->add_option("--seed", seed, "Seed (random and printed when omitted)");
  gen_deg->add_option("--patches", patches, "Patch count")->check(CLI::NonNegativeNumber);
  gen_deg->add_option("--epsilon", epsilon, "Patch radius, must be below 0.25");
  gen_deg->add_option("--vertex", vertex, "Cone vertex coordinates")->expected(3, 6);
  gen_deg->add_option("--dimension", dimension, "Space dimension")->check(CLI::Range(3, 6));
  auto* gen_table = gen->add_subcommand(
      "table", "Pointwise table of the squaring map over coherent pairs");
  gen_table->add_option("--seed", seed, "Seed (random and printed when omitted)");
  gen_table->add_option("--pairs", gen_pairs, "Coherent pairs to tabulate")
      ->check(CLI::PositiveNumber);
  gen_table->add_option("--scale", gen_scale, "Sampling box half-width")
      ->check(CLI::PositiveNumber);

  auto* validate = app.add_subcommand("validate", "Check separation conditions of a spec");
  validate->add_option("file", file, "Map spec JSON file")->required();
  validate->add_option("--seed", seed, "Seed for the sampling stage");

  auto* check = app.add_subcommand("check", "Coherency-preservation check");
  check->add_option("file", file, "Map spec JSON file")->required();
  check->add_option("--pairs", pairs, "Coherent pairs to sample")->check(CLI::PositiveNumber);
  check->add_option("--seed", seed, "Seed (random and printed when omitted)");
  check->add_option("--tol", tau_rel, "Relative tolerance")->check(CLI::PositiveNumber);

  auto* classify = app.add_subcommand("classify", "Similarity / degenerate / violator verdict");
  classify->add_option("file", file, "Map spec JSON file")->required();
  classify->add_option("--seed", seed, "Seed (random and printed when omitted)");
  classify->add_option("--pairs", pairs, "Pairs for the preservation stage")
      ->check(CLI::PositiveNumber);
  classify->add_option("--samples", samples, "Samples for the fitting stages")
      ->check(CLI::PositiveNumber);

  auto* degree_cmd = app.add_subcommand("degree", "Degree of the induced sphere map");
  degree_cmd->add_option("file", file, "Map spec JSON file")->required();
  degree_cmd->add_option("--base", base, "Base point (default: origin)")->expected(3, 6);
  degree_cmd->add_option("--subdiv", subdiv, "Icosphere subdivision level")
      ->check(CLI::Range(0, 7));

  auto* convert = app.add_subcommand("convert", "Event <-> hermitian matrix (dimension 4)");
  auto* opt_event = convert->add_option("--event", convert_event, "x y z t")->expected(4);
  auto* opt_herm = convert->add_option("--herm", convert_herm, "d1 d2 off_re off_im")
                       ->expected(4);
  opt_event->excludes(opt_herm);
  opt_herm->excludes(opt_event);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "conekit: " << e.what() << "\n";
    return kExitUsage;
  }

  if (gen_sim->parsed()) {
    ApiString out;
    if (ck_gen_similarity(dimension, resolve_seed(seed), &out.s) != CK_OK) {
      return report_error("gen similarity");
    }
    print_owned(out);
    return kExitOk;
  }

  if (gen_deg->parsed()) {
    if (!vertex.empty()) dimension = static_cast<int>(vertex.size());
    ApiString out;
    if (ck_gen_degenerate(patches, epsilon, vertex.empty() ? nullptr : vertex.data(), dimension,
                          resolve_seed(seed), &out.s) != CK_OK) {
      return report_error("gen degenerate");
    }
    print_owned(out);
    return kExitOk;
  }

  if (gen_table->parsed()) {
    ApiString out;
    if (ck_gen_squaring_table(gen_pairs, gen_scale, resolve_seed(seed), &out.s) != CK_OK) {
      return report_error("gen table");
    }
    print_owned(out);
    return kExitOk;
  }

  if (validate->parsed()) {
    MapHandle map;
    if (const int rc = load_map(file, map); rc != kExitOk) return rc;
    int valid = 0;
    ApiString out;
    if (ck_validate(map.m, resolve_seed(seed), &valid, &out.s) != CK_OK) {
      return report_error("validate");
    }
    print_owned(out);
    return valid ? kExitOk : kExitSemantic;
  }

  if (check->parsed()) {
    MapHandle map;
    if (const int rc = load_map(file, map); rc != kExitOk) return rc;
    int passed = 0;
    ApiString out;
    if (ck_check(map.m, resolve_seed(seed), pairs, tau_rel, &passed, &out.s) != CK_OK) {
      return report_error("check");
    }
    print_owned(out);
    return passed ? kExitOk : kExitSemantic;
  }

  if (classify->parsed()) {
    MapHandle map;
    if (const int rc = load_map(file, map); rc != kExitOk) return rc;
    ck_verdict verdict;
    ApiString out;
    if (ck_classify(map.m, resolve_seed(seed), pairs, samples, &verdict, &out.s) != CK_OK) {
      return report_error("classify");
    }
    print_owned(out);
    return kExitOk;
  }

  if (degree_cmd->parsed()) {
    MapHandle map;
    if (const int rc = load_map(file, map); rc != kExitOk) return rc;
    if (base.empty()) base.assign(static_cast<size_t>(ck_map_dimension(map.m)), 0.0);
    int value = 0;
    int quality = 0;
    ApiString out;
    if (ck_degree(map.m, base.data(), base.size(), subdiv, &value, &quality, &out.s) != CK_OK) {
      return report_error("degree");
    }
    print_owned(out);
    return quality ? kExitOk : kExitSemantic;
  }

  if (convert->parsed()) {
    if (convert_event.empty() == convert_herm.empty()) {
      std::cerr << "conekit: convert needs exactly one of --event or --herm\n";
      return kExitUsage;
    }
    double event[4];
    double herm[4];
    if (!convert_event.empty()) {
      for (int i = 0; i < 4; ++i) event[i] = convert_event[static_cast<size_t>(i)];
      if (ck_event_to_herm(event, herm) != CK_OK) return report_error("convert");
    } else {
      for (int i = 0; i < 4; ++i) herm[i] = convert_herm[static_cast<size_t>(i)];
      if (ck_herm_to_event(herm, event) != CK_OK) return report_error("convert");
    }
    double q = 0.0;
    double det = 0.0;
    if (ck_quadratic_form(event, 4, &q) != CK_OK) return report_error("convert");
    if (ck_herm_det(herm, &det) != CK_OK) return report_error("convert");
    std::cout << std::setprecision(17) << "{\n"
              << "  \"event\": [" << event[0] << ", " << event[1] << ", " << event[2] << ", "
              << event[3] << "],\n"
              << "  \"herm\": [" << herm[0] << ", " << herm[1] << ", " << herm[2] << ", "
              << herm[3] << "],\n"
              << "  \"q\": " << q << ",\n"
              << "  \"det\": " << det << "\n"
              << "}\n";
    return kExitOk;
  }

  std::cerr << "conekit: no command selected\n";
  return kExitUsage;
}
