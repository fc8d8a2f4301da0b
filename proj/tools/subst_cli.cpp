// Command-line surface for the substitution shift analysis library.

#include <CLI11.hpp>
#include <iostream>
#include <json.hpp>

#include "subst/decide.hpp"
#include "subst/langtools.hpp"
#include "subst/points.hpp"
#include "subst/report.hpp"
#include "subst/transforms.hpp"

using namespace subst;
using Json = nlohmann::ordered_json;

namespace {

int decision_exit(const Decision& d) {
  switch (d.outcome) {
    case Outcome::True:
    case Outcome::False:
      return 0;
    case Outcome::EmptyShift:
    case Outcome::HypothesisNotMet:
      return 2;
  }
  return 1;
}

void print_decision(const Decision& d, bool json) {
  if (json) {
    Json j;
    j["status"] = outcome_name(d.outcome);
    if (!d.witness.empty()) j["witness"] = d.witness;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << outcome_name(d.outcome);
    if (!d.witness.empty()) std::cout << "  [" << d.witness << "]";
    std::cout << "\n";
  }
}

Json morphism_json(const Morphism& m) {
  Json rules = Json::array();
  for (LetterId a = 0; a < m.source().size(); ++a) {
    Json r;
    r["letter"] = m.source().token(a);
    r["image"] = m.image(a).render(m.target());
    rules.push_back(r);
  }
  return rules;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"decision procedures for substitution shifts"};
  app.require_subcommand(1);
  bool json = false;
  app.add_flag("--json", json, "machine-readable output");

  std::string path, word, property, phi_path, seed_text;
  bool shift = false, timings = false;
  int block_k = 2, factor_n = 2;
  long long cap_steps = 100000, cap_window = 64;
  long long power_bound = -1;
  std::vector<std::string> skips;

  auto* analyze_cmd = app.add_subcommand("analyze", "run every procedure");
  analyze_cmd->add_option("path", path)->required();
  analyze_cmd->add_flag("--timings", timings, "include per-stage timings");
  analyze_cmd->add_option("--skip", skips, "stages to skip");
  analyze_cmd->add_option("--power-bound", power_bound);

  auto* decide_cmd =
      app.add_subcommand("decide", "decide one property: aperiodic, periodic, "
                                   "recognizable, irreducible, minimal, "
                                   "elementary");
  decide_cmd->add_option("property", property)->required();
  decide_cmd->add_option("path", path)->required();

  auto* member_cmd =
      app.add_subcommand("member", "word membership in L(sigma)");
  member_cmd->add_option("path", path)->required();
  member_cmd->add_option("word", word)->required();
  member_cmd->add_flag("--shift", shift, "test L(X(sigma)) instead");
  member_cmd->add_option("--cap-steps", cap_steps);
  member_cmd->add_option("--cap-window", cap_window);

  auto* factors_cmd = app.add_subcommand("factors", "exact L_n(sigma)");
  factors_cmd->add_option("path", path)->required();
  factors_cmd->add_option("-n", factor_n, "factor length")->required();

  auto* fixed_cmd =
      app.add_subcommand("fixed-points", "orbits of admissible fixed and "
                                         "quasi-fixed points of powers");
  fixed_cmd->add_option("path", path)->required();
  fixed_cmd->add_option("--power-bound", power_bound);

  auto* block_cmd = app.add_subcommand("block", "k-th higher block morphism");
  block_cmd->add_option("path", path)->required();
  block_cmd->add_option("-k", block_k, "block length")->required();

  auto* norm_cmd = app.add_subcommand("normalize", "Cobham normalization");
  norm_cmd->add_option("path", path)->required();
  norm_cmd->add_option("--phi", phi_path, "morphism file for phi (default id)");
  norm_cmd->add_option("--seed", seed_text, "prolongable seed word")
      ->required();

  auto* prim_cmd = app.add_subcommand(
      "primitive", "primitive conjugate of a minimal shift");
  prim_cmd->add_option("path", path)->required();

  CLI11_PARSE(app, argc, argv);

  try {
    Morphism m = load_morphism(path);

    if (*analyze_cmd) {
      ReportOptions opt;
      opt.timings = timings;
      opt.skip = skips;
      if (power_bound >= 0) opt.power_bound = power_bound;
      AnalysisResult r = analyze(m, opt);
      std::cout << (json ? r.json : r.text);
      switch (r.status) {
        case ReportStatus::Ok:
          return 0;
        case ReportStatus::HypothesisNotMet:
          return 2;
        case ReportStatus::Error:
          return 1;
      }
    }

    if (*decide_cmd) {
      Decision d{Outcome::True, ""};
      if (property == "aperiodic") {
        d = is_aperiodic(m);
      } else if (property == "periodic") {
        d = is_periodic_shift(m);
      } else if (property == "recognizable") {
        d = is_fully_recognizable(m);
      } else if (property == "irreducible") {
        d = is_irreducible(m);
      } else if (property == "minimal") {
        d = is_minimal(m);
      } else if (property == "elementary") {
        auto dec = elementary_decomposition(m);
        if (!dec) {
          d = {Outcome::True, ""};
        } else {
          std::string blocks;
          for (const auto& u : dec->blocks) {
            if (!blocks.empty()) blocks += ", ";
            blocks += u.render(m.source());
          }
          d = {Outcome::False, "block alphabet {" + blocks + "}"};
        }
      } else {
        std::cerr << "unknown property '" << property << "'\n";
        return 1;
      }
      print_decision(d, json);
      return decision_exit(d);
    }

    if (*member_cmd) {
      Word u = parse_word(m.source(), word);
      bool result;
      if (shift) {
        ShiftMemberOptions opt;
        opt.enum_length_cap = cap_window;
        opt.candidate_cap = cap_steps * 10;
        result = member_shift_language(m, u, opt);
      } else {
        result = member_language(m, u);
      }
      if (json) {
        Json j;
        j["word"] = word;
        j["language"] = shift ? "L(X(sigma))" : "L(sigma)";
        j["member"] = result;
        std::cout << j.dump(2) << "\n";
      } else {
        std::cout << (result ? "true" : "false") << "\n";
      }
      return 0;
    }

    if (*factors_cmd) {
      std::set<Word> fs = factors_oracle(m, factor_n);
      if (json) {
        Json arr = Json::array();
        for (const Word& w : fs) arr.push_back(w.render(m.source()));
        std::cout << arr.dump(2) << "\n";
      } else {
        for (const Word& w : fs) std::cout << w.render(m.source()) << "\n";
      }
      return 0;
    }

    if (*fixed_cmd) {
      PointEnumerationOptions opt;
      if (power_bound >= 0) opt.k_max = power_bound;
      FixedOrbits fo = enumerate_fixed_orbits(m, opt);
      auto quasi = enumerate_quasi_fixed_orbits(m, opt);
      if (json) {
        Json j;
        j["engine_power"] = fo.engine_power;
        Json arr = Json::array();
        for (const auto& d : fo.orbits) arr.push_back(render_fixed(m, d));
        j["fixed"] = arr;
        Json qarr = Json::array();
        for (const auto& q : quasi) qarr.push_back(render_quasi(m, q));
        j["quasi_fixed"] = qarr;
        std::cout << j.dump(2) << "\n";
      } else {
        std::cout << "engine power: " << fo.engine_power << "\n";
        std::cout << "fixed-point orbits:\n";
        for (const auto& d : fo.orbits)
          std::cout << "  " << render_fixed(m, d) << "\n";
        std::cout << "quasi-fixed orbits:\n";
        for (const auto& q : quasi)
          std::cout << "  " << render_quasi(m, q) << "\n";
      }
      return 0;
    }

    if (*block_cmd) {
      BlockSystem bs = higher_block(m, block_k);
      if (json) {
        Json j;
        j["k"] = bs.k;
        j["sigma_k"] = morphism_json(bs.sigma_k);
        j["projection"] = morphism_json(bs.projection);
        std::cout << j.dump(2) << "\n";
      } else {
        std::cout << bs.sigma_k.serialize();
      }
      return 0;
    }

    if (*norm_cmd) {
      Morphism phi = phi_path.empty() ? Morphism::identity(m.source())
                                      : load_morphism(phi_path);
      Word seed = parse_word(m.source(), seed_text);
      Normalization norm = cobham_normalize(m, phi, seed);
      if (json) {
        Json j;
        j["m"] = norm.m;
        j["n"] = norm.n;
        j["gamma"] = morphism_json(norm.gamma);
        j["zeta"] = morphism_json(norm.zeta);
        j["theta"] = morphism_json(norm.theta);
        std::cout << j.dump(2) << "\n";
      } else {
        std::cout << "m = " << norm.m << ", n = " << norm.n << "\n";
        std::cout << "gamma:\n" << norm.gamma.serialize();
        std::cout << "zeta:\n" << norm.zeta.serialize();
        std::cout << "theta:\n" << norm.theta.serialize();
      }
      return 0;
    }

    if (*prim_cmd) {
      auto [tau, phi] = primitive_conjugate(m);
      if (json) {
        Json j;
        j["tau"] = morphism_json(tau);
        j["phi"] = morphism_json(phi);
        std::cout << j.dump(2) << "\n";
      } else {
        std::cout << "tau:\n" << tau.serialize();
        std::cout << "phi:\n" << phi.serialize();
      }
      return 0;
    }
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 1;
  } catch (const CapExceeded& e) {
    std::cerr << "cap exceeded: " << e.what() << "\n";
    return 1;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
