#include "subst/report.hpp"

#include <algorithm>
#include <chrono>
#include <json.hpp>
#include <sstream>

#include "subst/decide.hpp"
#include "subst/graph.hpp"
#include "subst/langtools.hpp"
#include "subst/points.hpp"

namespace subst {

namespace {

using Json = nlohmann::ordered_json;

std::string shape_name(FixedPointDescriptor::Shape s) {
  switch (s) {
    case FixedPointDescriptor::Shape::EventuallyPeriodic:
      return "eventually-periodic";
    case FixedPointDescriptor::Shape::LeftEPRightSeed:
      return "left-ep-right-seed";
    case FixedPointDescriptor::Shape::LeftSeedRightEP:
      return "left-seed-right-ep";
    case FixedPointDescriptor::Shape::TwoSeed:
      return "two-seed";
  }
  return "?";
}

Json fixed_json(const Morphism& m, const FixedPointDescriptor& d) {
  const Alphabet& a = m.source();
  Json j;
  j["shape"] = shape_name(d.shape);
  j["power"] = d.power;
  j["left"] = d.left.render(a);
  if (!d.center.empty() ||
      d.shape == FixedPointDescriptor::Shape::EventuallyPeriodic)
    j["center"] = d.center.render(a);
  j["right"] = d.right.render(a);
  j["rendered"] = render_fixed(m, d);
  return j;
}

Json quasi_json(const Morphism& m, const QuasiFixedDescriptor& d) {
  const Alphabet& a = m.source();
  Json j;
  switch (d.shape) {
    case QuasiFixedDescriptor::Shape::ShiftedFixed:
      j["shape"] = "shifted-fixed";
      j["fixed"] = fixed_json(m, *d.fixed);
      break;
    case QuasiFixedDescriptor::Shape::LetterContext:
      j["shape"] = "letter-context";
      j["power"] = d.power;
      j["letter"] = a.token(d.letter);
      j["left"] = d.ctx_left.render(a);
      j["right"] = d.ctx_right.render(a);
      break;
    case QuasiFixedDescriptor::Shape::Rotating:
      j["shape"] = "rotating";
      j["power"] = d.power;
      j["u"] = d.rot_u.render(a);
      j["v"] = d.rot_v.render(a);
      break;
  }
  j["rendered"] = render_quasi(m, d);
  return j;
}

struct StageClock {
  std::chrono::steady_clock::time_point start =
      std::chrono::steady_clock::now();
  long long ms() const {
    return std::chrono::duration_cast<std::chrono::milliseconds>(
               std::chrono::steady_clock::now() - start)
        .count();
  }
};

}  // namespace

AnalysisResult analyze(const Morphism& m, const ReportOptions& opt) {
  Json root;
  root["schema_version"] = 1;

  auto skipped = [&](const std::string& stage) {
    return std::find(opt.skip.begin(), opt.skip.end(), stage) !=
           opt.skip.end();
  };

  Json timings = Json::object();
  bool any_hnm = false;
  bool any_error = false;

  {
    Json jm;
    Json alpha = Json::array();
    for (const auto& t : m.source().tokens()) alpha.push_back(t);
    jm["alphabet"] = alpha;
    Json rules = Json::array();
    for (LetterId a = 0; a < m.source().size(); ++a) {
      Json r;
      r["letter"] = m.source().token(a);
      r["image"] = m.image(a).render(m.source());
      rules.push_back(r);
    }
    jm["rules"] = rules;
    jm["image_length_sum"] = m.image_length_sum();
    jm["size"] = m.size();
    root["morphism"] = jm;
  }

  LetterClassification cls;
  {
    StageClock clock;
    cls = classify_letters(m);
    Json letters = Json::array();
    for (LetterId a = 0; a < m.source().size(); ++a) {
      Json l;
      l["letter"] = m.source().token(a);
      l["erasable"] = static_cast<bool>(cls.erasable[a]);
      if (cls.mex_of[a]) l["mex"] = *cls.mex_of[a];
      l["growing"] = static_cast<bool>(cls.growing[a]);
      Json types = Json::array();
      for (const auto& t : cls.shift_types[a]) types.push_back(t);
      l["types"] = types;
      l["in_shift_language"] = static_cast<bool>(cls.in_shift_language[a]);
      letters.push_back(l);
    }
    root["letters"] = letters;
    timings["classification_ms"] = clock.ms();
  }

  bool nonempty = false;
  for (LetterId a = 0; a < m.source().size(); ++a)
    if (cls.in_shift_language[a]) nonempty = true;
  root["shift_nonempty"] = nonempty;
  root["languages_equal"] = languages_equal(m);

  {
    StageClock clock;
    StabilizationConstants st = stabilization_constants(m);
    Json c;
    c["stabilization"] = {{"i", st.i}, {"p", st.p}};
    try {
      ShiftLanguageConstants sc = shift_language_constants(m);
      c["shift_language"] = {{"N", sc.N}, {"M", sc.M}, {"r", sc.r},
                             {"K", sc.K}};
    } catch (const CapExceeded& e) {
      c["shift_language"] = {{"status", "caps-exceeded"}, {"note", e.what()}};
    }
    root["constants"] = c;
    timings["constants_ms"] = clock.ms();
  }

  Json decisions;
  auto run_decision = [&](const std::string& name, auto&& fn) {
    Json d;
    if (skipped(name)) {
      d["status"] = "skipped";
      decisions[name] = d;
      return;
    }
    StageClock clock;
    try {
      Decision dec = fn();
      d["status"] = outcome_name(dec.outcome);
      if (!dec.witness.empty()) d["witness"] = dec.witness;
      if (dec.outcome == Outcome::HypothesisNotMet) any_hnm = true;
    } catch (const CapExceeded& e) {
      d["status"] = "cap-exceeded";
      d["note"] = e.what();
      any_error = true;
    }
    decisions[name] = d;
    timings[name + "_ms"] = clock.ms();
  };
  run_decision("aperiodic", [&] { return is_aperiodic(m); });
  run_decision("periodic", [&] { return is_periodic_shift(m); });
  run_decision("fully_recognizable", [&] { return is_fully_recognizable(m); });
  run_decision("irreducible", [&] { return is_irreducible(m); });
  run_decision("minimal", [&] { return is_minimal(m); });
  root["decisions"] = decisions;

  PointEnumerationOptions popt;
  popt.k_max = opt.power_bound;
  if (!skipped("fixed-points")) {
    StageClock clock;
    Json arr = Json::array();
    try {
      FixedOrbits fo = enumerate_fixed_orbits(m, popt);
      root["engine_power"] = fo.engine_power;
      for (const auto& d : fo.orbits) arr.push_back(fixed_json(m, d));
      root["fixed_point_orbits"] = arr;
    } catch (const CapExceeded& e) {
      root["fixed_point_orbits"] = {{"status", "cap-exceeded"},
                                    {"note", e.what()}};
      any_error = true;
    }
    timings["fixed_points_ms"] = clock.ms();
  } else {
    root["fixed_point_orbits"] = "skipped";
  }

  if (!skipped("quasi-fixed")) {
    StageClock clock;
    try {
      Json arr = Json::array();
      for (const auto& q : enumerate_quasi_fixed_orbits(m, popt))
        arr.push_back(quasi_json(m, q));
      root["quasi_fixed_orbits"] = arr;
    } catch (const CapExceeded& e) {
      root["quasi_fixed_orbits"] = {{"status", "cap-exceeded"},
                                    {"note", e.what()}};
      any_error = true;
    }
    timings["quasi_fixed_ms"] = clock.ms();
  } else {
    root["quasi_fixed_orbits"] = "skipped";
  }

  if (opt.timings) root["timings"] = timings;

  AnalysisResult out;
  out.json = root.dump(2) + "\n";
  out.status = any_error ? ReportStatus::Error
               : any_hnm ? ReportStatus::HypothesisNotMet
                         : ReportStatus::Ok;

  std::ostringstream text;
  text << "morphism (size " << m.size() << "):\n" << m.serialize();
  text << "shift nonempty: " << (nonempty ? "yes" : "no") << "\n";
  text << "L(sigma) = L(X(sigma)): "
       << (root["languages_equal"].get<bool>() ? "yes" : "no") << "\n";
  text << "letters:\n";
  for (LetterId a = 0; a < m.source().size(); ++a) {
    text << "  " << m.source().token(a) << ":";
    if (cls.erasable[a]) text << " erasable(mex " << *cls.mex_of[a] << ")";
    if (cls.growing[a]) text << " growing";
    text << " types{";
    bool first = true;
    for (const auto& t : cls.shift_types[a]) {
      if (!first) text << ",";
      text << t;
      first = false;
    }
    text << "}\n";
  }
  text << "decisions:\n";
  for (auto& [k, v] : decisions.items()) {
    text << "  " << k << ": " << v["status"].get<std::string>();
    if (v.contains("witness"))
      text << "  [" << v["witness"].get<std::string>() << "]";
    text << "\n";
  }
  if (root.contains("fixed_point_orbits") &&
      root["fixed_point_orbits"].is_array()) {
    text << "fixed-point orbits (" << root["fixed_point_orbits"].size()
         << "):\n";
    for (auto& d : root["fixed_point_orbits"])
      text << "  " << d["rendered"].get<std::string>() << "\n";
  }
  if (root.contains("quasi_fixed_orbits") &&
      root["quasi_fixed_orbits"].is_array()) {
    text << "quasi-fixed orbits (" << root["quasi_fixed_orbits"].size()
         << "):\n";
    for (auto& d : root["quasi_fixed_orbits"])
      text << "  " << d["rendered"].get<std::string>() << "\n";
  }
  out.text = text.str();
  return out;
}

}  // namespace subst
