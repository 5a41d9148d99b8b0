#include "crepanto/report.hpp"

#include <future>
#include <sstream>
#include <thread>

#include "crepanto/hilbert.hpp"
#include "crepanto/polytope.hpp"
#include "crepanto/triangulation.hpp"

namespace crepanto {

namespace {

std::string str(const Integer& z) { return z.get_str(); }
std::string str(long x) { return std::to_string(x); }

std::string point(const IntVector& num, const Integer& den) { return to_string(num) + "/" + den.get_str(); }

Json points(const std::vector<IntVector>& pts, const Integer& den) {
  Json out = Json::array();
  for (const auto& p : pts) out.push_back(point(p, den));
  return out;
}

Json numbers(const std::vector<Integer>& xs) {
  Json out = Json::array();
  for (const auto& x : xs) out.push_back(str(x));
  return out;
}

Json cohomology_json(const CohomologyProfile& c) { return Json{{"dims", numbers(c.dims)}, {"euler", str(c.euler)}}; }

std::string divisor_name(const SeriesType& t, const DivisorReport& d) {
  std::ostringstream os;
  switch (d.kind) {
    case DivisorKind::HKBundle:
      if (t.r == 3)
        os << "F_" << d.lambda;
      else
        os << "Y(" << t.r - 1 << ";" << d.lambda << ")";
      break;
    case DivisorKind::ProjectiveSpace: os << "P^" << t.r - 1; break;
    case DivisorKind::ProjectiveTimesLine: os << "P^" << t.r - 2 << "xC"; break;
  }
  return os.str();
}

Json simplices_json(const LatticeTriangulation& tri) {
  Json out = Json::array();
  const Integer& L = tri.lattice.denominator();
  for (std::size_t s = 0; s < tri.simplices.size(); ++s) out.push_back(points(tri.vertices_of(s), L));
  return out;
}

Json int_or_string(const Json& j) {
  if (j.is_number_integer()) return std::to_string(j.get<long long>());
  if (j.is_string()) return j;
  throw std::invalid_argument("expected an integer or an integer string");
}

Integer parse_integer(const Json& j) {
  std::string s = int_or_string(j).get<std::string>();
  Integer z;
  if (s.empty() || z.set_str(s, 10) != 0) throw std::invalid_argument("malformed integer: " + s);
  return z;
}

}  // namespace

Json make_report(const std::string& command, Json input, Json result) {
  return Json{{"schema", kSchema}, {"version", kVersion}, {"command", command}, {"input", input}, {"result", result}};
}

Json analyze_report(const CyclicQuotientType& t) {
  if (!is_gorenstein(t)) throw DomainError("analysis needs a Gorenstein type");
  Json out;
  out["normal_form"] = normal_form(t).to_string();
  out["gorenstein"] = true;
  out["isolated"] = is_isolated(t);
  out["splitting_codimension"] = str(static_cast<long>(splitting_codimension(t)));
  auto jp = junior_points(t);
  out["junior"] = Json{{"count", str(static_cast<long>(jp.count()))},
                       {"interior", str(static_cast<long>(jp.interior.size()))},
                       {"boundary", str(static_cast<long>(jp.boundary.size()))}};
  auto crit = necessary_criterion(t);
  out["criterion"] = Json{{"passes", crit.passes}, {"violators", points(crit.violators, t.l)}};
  out["cohomology"] = cohomology_json(cohomology_cyclic(t));
  return out;
}

Json hilbert_report(const CyclicQuotientType& t) {
  auto hb = hilbert_basis_orthant(t.lattice());
  return Json{{"count", str(static_cast<long>(hb.elements.size()))}, {"elements", points(hb.elements, t.l)}};
}

Json criterion_report(const CyclicQuotientType& t) {
  auto crit = necessary_criterion(t);
  return Json{{"passes", crit.passes}, {"violators", points(crit.violators, t.l)}};
}

Json cohomology_report(const CyclicQuotientType& t) {
  Json out = cohomology_json(cohomology_cyclic(t));
  out["parallelotope_count"] = cohomology_json(cohomology_parallelotope(t.lattice()));
  return out;
}

Json series_report(const SeriesType& t) {
  Json out;
  out["type"] = t.type().to_string();
  out["nu"] = str(t.nu());
  out["remainder"] = str(t.remainder());
  auto tri = build_triangulation(t);
  auto flags = classify(tri);
  auto fan = fan_of(tri);
  auto cert = coherence_certificate(tri);
  out["basic"] = flags.basic;
  out["basic_predicted"] = basicness(t);
  out["maximal"] = flags.maximal;
  out["crepant"] = flags.crepant;
  out["unique"] = verify_uniqueness(t);
  out["coherent"] = cert.coherent;
  out["epsilon"] = to_string(cert.epsilon);
  out["simplices"] = str(static_cast<long>(tri.simplices.size()));
  out["euler"] = str(euler_characteristic(fan));
  out["euler_predicted"] = str(series_euler_number(t));
  auto coh = cohomology_cyclic(t.type());
  out["cohomology"] = cohomology_json(coh);
  out["cohomology_closed_form_matches"] = coh == series_cohomology(t);
  if (flags.basic) {
    Json divs = Json::array();
    for (const auto& d : divisor_reports(t)) {
      auto check = divisor_kind_check(t, d.j);
      Json e;
      e["j"] = str(d.j);
      e["point"] = point(t.point(d.j), Integer(t.l));
      e["kind"] = to_string(d.kind);
      e["name"] = divisor_name(t, d);
      e["detected"] = check.detected;
      e["kind_matches"] = check.kind_matches;
      e["self"] = str(d.self);
      if (d.self_printed) e["self_printed"] = str(*d.self_printed);
      if (d.with_next) e["with_next"] = str(*d.with_next);
      if (d.next_with) e["next_with"] = str(*d.next_with);
      e["numbers_match_fan"] = check.numbers_match;
      divs.push_back(e);
    }
    out["divisors"] = divs;
    if (t.r == 3) out["intersection_table_matches"] = intersection_table_fan(t) == intersection_table_closed(t);
  } else {
    auto res = residual_singularities(t);
    Json e;
    e["multiplicity"] = str(res.multiplicity);
    e["cyclic"] = res.cyclic;
    e["type"] = res.type ? Json(res.type->to_string()) : Json(nullptr);
    e["predicted"] = res.predicted;
    e["matches_prediction"] = res.matches_prediction;
    out["residual"] = e;
  }
  return out;
}

Json series_scan_report(long l_min, long l_max, long r, unsigned threads) {
  if (l_min > l_max) throw std::invalid_argument("empty scan range");
  std::vector<long> ls;
  for (long l = std::max(l_min, r); l <= l_max; ++l) ls.push_back(l);
  auto verdict = [r](long l) {
    SeriesType t(l, r);
    bool basic = classify(build_triangulation(t)).basic;
    bool predicted = t.remainder() == 0 || t.remainder() == 1;
    return Json{{"l", str(l)}, {"basic", basic}, {"predicted", predicted}, {"match", basic == predicted}};
  };
  std::vector<Json> rows(ls.size());
  threads = std::max(1U, threads);
  std::vector<std::future<void>> jobs;
  for (unsigned w = 0; w < threads; ++w)
    jobs.push_back(std::async(std::launch::async, [&, w] {
      for (std::size_t i = w; i < ls.size(); i += threads) rows[i] = verdict(ls[i]);
    }));
  for (auto& j : jobs) j.get();
  bool all = true;
  for (const auto& row : rows) all = all && row["match"].get<bool>();
  return Json{{"r", str(r)}, {"all_match", all}, {"types", rows}};
}

Json factorization_report(const SeriesType& t, FactorMode mode) {
  auto plan = factorize(t, mode);
  Json steps = Json::array();
  for (const auto& s : plan.steps)
    steps.push_back(Json{{"center", s.center},
                         {"simplex_count", str(static_cast<long>(s.triangulation.simplices.size()))},
                         {"simplices", simplices_json(s.triangulation)}});
  long predicted = mode == FactorMode::Speedy ? speedy_step_count(t) : stepwise_step_count(t);
  return Json{{"type", t.type().to_string()},
              {"mode", mode == FactorMode::Speedy ? "speedy" : "stepwise"},
              {"step_count", str(static_cast<long>(plan.steps.size()))},
              {"step_count_predicted", str(predicted)},
              {"steps", steps}};
}

Json bundle_report(long r, const std::vector<long>& twists) {
  auto y = build_hk_fan(r, twists);
  Json out;
  out["variety"] = y.params.to_string();
  out["maximal_cones"] = str(static_cast<long>(y.fan.cones().size()));
  out["K^r"] = str(canonical_degree(y.fan));
  bool closed = twists.size() == 1 && twists[0] != 0;
  out["K^r_formula"] = closed ? Json(str(canonical_self_intersection(r, twists[0]))) : Json(nullptr);
  if (twists.size() == 1) {
    std::vector<IntVector> e(static_cast<std::size_t>(r), y.base[1]);
    out["E^r"] = str(intersection_number(y.fan, e));
    out["E^r_formula"] = str(e_divisor_self_intersection(r, twists[0]));
  }
  out["embedding_dimension"] = str(ews_embedding_dimension(r, twists));
  if (r <= 4) {
    auto p = anticanonical_polytope(y.fan);
    if (p) {
      out["anticanonical"] = Json{{"ample", true},
                                  {"vertices", str(static_cast<long>(p->vertices.size()))},
                                  {"volume", to_string(polytope_volume(*p))},
                                  {"(-K)^r", to_string(self_intersection_via_volume(*p, static_cast<std::size_t>(r)))}};
    } else {
      out["anticanonical"] = Json{{"ample", false}};
    }
  }
  return out;
}

LatticeTriangulation triangulation_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("l") || !j.contains("weights") || !j.contains("simplices"))
    throw std::invalid_argument("triangulation file needs l, weights and simplices");
  Integer l = parse_integer(j["l"]);
  IntVector w;
  if (j["weights"].is_string()) {
    w = parse_type(l.get_str(), j["weights"].get<std::string>()).weights;
  } else {
    for (const auto& x : j["weights"]) w.push_back(parse_integer(x));
  }
  CyclicQuotientType t(l, w);
  std::vector<std::vector<IntVector>> simplices;
  for (const auto& s : j["simplices"]) {
    std::vector<IntVector> verts;
    for (const auto& p : s) {
      IntVector v;
      for (const auto& x : p) v.push_back(parse_integer(x));
      verts.push_back(v);
    }
    simplices.push_back(verts);
  }
  return make_triangulation(t.lattice(), junior_points(t).all(), simplices);
}

Json triangulation_check_report(const LatticeTriangulation& t) {
  auto flags = classify(t);
  auto cert = coherence_certificate(t);
  Json out;
  out["simplices"] = str(static_cast<long>(t.simplices.size()));
  out["maximal"] = flags.maximal;
  out["basic"] = flags.basic;
  out["crepant"] = flags.crepant;
  out["coherent"] = cert.coherent;
  out["epsilon"] = to_string(cert.epsilon);
  if (!cert.coherent) {
    Json tight = Json::array();
    for (std::size_t i = 0; i < cert.tight.size(); ++i)
      tight.push_back(Json{{"simplex", str(static_cast<long>(cert.tight[i].first))},
                           {"point", point(t.points[cert.tight[i].second], t.lattice.denominator())},
                           {"multiplier", to_string(cert.multipliers[i])}});
    out["obstruction"] = tight;
  }
  return out;
}

namespace {

void plain(const Json& j, const std::string& key, std::ostringstream& os) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) plain(v, key.empty() ? k : key + "." + k, os);
  } else if (j.is_array()) {
    bool flat = std::all_of(j.begin(), j.end(), [](const Json& x) { return x.is_primitive(); });
    if (flat) {
      os << key << ":";
      for (const auto& x : j) os << " " << (x.is_string() ? x.get<std::string>() : x.dump());
      os << "\n";
    } else {
      for (std::size_t i = 0; i < j.size(); ++i) plain(j[i], key + "[" + std::to_string(i) + "]", os);
    }
  } else {
    os << key << ": " << (j.is_string() ? j.get<std::string>() : j.dump()) << "\n";
  }
}

}  // namespace

std::string render_plain(const Json& j) {
  std::ostringstream os;
  plain(j, "", os);
  return os.str();
}

}  // namespace crepanto
