#pragma once

// JSON bindings: polynomials as a list of {i, j, re, im} records and the
// certificate as a structured document (status, tropisms as integer pairs,
// roots and germs as re/im pairs, residual slopes).  Timings never leave the
// process, so emission is deterministic and round-trips exactly.

#include <string>

#include <json.hpp>

#include "tropfactor/pipeline.hpp"
#include "tropfactor/polynomial.hpp"

namespace tropfactor {

using Json = nlohmann::json;

inline Json poly_to_json(const SparsePoly& p) {
  Json arr = Json::array();
  for (const Term& t : p.terms())
    arr.push_back({{"i", t.e.i}, {"j", t.e.j}, {"re", t.c.real()}, {"im", t.c.imag()}});
  return arr;
}

inline SparsePoly poly_from_json(const Json& j) {
  std::vector<Term> terms;
  for (const auto& rec : j)
    terms.push_back({{rec.at("i").get<long long>(), rec.at("j").get<long long>()},
                     {rec.at("re").get<double>(), rec.at("im").get<double>()}});
  return SparsePoly::from_terms(terms, 0.0);
}

namespace detail {

inline Json complex_to_json(Complex z) {
  return {{"re", z.real()}, {"im", z.imag()}};
}
inline Complex complex_from_json(const Json& j) {
  return {j.at("re").get<double>(), j.at("im").get<double>()};
}
inline Json tropism_to_json(Tropism t) { return Json::array({t.u, t.v}); }
inline Tropism tropism_from_json(const Json& j) {
  return {j.at(0).get<long long>(), j.at(1).get<long long>()};
}

}  // namespace detail

inline Status status_from_string(const std::string& s) {
  if (s == "no_tropism") return Status::NoTropism;
  if (s == "no_initial_root") return Status::NoInitialRoot;
  if (s == "no_second_term") return Status::NoSecondTerm;
  if (s == "factor_likely") return Status::FactorLikely;
  throw std::invalid_argument("unknown status: " + s);
}

inline Json certificate_to_json(const Certificate& cert) {
  Json j;
  j["status"] = to_string(cert.status);
  j["tropisms"] = Json::array();
  for (const Tropism& t : cert.tropisms)
    j["tropisms"].push_back(detail::tropism_to_json(t));
  j["roots"] = Json::array();
  for (const TropismRoots& tr : cert.roots) {
    Json entry;
    entry["tropism"] = detail::tropism_to_json(tr.tropism);
    entry["roots"] = Json::array();
    for (const InitialRoot& r : tr.roots)
      entry["roots"].push_back({{"z", detail::complex_to_json(r.z)},
                                {"residual_f", r.residual_f},
                                {"residual_g", r.residual_g}});
    j["roots"].push_back(entry);
  }
  j["germs"] = Json::array();
  for (const CertifiedGerm& cg : cert.germs)
    j["germs"].push_back({{"tropism", detail::tropism_to_json(cg.germ.tropism)},
                          {"d", cg.germ.d},
                          {"c0", detail::complex_to_json(cg.germ.c0)},
                          {"w", {{"num", cg.germ.w.num}, {"den", cg.germ.w.den}}},
                          {"c1", detail::complex_to_json(cg.germ.c1)},
                          {"slope_f", cg.slope_f},
                          {"slope_g", cg.slope_g}});
  j["rejects"] = Json::array();
  for (const StageThreeReject& r : cert.rejects) {
    Json entry;
    entry["tropism"] = detail::tropism_to_json(r.tropism);
    entry["c0"] = detail::complex_to_json(r.c0);
    entry["reason"] = r.reason;
    if (r.have_data)
      entry["exponents"] = {
          {"k", r.data.k}, {"l", r.data.l}, {"a1", r.data.a1}, {"b1", r.data.b1}};
    if (r.have_w) entry["w"] = {{"num", r.w.num}, {"den", r.w.den}};
    j["rejects"].push_back(entry);
  }
  j["note"] = cert.note;
  return j;
}

inline Certificate certificate_from_json(const Json& j) {
  Certificate cert;
  cert.status = status_from_string(j.at("status").get<std::string>());
  for (const auto& t : j.at("tropisms"))
    cert.tropisms.push_back(detail::tropism_from_json(t));
  for (const auto& entry : j.at("roots")) {
    TropismRoots tr;
    tr.tropism = detail::tropism_from_json(entry.at("tropism"));
    for (const auto& r : entry.at("roots"))
      tr.roots.push_back({tr.tropism, detail::complex_from_json(r.at("z")),
                          r.at("residual_f").get<double>(),
                          r.at("residual_g").get<double>()});
    cert.roots.push_back(std::move(tr));
  }
  for (const auto& gj : j.at("germs")) {
    CertifiedGerm cg;
    cg.germ.tropism = detail::tropism_from_json(gj.at("tropism"));
    cg.germ.d = gj.at("d").get<long long>();
    cg.germ.c0 = detail::complex_from_json(gj.at("c0"));
    cg.germ.w = {gj.at("w").at("num").get<long long>(),
                 gj.at("w").at("den").get<long long>()};
    cg.germ.c1 = detail::complex_from_json(gj.at("c1"));
    cg.slope_f = gj.at("slope_f").get<double>();
    cg.slope_g = gj.at("slope_g").get<double>();
    cert.germs.push_back(std::move(cg));
  }
  for (const auto& rj : j.at("rejects")) {
    StageThreeReject r;
    r.tropism = detail::tropism_from_json(rj.at("tropism"));
    r.c0 = detail::complex_from_json(rj.at("c0"));
    r.reason = rj.at("reason").get<std::string>();
    if (rj.contains("exponents")) {
      r.have_data = true;
      r.data = {rj.at("exponents").at("k").get<long long>(),
                rj.at("exponents").at("l").get<long long>(),
                rj.at("exponents").at("a1").get<long long>(),
                rj.at("exponents").at("b1").get<long long>()};
    }
    if (rj.contains("w")) {
      r.have_w = true;
      r.w = {rj.at("w").at("num").get<long long>(),
             rj.at("w").at("den").get<long long>()};
    }
    cert.rejects.push_back(std::move(r));
  }
  cert.note = j.at("note").get<std::string>();
  return cert;
}

}  // namespace tropfactor
