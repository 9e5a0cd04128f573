#include "bidisk/json_io.hpp"

#include <fstream>
#include <set>

#include "bidisk/errors.hpp"

namespace bidisk {

namespace {

Json terms_to_json(const std::map<MonoKey, Complex>& terms) {
  Json arr = Json::array();
  for (const auto& [k, c] : terms) {
    arr.push_back({{"i", k.i}, {"j", k.j}, {"re", c.real()}, {"im", c.imag()}});
  }
  return Json{{"terms", arr}};
}

template <typename Poly>
Poly poly_from_json(const Json& j, bool nonneg, const char* what) {
  if (!j.is_object() || !j.contains("terms") || !j["terms"].is_array()) {
    throw ConfigError(std::string(what) + ": expected {\"terms\": [...]}");
  }
  Poly p;
  std::set<std::pair<int, int>> seen;
  for (const auto& t : j["terms"]) {
    if (!t.is_object() || !t.contains("i") || !t.contains("j") ||
        !t.contains("re") || !t.contains("im")) {
      throw ConfigError(std::string(what) + ": term needs i, j, re, im");
    }
    const int i = t["i"].get<int>();
    const int jj = t["j"].get<int>();
    if (nonneg && (i < 0 || jj < 0)) {
      throw ConfigError(std::string(what) + ": exponents must be nonnegative");
    }
    if (!seen.insert({i, jj}).second) {
      throw ConfigError(std::string(what) + ": duplicate (i,j) entry");
    }
    p.add_term(i, jj, Complex(t["re"].get<double>(), t["im"].get<double>()));
  }
  return p;
}

Complex complex_from_json(const Json& j, const char* what) {
  if (!j.is_array() || j.size() != 2) {
    throw ConfigError(std::string(what) + ": expected [re, im]");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

}  // namespace

Json to_json(const BiPoly& p) { return terms_to_json(p.terms()); }
Json to_json(const TrigPoly& t) { return terms_to_json(t.terms()); }

BiPoly bipoly_from_json(const Json& j) {
  return poly_from_json<BiPoly>(j, true, "BiPoly");
}

TrigPoly trigpoly_from_json(const Json& j) {
  return poly_from_json<TrigPoly>(j, false, "TrigPoly");
}

Json to_json(const KernelExpr& k) {
  using Kind = KernelExpr::Kind;
  Json j{{"kind", k.tag()}};
  switch (k.kind()) {
    case Kind::Szego:
      break;
    case Kind::OneVarDBR:
      j["b"] = to_json(k.b());
      j["var"] = k.var();
      break;
    case Kind::DBR2:
      j["phi"] = to_json(k.phi());
      break;
    case Kind::RKernel:
      j["phi"] = to_json(k.phi());
      j["psi"] = to_json(k.psi());
      break;
    case Kind::Sum:
    case Kind::Product:
      j["left"] = to_json(k.left());
      j["right"] = to_json(k.right());
      break;
    case Kind::Power:
      j["alpha"] = k.alpha();
      j["base"] = to_json(k.base());
      break;
    case Kind::ConjMult:
      j["f"] = to_json(k.f());
      j["base"] = to_json(k.base());
      break;
    case Kind::Scalar:
      j["c"] = k.scalar_c();
      j["base"] = to_json(k.base());
      break;
  }
  return j;
}

KernelExpr kernel_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("kind")) {
    throw ConfigError("KernelExpr: expected {\"kind\": ...}");
  }
  const std::string kind = j["kind"].get<std::string>();
  try {
    if (kind == "szego") return KernelExpr::szego();
    if (kind == "one_var_dbr") {
      return KernelExpr::one_var_dbr(bipoly_from_json(j.at("b")), j.at("var").get<int>());
    }
    if (kind == "dbr2") return KernelExpr::dbr2(bipoly_from_json(j.at("phi")));
    if (kind == "r_kernel") {
      return KernelExpr::r_kernel(bipoly_from_json(j.at("phi")),
                                  bipoly_from_json(j.at("psi")));
    }
    if (kind == "sum") {
      return KernelExpr::sum(kernel_from_json(j.at("left")), kernel_from_json(j.at("right")));
    }
    if (kind == "product") {
      return KernelExpr::product(kernel_from_json(j.at("left")),
                                 kernel_from_json(j.at("right")));
    }
    if (kind == "power") {
      return KernelExpr::power(kernel_from_json(j.at("base")), j.at("alpha").get<int>());
    }
    if (kind == "conj_mult") {
      return KernelExpr::conj_mult(bipoly_from_json(j.at("f")),
                                   kernel_from_json(j.at("base")));
    }
    if (kind == "scalar") {
      return KernelExpr::scalar(j.at("c").get<double>(), kernel_from_json(j.at("base")));
    }
  } catch (const Json::exception& e) {
    throw ConfigError(std::string("KernelExpr: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("KernelExpr: ") + e.what());
  }
  throw ConfigError("KernelExpr: unknown kind '" + kind + "'");
}

Json to_json(const PointSet& s) {
  Json arr = Json::array();
  for (const auto& p : s.points()) {
    arr.push_back({{"z1", {p.z1.real(), p.z1.imag()}}, {"z2", {p.z2.real(), p.z2.imag()}}});
  }
  return arr;
}

PointSet pointset_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) throw ConfigError("PointSet: expected a nonempty array");
  std::vector<Point2> pts;
  for (const auto& pj : j) {
    if (!pj.is_object() || !pj.contains("z1") || !pj.contains("z2")) {
      throw ConfigError("PointSet: point needs z1 and z2");
    }
    try {
      pts.emplace_back(complex_from_json(pj["z1"], "z1"), complex_from_json(pj["z2"], "z2"));
    } catch (const std::invalid_argument& e) {
      throw ConfigError(std::string("PointSet: ") + e.what());
    }
  }
  try {
    return PointSet(std::move(pts));
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("PointSet: ") + e.what());
  }
}

Json to_json(const NegativityCertificate& c) {
  Json coeffs = Json::array();
  for (Eigen::Index k = 0; k < c.coeffs.size(); ++k) {
    coeffs.push_back({c.coeffs(k).real(), c.coeffs(k).imag()});
  }
  return Json{{"points", to_json(c.points)}, {"coeffs", coeffs}, {"value", c.value}};
}

namespace {

std::string form_name(DecompForm f) {
  switch (f) {
    case DecompForm::Ex1: return "ex1";
    case DecompForm::Ex2: return "ex2";
    case DecompForm::Ex3: return "ex3";
  }
  return "?";
}

}  // namespace

Json to_json(const Decomposition& d) {
  Json j{{"form", form_name(d.form)},
         {"f1", to_json(d.f1)},
         {"f2", to_json(d.f2)},
         {"g", to_json(g_function(d))}};
  j["f3"] = d.f3.has_value() ? to_json(*d.f3) : Json(nullptr);
  return j;
}

Decomposition decomposition_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("form")) throw ConfigError("Decomposition: missing form");
  const std::string form = j["form"].get<std::string>();
  Decomposition d;
  if (form == "ex1") {
    d.form = DecompForm::Ex1;
  } else if (form == "ex2") {
    d.form = DecompForm::Ex2;
  } else if (form == "ex3") {
    d.form = DecompForm::Ex3;
  } else {
    throw ConfigError("Decomposition: unknown form '" + form + "'");
  }
  d.f1 = bipoly_from_json(j.at("f1"));
  d.f2 = bipoly_from_json(j.at("f2"));
  if (j.contains("f3") && !j["f3"].is_null()) d.f3 = bipoly_from_json(j["f3"]);
  return d;
}

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open file: " + path);
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw ConfigError("malformed JSON in " + path + ": " + e.what());
  }
}

}  // namespace bidisk
