#include "lojet/json_io.hpp"

namespace lojet {

namespace {

using nlohmann::json;

const json& require(const json& j, const std::string& path, const char* key) {
  if (!j.is_object()) throw SpecError(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw SpecError(path + "." + key, "missing required field");
  return *it;
}

double as_number(const json& j, const std::string& path) {
  if (!j.is_number()) throw SpecError(path, "expected a number");
  return j.get<double>();
}

int as_int(const json& j, const std::string& path) {
  if (!j.is_number_integer()) throw SpecError(path, "expected an integer");
  return j.get<int>();
}

std::string as_string(const json& j, const std::string& path) {
  if (!j.is_string()) throw SpecError(path, "expected a string");
  return j.get<std::string>();
}

Eigen::VectorXd as_vector(const json& j, const std::string& path, int expect_dim = -1) {
  if (!j.is_array()) throw SpecError(path, "expected an array of numbers");
  Eigen::VectorXd v(j.size());
  for (std::size_t i = 0; i < j.size(); ++i)
    v[static_cast<Eigen::Index>(i)] = as_number(j[i], path + "[" + std::to_string(i) + "]");
  if (expect_dim >= 0 && v.size() != expect_dim)
    throw SpecError(path, "expected " + std::to_string(expect_dim) + " entries, got " +
                              std::to_string(v.size()));
  return v;
}

json vector_to_json(const Eigen::VectorXd& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

json fit_to_json(const ExponentFit& fit) {
  return json{{"valid", fit.valid},
              {"slope", fit.slope},
              {"intercept", fit.intercept},
              {"max_residual", fit.max_residual}};
}

json witness_to_json(const WitnessPoint& w) {
  return json{{"x", vector_to_json(w.x)}, {"f_value", w.f_value}, {"radius", w.radius}};
}

}  // namespace

ProblemSpec problem_from_json(const json& j) {
  ProblemSpec spec;
  spec.function_text = as_string(require(j, "spec", "function"), "spec.function");
  spec.n_vars = as_int(require(j, "spec", "n_vars"), "spec.n_vars");
  if (spec.n_vars < 1) throw SpecError("spec.n_vars", "must be >= 1");
  spec.x_bar = as_vector(require(j, "spec", "x_bar"), "spec.x_bar", spec.n_vars);
  spec.r = as_int(require(j, "spec", "r"), "spec.r");
  if (spec.r < 2) throw SpecError("spec.r", "must be >= 2");
  spec.sigma_spec = require(j, "spec", "sigma");

  if (j.contains("radii")) {
    const json& a = j["radii"];
    if (!a.is_array() || a.empty()) throw SpecError("spec.radii", "expected a nonempty array");
    spec.radii.clear();
    for (std::size_t i = 0; i < a.size(); ++i)
      spec.radii.push_back(as_number(a[i], "spec.radii[" + std::to_string(i) + "]"));
    for (std::size_t i = 1; i < spec.radii.size(); ++i)
      if (spec.radii[i] >= spec.radii[i - 1])
        throw SpecError("spec.radii", "must be strictly decreasing");
  }
  if (j.contains("samples_per_shell")) {
    spec.samples_per_shell = as_int(j["samples_per_shell"], "spec.samples_per_shell");
    if (spec.samples_per_shell < 1) throw SpecError("spec.samples_per_shell", "must be >= 1");
  }
  if (j.contains("seed")) {
    if (!j["seed"].is_number_integer()) throw SpecError("spec.seed", "expected an integer");
    spec.seed = j["seed"].get<std::uint64_t>();
  }
  if (j.contains("w_bar")) {
    spec.w_bar = as_number(j["w_bar"], "spec.w_bar");
    if (!(spec.w_bar > 0.0)) throw SpecError("spec.w_bar", "must be positive");
  }
  if (j.contains("perturbation")) {
    const json& p = j["perturbation"];
    PerturbationSpec ps;
    ps.h_text = as_string(require(p, "spec.perturbation", "h"), "spec.perturbation.h");
    ps.epsilon =
        as_number(require(p, "spec.perturbation", "epsilon"), "spec.perturbation.epsilon");
    if (p.contains("mode")) {
      const std::string m = as_string(p["mode"], "spec.perturbation.mode");
      if (m == "dist_bound")
        ps.mode = PerturbMode::dist_bound;
      else if (m == "gradient_bound")
        ps.mode = PerturbMode::gradient_bound;
      else
        throw SpecError("spec.perturbation.mode", "expected dist_bound or gradient_bound");
    }
    spec.perturbation = std::move(ps);
  }
  return spec;
}

SigmaSet sigma_from_spec(const json& j, const Expression& f, int n_vars,
                         const Eigen::VectorXd& x_bar) {
  const std::string type = as_string(require(j, "spec.sigma", "type"), "spec.sigma.type");
  if (type == "point") {
    Eigen::VectorXd p = j.contains("point")
                            ? as_vector(j["point"], "spec.sigma.point", n_vars)
                            : x_bar;
    return SigmaSet::singleton(std::move(p));
  }
  if (type == "affine") {
    Eigen::VectorXd offset = as_vector(require(j, "spec.sigma", "offset"), "spec.sigma.offset",
                                       n_vars);
    const json& rows = require(j, "spec.sigma", "basis");
    if (!rows.is_array() || rows.empty())
      throw SpecError("spec.sigma.basis", "expected a nonempty array of rows");
    Eigen::MatrixXd basis(n_vars, rows.size());
    for (std::size_t c = 0; c < rows.size(); ++c)
      basis.col(static_cast<Eigen::Index>(c)) =
          as_vector(rows[c], "spec.sigma.basis[" + std::to_string(c) + "]", n_vars);
    return SigmaSet::affine(std::move(offset), std::move(basis));
  }
  if (type == "cloud") {
    const json& pts = require(j, "spec.sigma", "points");
    if (!pts.is_array() || pts.empty())
      throw SpecError("spec.sigma.points", "expected a nonempty array of points");
    std::vector<Eigen::VectorXd> cloud;
    for (std::size_t i = 0; i < pts.size(); ++i)
      cloud.push_back(as_vector(pts[i], "spec.sigma.points[" + std::to_string(i) + "]", n_vars));
    return SigmaSet::point_cloud(std::move(cloud));
  }
  if (type == "critical") {
    const double radius =
        j.contains("ball_radius") ? as_number(j["ball_radius"], "spec.sigma.ball_radius") : 0.5;
    const int starts = j.contains("n_starts") ? as_int(j["n_starts"], "spec.sigma.n_starts") : 64;
    const double tol = j.contains("tol") ? as_number(j["tol"], "spec.sigma.tol") : 1e-10;
    Eigen::VectorXd center =
        j.contains("center") ? as_vector(j["center"], "spec.sigma.center", n_vars) : x_bar;
    return SigmaSet::critical_set(f, std::move(center), radius, starts, tol);
  }
  throw SpecError("spec.sigma.type", "expected point, affine, cloud, or critical");
}

json sigma_to_json(const SigmaSet& sigma) {
  json j;
  switch (sigma.kind()) {
    case SigmaSet::Kind::Singleton:
      j["type"] = "point";
      j["point"] = vector_to_json(sigma.singleton_point());
      break;
    case SigmaSet::Kind::Affine: {
      j["type"] = "affine";
      j["offset"] = vector_to_json(sigma.affine_offset());
      json rows = json::array();
      for (Eigen::Index c = 0; c < sigma.affine_basis().cols(); ++c)
        rows.push_back(vector_to_json(sigma.affine_basis().col(c)));
      j["basis"] = rows;
      break;
    }
    case SigmaSet::Kind::PointCloud:
    case SigmaSet::Kind::CriticalSet: {
      j["type"] = sigma.kind() == SigmaSet::Kind::PointCloud ? "cloud" : "critical";
      if (sigma.resolved()) {
        json pts = json::array();
        for (const auto& p : sigma.cloud()) pts.push_back(vector_to_json(p));
        j["points"] = pts;
        j["resolve_warning"] = sigma.resolve_warning();
      }
      if (sigma.kind() == SigmaSet::Kind::CriticalSet)
        j["ball_radius"] = sigma.critical_ball_radius();
      break;
    }
  }
  return j;
}

json jet_to_json(const Jet& jet) {
  json terms = json::array();
  for (const auto& [alpha, c] : jet.poly.terms())
    terms.push_back(json{{"alpha", alpha.exponents()}, {"coefficient", c}});
  return json{{"center", vector_to_json(jet.center)},
              {"degree", jet.degree},
              {"base_value", jet.base_value},
              {"terms", terms},
              {"text", jet.poly.to_string()}};
}

json estimate_to_json(const LojaEstimate& est) {
  json shells = json::array();
  for (const auto& s : est.shells)
    shells.push_back(json{{"radius", s.radius},
                          {"infimum", s.empty ? json() : json(s.infimum)},
                          {"used_samples", s.used_samples},
                          {"empty", s.empty},
                          {"argmin_dist", s.argmin_dist},
                          {"argmin_value", s.argmin_value}});
  json j{{"condition", condition_name(est.tag)},
         {"r", est.r},
         {"shells", shells},
         {"c_hat", std::isfinite(est.c_hat) ? json(est.c_hat) : json()},
         {"fit", fit_to_json(est.fit)},
         {"holds_empirically", est.holds_empirically},
         {"vacuous", est.vacuous},
         {"seed", est.seed},
         {"c_floor", est.c_floor}};
  if (est.w_bar) j["w_bar"] = *est.w_bar;
  return j;
}

json verdict_to_json(const Verdict& verdict) {
  json j{{"status", status_name(verdict.status)},
         {"path", path_name(verdict.path)},
         {"notes", verdict.notes}};
  if (verdict.certificate)
    j["certificate"] = json{{"c", verdict.certificate->c},
                            {"radius", verdict.certificate->radius},
                            {"method", verdict.certificate->method}};
  json ws = json::array();
  for (const auto& w : verdict.witnesses) ws.push_back(witness_to_json(w));
  j["witnesses"] = ws;
  json es = json::array();
  for (const auto& e : verdict.estimates) es.push_back(estimate_to_json(e));
  j["estimates"] = es;
  return j;
}

json perturbation_to_json(const PerturbationReport& report) {
  return json{{"h_bound_ok", report.h_bound_ok},
              {"combined_min_empirical", report.combined_min_empirical},
              {"applicable", report.applicable},
              {"c_hat", std::isfinite(report.c_hat) ? json(report.c_hat) : json()},
              {"L_hat", report.L_hat},
              {"samples_checked", report.samples_checked},
              {"notes", report.notes}};
}

}  // namespace lojet
