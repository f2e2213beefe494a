#ifndef LOJET_JSON_IO_HPP
#define LOJET_JSON_IO_HPP

#include <optional>
#include <string>

#include <json.hpp>

#include "lojet/decide.hpp"
#include "lojet/jet.hpp"
#include "lojet/loja.hpp"
#include "lojet/sigma.hpp"

namespace lojet {

// Schema violation in a problem file; `path` is a dotted field path.
class SpecError : public std::runtime_error {
 public:
  SpecError(const std::string& path, const std::string& message)
      : std::runtime_error(path + ": " + message), path_(path) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

struct PerturbationSpec {
  std::string h_text;
  double epsilon = 0.0;
  PerturbMode mode = PerturbMode::dist_bound;
};

// One problem file: the function, the center, the degree, Sigma, and the
// sampling setup.
struct ProblemSpec {
  std::string function_text;
  int n_vars = 0;
  Eigen::VectorXd x_bar;
  int r = 2;
  nlohmann::json sigma_spec;
  std::vector<double> radii = {1e-1, 3e-2, 1e-2, 3e-3, 1e-3};
  int samples_per_shell = 512;
  std::uint64_t seed = 42;
  double w_bar = 1.0;
  std::optional<PerturbationSpec> perturbation;
};

ProblemSpec problem_from_json(const nlohmann::json& j);

// Builds Sigma from its "type"-tagged spec; a "critical" Sigma needs the
// problem's function as its source.
SigmaSet sigma_from_spec(const nlohmann::json& j, const Expression& f, int n_vars,
                         const Eigen::VectorXd& x_bar);

nlohmann::json sigma_to_json(const SigmaSet& sigma);
nlohmann::json jet_to_json(const Jet& jet);
nlohmann::json estimate_to_json(const LojaEstimate& est);
nlohmann::json verdict_to_json(const Verdict& verdict);
nlohmann::json perturbation_to_json(const PerturbationReport& report);

}  // namespace lojet

#endif  // LOJET_JSON_IO_HPP
