// Piecewise-linear generator functions for the shock-model copula families,
// with class validation and the phi/psi <-> f/g change of generators.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace casym {

// A scalar function on [0,1] that is piecewise linear on (0,1) and may jump at
// either endpoint.  Knots span [0,1]; the knot at x=0 carries the right-limit
// and the knot at x=1 the left-limit, while value_at_zero / value_at_one
// override the actual endpoint values (nullopt means "use the limit").  Every
// generator appearing in the shock-model families is of this shape.
class Generator {
 public:
  struct Knot {
    double x, y;
  };

  Generator(std::vector<Knot> knots, std::optional<double> value_at_zero,
            std::optional<double> value_at_one = std::nullopt);

  double operator()(double x) const;

  // f(x)/x with the extended-real convention at 0: the right-limit when it
  // exists, +infinity otherwise.
  double star(double x) const;

  double limit_at_zero() const { return knots_.front().y; }
  double limit_at_one() const { return knots_.back().y; }
  const std::vector<Knot>& knots() const { return knots_; }
  const std::optional<double>& value_at_zero() const { return value_at_zero_; }
  const std::optional<double>& value_at_one() const { return value_at_one_; }

  nlohmann::json to_json() const;
  static Generator from_json(const nlohmann::json& j);

  bool same_knots(const Generator& other, double tol = 0.0) const;

 private:
  std::vector<Knot> knots_;                // front at x=0, back at x=1
  std::optional<double> value_at_zero_;    // nullopt => limit
  std::optional<double> value_at_one_;
};

enum class GeneratorClass { MarshallFG, ScriptF, MaxminPhi, MaxminPsi };

std::string to_string(GeneratorClass c);

struct ClassViolation {
  double x;
  std::string condition;
  double residual;
};

struct GeneratorClassReport {
  GeneratorClass class_tested;
  bool passed = true;
  std::vector<ClassViolation> violations;
};

// Exact for piecewise-linear inputs: conditions are checked at all knots, at
// midpoints of knot intervals, and at the (possibly jumping) endpoints.
GeneratorClassReport validate_class(const Generator& g, GeneratorClass c);

// f(x) = phi(x) - x,  g(x) = 1 - x - psi(1 - x); validates the results as
// class-F members and throws std::invalid_argument when they are not.
std::pair<Generator, Generator> phi_psi_to_fg(const Generator& phi,
                                              const Generator& psi);

// Exact inverse: phi(t) = t + f(t), psi(t) = t - g(1 - t).
std::pair<Generator, Generator> fg_to_phi_psi(const Generator& f,
                                              const Generator& g);

// -- Named generators used by the extremal families ------------------------

// Marshall pair behind C_mu: f_mu = mu on (0,mu], = x above; g jumps to 1.
Generator marshall_f_mu(double mu);
Generator jump_to_one();

// Class-F members: the tent mu - x on (0,mu], the roof 1 - x, and the
// lambda-peaked hat behind the reflected family.
Generator script_f_tent(double mu);
Generator script_f_roof();
Generator script_f_hat(double lambda);

Generator identity_generator();
Generator zero_generator();

// Maxmin (phi,psi) pairs of the extremal families.
std::pair<Generator, Generator> maxmin_phi_psi_for_cmu(double mu);
std::pair<Generator, Generator> maxmin_phi_psi_for_dmu(double mu);

// -- Randomized valid generators (property tests, verification suite) ------

Generator random_script_f(std::uint64_t seed);
std::pair<Generator, Generator> random_marshall_pair(std::uint64_t seed);
std::pair<Generator, Generator> random_script_f_pair(std::uint64_t seed);

}  // namespace casym
