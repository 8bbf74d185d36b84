#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace fuzzmap {

/// Piecewise-linear membership function on [0, 1]. Zero outside the span of
/// its vertices.
struct MembershipFunction {
  std::vector<std::pair<double, double>> vertices;  // (x, mu), x strictly increasing

  double operator()(double x) const;
  /// Throws std::invalid_argument on an empty list, x outside [0,1], mu
  /// outside [0,1] or non-increasing x.
  void validate() const;

  friend bool operator==(const MembershipFunction&, const MembershipFunction&) = default;
};

struct FuzzyTerm {
  std::string name;
  MembershipFunction shape;
  friend bool operator==(const FuzzyTerm&, const FuzzyTerm&) = default;
};

/// IF <input> IS antecedent THEN <output> IS consequent.
struct FuzzyRule {
  std::string antecedent;
  std::string consequent;
  friend bool operator==(const FuzzyRule&, const FuzzyRule&) = default;
};

enum class Activation { kMin };
enum class Accumulation { kMax };
enum class Defuzzifier { kCenterOfGravity };

inline constexpr std::size_t kDefaultResolution = 1001;
inline constexpr std::size_t kMinResolution = 101;

struct FuzzySystemSpec {
  std::string name = "adjacency_likelihood";
  std::string input_variable = "proximity";
  std::string output_variable = "adjacency";
  std::vector<FuzzyTerm> input_terms;
  std::vector<FuzzyTerm> output_terms;
  std::vector<FuzzyRule> rules;
  std::size_t resolution = kDefaultResolution;
  double default_value = 0.5;  // result when no rule fires

  friend bool operator==(const FuzzySystemSpec&, const FuzzySystemSpec&) = default;
};

/// Single-input, single-output Mamdani system: min activation, max
/// accumulation, centre-of-gravity defuzzification by the trapezoid rule over
/// `resolution` uniform samples of [0, 1]. Immutable; evaluate() is reentrant.
class FuzzySystem {
 public:
  /// Validates the definition; throws std::invalid_argument.
  explicit FuzzySystem(FuzzySystemSpec spec);

  const FuzzySystemSpec& spec() const noexcept { return spec_; }
  const std::vector<FuzzyRule>& rules() const noexcept { return spec_.rules; }
  std::size_t resolution() const noexcept { return spec_.resolution; }
  Activation activation() const noexcept { return Activation::kMin; }
  Accumulation accumulation() const noexcept { return Accumulation::kMax; }
  Defuzzifier defuzzifier() const noexcept { return Defuzzifier::kCenterOfGravity; }

  const FuzzyTerm* input_term(std::string_view name) const;
  const FuzzyTerm* output_term(std::string_view name) const;

  /// Likelihood in [0, 1] for crisp input x in [0, 1]; throws
  /// std::domain_error outside that range.
  double evaluate(double x) const;

  friend bool operator==(const FuzzySystem& a, const FuzzySystem& b) { return a.spec_ == b.spec_; }

 private:
  FuzzySystemSpec spec_;
  std::vector<std::size_t> antecedents_;  // rule -> input term index
  std::vector<double> samples_;           // rule-major: output term of rule r at y_i
  std::vector<double> weights_;           // trapezoid weights
  std::vector<double> weighted_y_;        // weights_[i] * y_i
};

/// Two-rule adjacency system: "close to r" (x) implies adjacent, "close to
/// R" (1 - x) implies non-adjacent; mirrored linear output terms.
FuzzySystem default_system();

}  // namespace fuzzmap
