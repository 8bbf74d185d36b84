#include "fuzzmap/fuzzy.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>

#include "fuzzmap/simd/kernels.hpp"

namespace fuzzmap {

namespace {

const FuzzyTerm* find_term(const std::vector<FuzzyTerm>& terms, std::string_view name) {
  for (const auto& t : terms) {
    if (t.name == name) return &t;
  }
  return nullptr;
}

std::size_t term_index(const std::vector<FuzzyTerm>& terms, std::string_view name) {
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (terms[i].name == name) return i;
  }
  return terms.size();
}

void validate_terms(const std::vector<FuzzyTerm>& terms, const char* what) {
  if (terms.empty()) throw std::invalid_argument(std::string("no ") + what + " terms");
  for (std::size_t i = 0; i < terms.size(); ++i) {
    try {
      terms[i].shape.validate();
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument("term '" + terms[i].name + "': " + e.what());
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (terms[j].name == terms[i].name) {
        throw std::invalid_argument("duplicate term '" + terms[i].name + "'");
      }
    }
  }
}

}  // namespace

double MembershipFunction::operator()(double x) const {
  if (vertices.empty() || x < vertices.front().first || x > vertices.back().first) return 0.0;
  auto upper = std::lower_bound(vertices.begin(), vertices.end(), x,
                                [](const auto& v, double value) { return v.first < value; });
  if (upper->first == x) return upper->second;
  const auto lower = upper - 1;
  const double t = (x - lower->first) / (upper->first - lower->first);
  return lower->second + t * (upper->second - lower->second);
}

void MembershipFunction::validate() const {
  if (vertices.empty()) throw std::invalid_argument("no vertices");
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    const auto [x, mu] = vertices[i];
    if (!(x >= 0.0 && x <= 1.0)) throw std::invalid_argument("x outside [0,1]");
    if (!(mu >= 0.0 && mu <= 1.0)) throw std::invalid_argument("membership outside [0,1]");
    if (i > 0 && !(x > vertices[i - 1].first)) throw std::invalid_argument("non-increasing x");
  }
}

FuzzySystem::FuzzySystem(FuzzySystemSpec spec) : spec_(std::move(spec)) {
  validate_terms(spec_.input_terms, "input");
  validate_terms(spec_.output_terms, "output");
  if (spec_.rules.empty()) throw std::invalid_argument("no rules");
  if (spec_.resolution < kMinResolution) {
    throw std::invalid_argument("resolution must be at least " + std::to_string(kMinResolution));
  }
  if (!(spec_.default_value >= 0.0 && spec_.default_value <= 1.0)) {
    throw std::invalid_argument("default value outside [0,1]");
  }

  const std::size_t samples = spec_.resolution;
  const double step = 1.0 / static_cast<double>(samples - 1);
  weights_.resize(samples);
  weighted_y_.resize(samples);
  for (std::size_t i = 0; i < samples; ++i) {
    const double y = static_cast<double>(i) / static_cast<double>(samples - 1);
    weights_[i] = (i == 0 || i + 1 == samples) ? 0.5 * step : step;
    weighted_y_[i] = weights_[i] * y;
  }

  samples_.reserve(spec_.rules.size() * samples);
  for (const auto& rule : spec_.rules) {
    const std::size_t in = term_index(spec_.input_terms, rule.antecedent);
    if (in == spec_.input_terms.size()) {
      throw std::invalid_argument("unresolved term '" + rule.antecedent + "'");
    }
    const FuzzyTerm* out = find_term(spec_.output_terms, rule.consequent);
    if (out == nullptr) throw std::invalid_argument("unresolved term '" + rule.consequent + "'");
    antecedents_.push_back(in);
    for (std::size_t i = 0; i < samples; ++i) {
      samples_.push_back(out->shape(static_cast<double>(i) / static_cast<double>(samples - 1)));
    }
  }
}

const FuzzyTerm* FuzzySystem::input_term(std::string_view name) const {
  return find_term(spec_.input_terms, name);
}

const FuzzyTerm* FuzzySystem::output_term(std::string_view name) const {
  return find_term(spec_.output_terms, name);
}

double FuzzySystem::evaluate(double x) const {
  if (!(x >= 0.0 && x <= 1.0)) throw std::domain_error("crisp input outside [0,1]");

  const std::size_t rules = spec_.rules.size();
  const std::size_t samples = spec_.resolution;
  constexpr std::size_t kInline = 16;
  std::array<double, kInline> act_inline;
  std::array<const double*, kInline> rows_inline;
  std::vector<double> act_heap;
  std::vector<const double*> rows_heap;
  double* act = act_inline.data();
  const double** rows = rows_inline.data();
  if (rules > kInline) {
    act_heap.resize(rules);
    rows_heap.resize(rules);
    act = act_heap.data();
    rows = rows_heap.data();
  }
  for (std::size_t r = 0; r < rules; ++r) {
    act[r] = spec_.input_terms[antecedents_[r]].shape(x);
    rows[r] = samples_.data() + r * samples;
  }

  const simd::CogSums sums = simd::active_kernels().cog_accumulate(
      rows, act, rules, weights_.data(), weighted_y_.data(), samples);
  if (sums.area <= 0.0) return spec_.default_value;
  return sums.moment / sums.area;
}

FuzzySystem default_system() {
  FuzzySystemSpec spec;
  spec.input_terms = {
      {"close_to_r", {{{0.0, 0.0}, {1.0, 1.0}}}},
      {"close_to_R", {{{0.0, 1.0}, {1.0, 0.0}}}},
  };
  spec.output_terms = {
      {"adjacent", {{{0.0, 0.0}, {1.0, 1.0}}}},
      {"non_adjacent", {{{0.0, 1.0}, {1.0, 0.0}}}},
  };
  spec.rules = {{"close_to_r", "adjacent"}, {"close_to_R", "non_adjacent"}};
  return FuzzySystem(std::move(spec));
}

}  // namespace fuzzmap
