#pragma once

#include <cstddef>
#include <filesystem>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "clusart/vectorizer.hpp"

namespace clusart::fuzzyart {

enum class InputMode { kComplementCoding, kL1Normalization };

std::string_view to_string(InputMode mode);
InputMode parse_input_mode(std::string_view text);

struct Params {
  double alpha = 0.2;  // choice parameter, > 0
  double beta = 0.4;   // learning rate in [0,1]
  double rho = 0.8;    // vigilance in [0,1]
  bool fast_commit = true;
  int max_epochs = 50;
  InputMode input_mode = InputMode::kComplementCoding;

  // Throws ParameterError naming the offending field and its valid range.
  void validate() const;
};

// (a, 1 - a). Every component of `a` must lie in [0,1].
std::vector<double> complement_code(std::span<const double> a);

// a / |a| with the L1 norm. `a` must be nonzero.
std::vector<double> l1_normalize(std::span<const double> a);

// Componentwise minimum (fuzzy AND).
std::vector<double> fuzzy_min(std::span<const double> x, std::span<const double> y);

double l1_norm(std::span<const double> x);

// |x ^ y| without materializing the intersection.
double intersection_norm(std::span<const double> x, std::span<const double> y);

// T = |I ^ w| / (alpha + |w|)
double choice(std::span<const double> input, std::span<const double> w, double alpha);

// m = |I ^ w| / |I|
double match(std::span<const double> input, std::span<const double> w);

// Outcome of one input presentation.
struct Presentation {
  std::size_t category = 0;  // == category_count() before the call if a new node won
  double choice = 0.0;       // T_J of the resonating node
  double match = 0.0;
  bool novel = false;        // the uncommitted node won the search
  std::size_t resets = 0;    // vigilance failures before resonance
};

class Model {
 public:
  // Called after every weight update with the category index and the
  // weight vector before and after learning. A newly committed category
  // reports an all-ones "before" vector.
  using UpdateObserver =
      std::function<void(std::size_t, std::span<const double>, std::span<const double>)>;

  Model(std::size_t input_dim, Params params);

  std::size_t input_dim() const { return input_dim_; }
  std::size_t coded_dim() const { return coded_dim_; }
  const Params& params() const { return params_; }
  std::size_t category_count() const { return norms_.size(); }
  std::span<const double> weights(std::size_t j) const;

  // Applies the configured input mode to a raw vector in [0,1]^M.
  std::vector<double> encode(std::span<const double> raw) const;

  // Runs the choice / vigilance search for an encoded input. The search
  // always terminates because the uncommitted node resonates with anything.
  // With learn == false the model is left untouched; a winning uncommitted
  // node is then only reported through Presentation::novel.
  Presentation present(std::span<const double> coded, bool learn = true);

  // Same search restricted to committed categories; nullopt if none resonates.
  std::optional<Presentation> predict(std::span<const double> coded) const;

  // |I ^ w_j| for every committed category (OpenMP over categories).
  std::vector<double> intersection_norms(std::span<const double> coded) const;

  void set_observer(UpdateObserver observer) { observer_ = std::move(observer); }

  // Appends a committed category verbatim; used when loading a saved model.
  void add_category(std::span<const double> w);

 private:
  Presentation search(std::span<const double> coded, bool include_uncommitted,
                      std::vector<double>& inter) const;
  void learn(std::size_t j, std::span<const double> coded, bool first_commit);

  std::size_t input_dim_;
  std::size_t coded_dim_;
  Params params_;
  std::vector<double> weights_;  // category-major, coded_dim_ per category
  std::vector<double> norms_;    // |w_j|
  UpdateObserver observer_;
};

struct Assignment {
  std::string doc_id;
  std::size_t category = 0;
  double choice = 0.0;
  double match = 0.0;
};

struct TrainResult {
  Model model;
  std::vector<Assignment> assignments;  // last epoch, input order
  int epochs = 0;
  bool converged = false;

  // Document indices grouped per category, in category order.
  std::vector<std::vector<std::size_t>> clusters() const;
};

// Presents every vector in order, epoch after epoch, until two consecutive
// epochs give the same assignment vector or max_epochs is reached.
TrainResult train(std::span<const DocVector> vectors, const Params& params,
                  Model::UpdateObserver observer = {});

namespace reference {

// Direct single-threaded evaluation of T_j for every committed category.
std::vector<double> choice_scores(const Model& model, std::span<const double> coded);

}  // namespace reference

void save_model(const Model& model, const std::filesystem::path& path);
Model load_model(const std::filesystem::path& path);

// CSV doc_id,category,choice,match
void save_assignments(std::span<const Assignment> assignments, const std::filesystem::path& path);
std::vector<Assignment> load_assignments(const std::filesystem::path& path);

}  // namespace clusart::fuzzyart
