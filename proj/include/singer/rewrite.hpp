#ifndef SINGER_REWRITE_HPP
#define SINGER_REWRITE_HPP

#include <cstddef>
#include <optional>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include "singer/singer.hpp"

namespace singer {

struct RewriteConfig {
  double epsilon = 0.01;
  /// 0 selects the derived default ceil(log2(1/epsilon)) * 8.
  unsigned max_element_trials = 0;
  u64 seed = 1;
  unsigned min_word_length = 2;
  unsigned max_word_length = 16;
  unsigned verification_words = 20;
  /// Reference elements tried per accepted candidate when fixing the diagonal gauge.
  unsigned reference_attempts = 8;

  unsigned element_trials() const;
};

struct RewriteStats {
  u64 elements_sampled = 0;
  u64 dlog_calls = 0;
  u64 retries = 0;
  double wall_time = 0.0;  // seconds
};

enum class FailureKind { BudgetExhausted, NotSingerSpectrum, DegenerateEntries };
std::string to_string(FailureKind k);

struct Failure {
  FailureKind kind = FailureKind::BudgetExhausted;
  std::string message;
  RewriteStats stats;
};

struct OmegaLabeling {
  Fe omega;
  std::vector<std::size_t> label_of;  // eigenvalue index -> index into basis_labels(spec)
};

struct SingerCandidate {
  Mat element;  // s_W over F_q
  std::vector<Fe> eigenvalues;  // sorted by encoding
  OmegaLabeling labeling;
};

struct RewriteResult {
  FieldCtx ctx;
  ModuleSpec spec;
  std::vector<Mat> phi;  // d x d over F_{q^d}, pivot entry 1
  Mat C;                 // rows are eigenvectors in basis_labels order
  std::vector<Fe> eigenvalues;
  std::vector<std::size_t> labels;
  Fe omega;
  std::vector<Fe> scalars;  // induced(phi(x)) = scalars[x] * C M_W(x) C^-1
  RewriteStats stats;
};

struct Verdict {
  bool verified = false;
  std::vector<Fe> scalars;
  std::string witness;
};

/// Product replacement with an accumulator; slots only ever get multiplied together.
class ProductReplacement {
 public:
  ProductReplacement(const std::vector<Mat>& generators, std::mt19937_64& rng, std::size_t slots = 10, unsigned warmup = 50);
  Mat next();

 private:
  void step();

  std::vector<Mat> slots_;
  Mat acc_;
  std::mt19937_64& rng_;
};

Mat random_element(const std::vector<Mat>& generators, std::mt19937_64& rng);

/// First factor whose functor determines A up to a scalar (anything except ext(d) when d > 1).
std::optional<std::size_t> extraction_factor(const ModuleSpec& spec);

std::variant<OmegaLabeling, Failure> recover_omega(const std::vector<Fe>& eigenvalues, const ModuleSpec& spec,
                                                   const FieldCtx& ctx, RewriteStats* stats = nullptr);

/// Acceptance test for a single element of GL(W).
std::optional<SingerCandidate> test_candidate(const Mat& s, const ModuleSpec& spec, const FieldCtx& ctx,
                                              RewriteStats* stats = nullptr);

std::variant<SingerCandidate, Failure> find_singer_candidate(const std::vector<Mat>& generators, const ModuleSpec& spec,
                                                             const FieldCtx& ctx, const RewriteConfig& cfg);

Mat build_eigenbasis(const Mat& s, const std::vector<Fe>& eigenvalues, const OmegaLabeling& labeling, const FieldCtx& ctx);

/// For Mhat = G * induced(B) * G^-1 with G diagonal, returns h such that
/// diag(h)^-1 * Mhat * diag(h) is a scalar multiple of induced(B') for some B'.
std::optional<std::vector<Fe>> find_diagonal_gauge(const Mat& Mhat, const ModuleSpec& spec, const FieldCtx& ctx);

std::variant<Mat, Failure> reconstruct_generator(const Mat& Mhat, const ModuleSpec& spec, const FieldCtx& ctx);

Verdict verify_projective(const std::vector<Mat>& phi, const std::vector<Mat>& generators, const Mat& C,
                          const ModuleSpec& spec, const FieldCtx& ctx, const RewriteConfig& cfg);

std::variant<RewriteResult, Failure> rewrite(const std::vector<Mat>& generators, const ModuleSpec& spec,
                                             const RewriteConfig& cfg);

} // namespace singer

#endif
