#pragma once

#include "fordc/kernel/signature.hpp"

namespace fordc::kernel {

inline constexpr long kDefaultStepBudget = 100000;
// Evaluation nesting beyond this is reported like an exhausted budget rather
// than overflowing the native stack.
inline constexpr int kMaxEvalDepth = 5000;

/// Normalization by evaluation. Every beta step, function unfolding and
/// J-on-refl reduction counts against the step budget.
class Evaluator {
public:
  Evaluator(const Signature& sig, long budget, const Context* ctx = nullptr)
      : sig_(sig), ctx_(ctx), budget_(budget) {}

  Val eval(const Env& env, const TermPtr& t);
  Val apply(const Val& f, const Val& arg);
  Val applyAll(Val f, const std::vector<Val>& args);
  Val instantiate(const Closure& c, const Val& arg);

  /// Unfolds variables defined in the context and retries calls that were
  /// stuck on them.
  Val force(const Val& v);

  /// Reads a value back as a beta-normal, J-reduced term valid at `level`.
  TermPtr quote(int level, const Val& v);

  TermPtr normalize(const Env& env, int level, const TermPtr& t) { return quote(level, eval(env, t)); }

  void resetSteps() { steps_ = 0; }
  long steps() const { return steps_; }
  long budget() const { return budget_; }

private:
  enum class Match { Yes, No, Stuck };

  const Signature& sig_;
  const Context* ctx_;
  long budget_;
  long steps_ = 0;
  int depth_ = 0;

  void step();
  Val callFun(const FunInfo& f, std::vector<Val> spine);
  Val reduceJ(const Val& motive, const Val& base, const Val& path, std::vector<Val> spine);
  Match match(const CPattern& p, const Val& v, Env& env);
  std::vector<TermPtr> quoteAll(int level, const std::vector<Val>& vs);
};

} // namespace fordc::kernel
