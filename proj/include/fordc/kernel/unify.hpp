#pragma once

#include "fordc/kernel/eval.hpp"

namespace fordc::kernel {

struct UnifyResult {
  enum class Kind { Success, Mismatch, Stuck };

  Kind kind = Kind::Success;
  // Success: variables solved, as (level, value) in solving order.
  std::vector<std::pair<int, Val>> solutions;
  // Mismatch: the two clashing constructor heads. Stuck: `left` is the
  // blocking neutral term.
  Val left, right;
  std::string evidence;

  bool ok() const { return kind == Kind::Success; }
};

/// First-order unification over values. Variables at levels >= flexFrom that
/// have no definition are flexible; solutions are recorded as definitions in
/// the context. Problems are solved left to right, depth first; when two
/// flexible variables meet, the later-bound one (the pattern variable) is
/// solved.
class Unifier {
public:
  Unifier(Evaluator& ev, Context& ctx, int flexFrom, const Signature& sig)
      : ev_(ev), ctx_(ctx), flexFrom_(flexFrom), sig_(sig) {}

  UnifyResult unify(const Val& a, const Val& b);
  UnifyResult unifyAll(const std::vector<Val>& as, const std::vector<Val>& bs);

private:
  Evaluator& ev_;
  Context& ctx_;
  int flexFrom_;
  const Signature& sig_;
  UnifyResult result_;

  bool go(const Val& a, const Val& b);
  bool solve(int level, const Val& v);
  std::optional<int> flex(const Val& v) const;
  bool fail(UnifyResult::Kind kind, const Val& l, const Val& r);
  std::string show(const Val& v);
};

} // namespace fordc::kernel
