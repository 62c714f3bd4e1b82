#pragma once

#include "fordc/kernel/checker.hpp"

namespace fordc::kernel {

/// Closed canonical inhabitants of a closed type, built only from
/// constructors and refl, with constructor nesting at most `depth`.
/// Constructors whose availability row does not match the indices are
/// skipped, so `Vec Bool (suc zero)` yields only one-element vectors.
/// Argument types that are not data or identity types have no canonical
/// values here. Stops after `limit` values.
std::vector<Val> canonicalValues(const Kernel& k, const Val& type, int depth,
                                 size_t limit = 2000);

} // namespace fordc::kernel
