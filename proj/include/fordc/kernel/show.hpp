#pragma once

#include "fordc/kernel/signature.hpp"
#include "fordc/syntax.hpp"

namespace fordc::kernel {

/// Converts a core term back to surface syntax. `names` gives the names of the
/// variables in scope, by level. Constructor availability arguments are dropped
/// unless `showHidden` is set, in which case they print as `{t}` (display only).
syntax::ExprPtr readback(const TermPtr& t, std::vector<std::string> names, const Signature& sig,
                         bool showHidden = false);

/// Display form of a core term, including availability arguments.
std::string showTerm(const TermPtr& t, const std::vector<std::string>& names, const Signature& sig);

/// True if de Bruijn index `index` occurs free in `t`.
bool mentionsIndex(const TermPtr& t, int index);

} // namespace fordc::kernel
