// JSON signal documents and the compiled-in example signals.
#pragma once

#include <string>

#include "signal.hpp"

namespace apfire {

/// Parse the tagged-union signal schema; throws std::invalid_argument with a
/// one-line diagnostic on malformed documents.
SignalPtr signal_from_json(const std::string &text);

/// Render a signal back into its JSON document (17 significant digits).
std::string signal_to_json(const Signal &sig);

/// Built-in signals: ex4_3, ex3_3, ex3_4, ex4_12 / mu_no_mu, ex4_13, ex6_4,
/// ex6_13_f, ex6_13_g. Returns nullptr for unknown names.
SignalPtr signal_preset(const std::string &name);

}  // namespace apfire
