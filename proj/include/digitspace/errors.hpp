#pragma once

#include <stdexcept>
#include <string>

namespace digitspace {

// Error taxonomy shared by the whole library.  The CLI maps input-side
// failures (parse/domain/arity/form) to exit code 2 and fuel or step-budget
// exhaustion to exit code 3.
struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct arity_error : error { using error::error; };
struct domain_error : error { using error::error; };
struct parse_error : error { using error::error; };
struct form_error : error { using error::error; };
struct unsupported_error : error { using error::error; };

// Raised when lazy forcing exceeds the active step budget or a transducer
// path exceeds its read fuel without producing a write.
struct productivity_error : error { using error::error; };

// A prefix chain violated the immediate-prefix relation.
struct coherence_error : error { using error::error; };

// A Cauchy oracle answered in a way that contradicts digits already
// committed (its ball is disjoint from the committed enclosure).
struct oracle_error : error { using error::error; };

}  // namespace digitspace
