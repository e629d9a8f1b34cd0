#ifndef LAGCERT_ERRORS_HPP
#define LAGCERT_ERRORS_HPP

#include <stdexcept>

namespace lagcert {

// A configured limit (sieve size, materialization bound, candidate cap, ...)
// would be exceeded. Raised instead of ever returning a truncated answer.
struct resource_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A proved invariant failed at runtime; treated as a bug, not a math result.
struct internal_error : std::logic_error {
    using std::logic_error::logic_error;
};

}  // namespace lagcert

#endif
