#pragma once

#include <stdexcept>
#include <string>

namespace ancred {

/// Result is not significant at the requested level, so the sceptical
/// machinery (prior, limit, ratio) is undefined.
class not_significant_error : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A 2x2 table has an empty cell (zero events or zero non-events).
class degenerate_table_error : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Root bracket does not enclose a sign change.
class bracket_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Iteration budget exhausted before reaching the requested tolerance.
class convergence_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The extrinsic credibility equation has no root below 1 (one of the
/// test statistics is exactly zero).
class no_solution_error : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

} // namespace ancred
