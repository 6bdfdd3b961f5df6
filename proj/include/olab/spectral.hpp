#pragma once

namespace olab {

/// 2·arccosh(|t|/2). Throws DomainError for |t| ≤ 2.
double trace_to_length(long t);

/// (5a²/(9kπ²) + 2a/(3π)) / (2k) with a = arccosh(17). Throws DomainError
/// for k < 1.
double buser_bound(long k);

} // namespace olab
