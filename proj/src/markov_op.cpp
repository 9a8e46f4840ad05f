#include "dpclust/markov_op.hpp"

#include <cmath>

#include "dpclust/errors.hpp"
#include "dpclust/kernels.hpp"

namespace dpclust {

MarkovOperatorMatrix estimate_operator(const Path& path,
                                       const OrthonormalBasis& basis) {
  if (path.values.size() < 2)
    throw InputError("estimate_operator: path needs at least 2 observations");
  for (double v : path.values)
    if (!std::isfinite(v))
      throw InputError("estimate_operator: path contains non-finite values");

  const int j_count = basis.size();
  const std::int64_t n = static_cast<std::int64_t>(path.values.size()) - 1;

  // Accumulate S = sum_i phi(X_{i-1}) phi(X_i)^T; the symmetrized estimate
  // is (S + S^T) / (2N).
  std::vector<double> s(static_cast<std::size_t>(j_count) * j_count, 0.0);
  std::vector<double> prev(j_count), cur(j_count);
  basis.eval(path.values[0], prev.data());
  for (std::int64_t i = 1; i <= n; ++i) {
    basis.eval(path.values[i], cur.data());
    kernels::outer_accum(s.data(), prev.data(), cur.data(), j_count);
    prev.swap(cur);
  }

  MarkovOperatorMatrix op;
  op.n_basis = j_count;
  op.n_transitions = n;
  op.basis_id = basis.fingerprint();
  op.entries.resize(s.size());
  const double scale = 1.0 / (2.0 * static_cast<double>(n));
  for (int j = 0; j < j_count; ++j) {
    for (int k = j; k < j_count; ++k) {
      // Mirrored assignment keeps the matrix symmetric bitwise.
      const double v = (s[j * j_count + k] + s[k * j_count + j]) * scale;
      op.entries[j * j_count + k] = v;
      op.entries[k * j_count + j] = v;
    }
  }
  return op;
}

}  // namespace dpclust
