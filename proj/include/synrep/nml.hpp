#pragma once

#include "synrep/encoder.hpp"
#include "synrep/matrix.hpp"

namespace synrep {

/// Sum of singular values.
double nuclear_norm(const Matrix& a);

struct NmlResult {
  double loss = 0.0;          // -(1/N) * nuclear norm of the table
  Matrix grad_table;          // -(1/N) * U V^T
  Vector singular_values;
};

/// Nuclear-norm maximization loss over the whole label table (every label,
/// not just the ones in the current sentence). At rank deficiency the
/// subgradient is U V^T of the computed thin SVD. Throws DegenerateInput for
/// an empty table.
NmlResult nml_loss(const EmbeddingTable& table);

}  // namespace synrep
