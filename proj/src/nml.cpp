#include "synrep/nml.hpp"

#include <numeric>

#include "synrep/error.hpp"
#include "synrep/numerics.hpp"

namespace synrep {

double nuclear_norm(const Matrix& a) {
  const SvdResult dec = svd(a);
  return std::accumulate(dec.s.begin(), dec.s.end(), 0.0);
}

NmlResult nml_loss(const EmbeddingTable& table) {
  if (table.size() == 0) throw Error(ErrorCode::DegenerateInput, "NML needs at least one label");
  const SvdResult dec = svd(table.weights);
  const double scale = -1.0 / static_cast<double>(table.size());
  NmlResult out;
  out.loss = scale * std::accumulate(dec.s.begin(), dec.s.end(), 0.0);
  out.grad_table = matmul(dec.u, dec.v.transpose());
  out.grad_table *= scale;
  out.singular_values = dec.s;
  return out;
}

}  // namespace synrep
