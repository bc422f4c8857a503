#pragma once

#include <memory>
#include <string>
#include <tuple>
#include <vector>

#include "stratakit/laurent_matrix.hpp"

namespace stratakit {

enum class GroupKind { GL, SL, Sp };

std::string kind_name(GroupKind k);
GroupKind kind_from_name(const std::string& s);

// A root of the group: an integer functional on the diagonal torus
// coordinates, together with the positions realizing its root vector in the
// defining representation (entry (row, col) carries coefficient sgn).
struct RootFunctional {
  std::vector<int> coeffs;
  std::vector<std::tuple<int, int, int>> entries;  // (row, col, sign)
};

// Static data of one of the supported groups: GL_n, SL_n (coordinates sum to
// zero on the torus), Sp_{2n} (matrix size 2n, torus rank n, symplectic form
// <e_i, e_{n+j}> = delta_ij).
class GroupData {
public:
  static std::shared_ptr<const GroupData> build(GroupKind kind, int size);

  GroupKind kind;
  int size;           // matrix size of the defining representation
  int rank;           // torus coordinate count
  int coxeter_number;
  std::vector<RootFunctional> roots;  // positives first, then their negatives
  int num_positive;
  std::vector<int> simple;  // indices into roots
  int highest;              // index of the highest root

  int root_count() const { return static_cast<int>(roots.size()); }
  bool is_negative_index(int idx) const { return idx >= num_positive; }
  int negative_of(int idx) const {
    return idx < num_positive ? idx + num_positive : idx - num_positive;
  }

  // Constant matrix realizing root vector idx.
  LaurentMatrix root_vector(int idx) const;

  // Dimension and elements of the torus part of the adjoint coordinate basis.
  int torus_basis_dim() const;
  LaurentMatrix torus_basis(int i) const;

  // Coroot of root idx as a torus coordinate vector.
  std::vector<int> coroot(int idx) const;

  // Diagonal embedding of torus coordinate functions into the matrix algebra
  // (for Sp the block pattern diag(t, -t)).
  LaurentMatrix embed_torus(const std::vector<LaurentScalar>& t) const;

  // Lie algebra membership in the defining representation; raises a
  // membership or dimension error when violated.
  void check_lie_membership(const LaurentMatrix& a) const;
  // Group membership for gauge candidates: GL needs a nonzero monomial
  // determinant, SL determinant one, Sp the symplectic form condition.
  void check_group_membership(const LaurentMatrix& g) const;

  // Gram matrix pairing used for diagnostics: trace form.
  LaurentScalar pairing(const LaurentMatrix& a, const LaurentMatrix& b) const;

  // The symplectic form matrix J (Sp only).
  LaurentMatrix symplectic_form() const;

private:
  GroupData() = default;
};

using GroupPtr = std::shared_ptr<const GroupData>;

// Coordinates of a matrix in root-space terms: diagonal torus coordinate
// functions plus one Laurent coefficient per root, ordered like roots.
struct RootDecomposition {
  std::vector<LaurentScalar> torus;       // length rank
  std::vector<LaurentScalar> root_coeff;  // length root_count
};

RootDecomposition root_decompose(const GroupData& g, const LaurentMatrix& a);
LaurentMatrix reassemble(const GroupData& g, const RootDecomposition& d);

}  // namespace stratakit
