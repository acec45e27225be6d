#pragma once

#include "homflow/rational.hpp"

#include <vector>

namespace homflow {

using IntVec = std::vector<Int>;
using IntMat = std::vector<IntVec>;  // row-major

/// Row-style Hermite normal form: integer row operations only, pivots
/// positive, entries above each pivot reduced into [0, pivot). Zero rows are
/// dropped. The result is the canonical basis of the row lattice.
IntMat hermite_normal_form(IntMat m);

/// Canonical basis (HNF rows) of the integer kernel {k : m k = 0}.
IntMat integer_kernel(const IntMat& m);

/// True when m (rows x cols, rows <= cols) maps Z^cols onto Z^rows, i.e. the
/// cokernel is trivial.
bool is_surjective_over_Z(const IntMat& m);

IntVec mat_apply(const IntMat& m, const IntVec& v);
IntMat mat_transpose(const IntMat& m);

}  // namespace homflow
