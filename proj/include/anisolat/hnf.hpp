// hnf.hpp -- row Hermite normal form over Z and saturated integer kernels.
#pragma once

#include "anisolat/linalg.hpp"
#include "anisolat/rational.hpp"

namespace anisolat {

using ZMat = Mat<Int>;

// In-place row HNF: pivots positive, strictly to the right as rows descend,
// entries above each pivot reduced into [0, pivot).  Zero rows sink to the
// bottom.  If u is non-null it accumulates the unimodular row transform
// (u starts as identity inside this call), so u * input == output.
void hnf_rows(ZMat& a, ZMat* u = nullptr);

// Canonical basis (HNF rows) of {k in Z^n : C k = 0}.  The basis spans the
// full rational kernel intersected with Z^n, so the lattice is saturated.
std::vector<Vec<Int>> integer_kernel_of(const ZMat& c);

}  // namespace anisolat
