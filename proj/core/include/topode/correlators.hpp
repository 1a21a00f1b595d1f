#pragma once
// Trace formulas for intersection-number generating functions: one-point and
// N-point correlators of the r-spin theory (A-type, defining representation
// traces) and of the Drinfeld-Sokolov partition function (any supported
// algebra, adjoint B-form), extracted as exact rationals.

#include <map>
#include <vector>

#include "topode/realization.hpp"
#include "topode/resolvent.hpp"

namespace topode {

enum class Theory { RSpin, DS };

// Adjoint matrix of x on the `basis` coordinates of g.
FMat ad_matrix(const Realization& real, const FMat& x);
// B(a_1, ..., a_N) = tr(ad_{a_1} o ... o ad_{a_N}).
FieldElem b_multilinear(const Realization& real, const std::vector<FMat>& elems);

// Genus reconstructed from the dimension constraint
//   sum (m_{i_l} - 1)/h + (h-2)(g-1)/h + sum k_l = 3g - 3 + N,
// with m_i = i for the A-type r-spin specialization.  Returns false when no
// integer g >= 0 exists (the correlator then vanishes identically).
// `tau` holds 0-based exponent indices a_l paired with k_l >= 0.
bool correlator_genus(const Realization& real,
                      const std::vector<std::pair<int, long>>& tau, long& g);

struct OnePointValue {
  long k = 0;
  Rat value;
  long genus = -1;        // valid only when genus_ok
  bool genus_ok = false;  // integer solution of the dimension constraint
};

// <tau_{i,k}> for k = 0..kmax, index a 0-based.  Values with no integer genus
// are verified to vanish.  Throws std::logic_error if an extracted value has a
// nonzero sigma part or the expansion leaves the expected exponent lattice.
std::vector<OnePointValue> one_point(const Realization& real, int a, long kmax,
                                     Theory theory);

struct MultiPointValues {
  std::vector<int> idx;                      // 0-based exponent indices
  std::map<std::vector<long>, Rat> values;   // k-tuple -> correlator
};

// N-point correlators (N = idx.size() >= 2) for all k-tuples with
// sum k_l <= ktotal, in the expansion region |lambda_1| > ... > |lambda_N|.
MultiPointValues multi_point(const Realization& real, const std::vector<int>& idx,
                             long ktotal, Theory theory);

}  // namespace topode
