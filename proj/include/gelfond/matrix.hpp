#pragma once

// Eigen dense matrices over exact scalars. Only storage and indexing are
// used; all arithmetic goes through the exact elimination routines below.
#include "gelfond/poly.hpp"
#include "gelfond/rational.hpp"

#include <Eigen/Core>

#include <string>

namespace Eigen {

template <class T>
struct ExactNumTraits : GenericNumTraits<T> {
    using Real = T;
    using NonInteger = T;
    using Nested = T;
    using Literal = T;
    enum { IsComplex = 0, IsInteger = 0, IsSigned = 1, RequireInitialization = 1, ReadCost = 6, AddCost = 40, MulCost = 100 };
};

template <>
struct NumTraits<mpq_class> : ExactNumTraits<mpq_class> {};
template <>
struct NumTraits<mpz_class> : ExactNumTraits<mpz_class> {};
template <>
struct NumTraits<gelfond::IntPoly> : ExactNumTraits<gelfond::IntPoly> {};

}  // namespace Eigen

namespace gelfond {

using RatMatrix = Eigen::Matrix<Rational, Eigen::Dynamic, Eigen::Dynamic>;
using IntMatrix = Eigen::Matrix<Integer, Eigen::Dynamic, Eigen::Dynamic>;
using PolyMatrix = Eigen::Matrix<IntPoly, Eigen::Dynamic, Eigen::Dynamic>;

// Gaussian elimination over Q.
Rational det_q(RatMatrix m);
// Fraction-free (Bareiss) elimination.
Integer det_z(IntMatrix m);
IntPoly det_bareiss(PolyMatrix m);

// Row-major dump, one row per line, entries as exact rationals.
std::string dump_matrix(const RatMatrix& m);
RatMatrix parse_matrix(const std::string& text);

}  // namespace gelfond
