#pragma once

// Scalar used for the stored holonomy, word products and cocycle values.
// Generators of the chain reach norms of a few thousand for b = 5, and
// evaluating cocycles on them loses about eps * |g|^3 to cancellation, so
// double and long double leave too little headroom for 1e-9 identities.

#include <Eigen/Core>
#include <boost/multiprecision/float128.hpp>

namespace margulis
{

using Extended = boost::multiprecision::float128;

}  // namespace margulis

namespace Eigen
{

template <>
struct NumTraits<margulis::Extended> : GenericNumTraits<margulis::Extended>
{
    using Real = margulis::Extended;
    using NonInteger = margulis::Extended;
    using Literal = margulis::Extended;
    using Nested = margulis::Extended;

    enum {
        IsComplex = 0,
        IsInteger = 0,
        IsSigned = 1,
        RequireInitialization = 1,
        ReadCost = 1,
        AddCost = 8,
        MulCost = 8
    };

    static Real dummy_precision() { return Real(1e-30); }
    static int digits10() { return std::numeric_limits<Real>::digits10; }
};

}  // namespace Eigen
