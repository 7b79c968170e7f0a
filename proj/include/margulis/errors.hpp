#pragma once

#include <stdexcept>
#include <string>

namespace margulis
{

/** @brief Base class for all errors raised by the library */
class Error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/** @brief An isometry (or 2x2 lift) does not have three distinct real eigenvalues */
class NotHyperbolic : public Error
{
public:
    explicit NotHyperbolic(const std::string& msg) : Error("not hyperbolic: " + msg) {}
};

/** @brief Two hyperbolic axes were expected to cross in H^2 but do not */
class AxesDisjoint : public Error
{
public:
    explicit AxesDisjoint(const std::string& msg) : Error("axes disjoint: " + msg) {}
};

/** @brief The holonomy builder could not certify its output */
class ConstructionFailed : public Error
{
public:
    explicit ConstructionFailed(const std::string& msg)
        : Error("holonomy construction failed: " + msg)
    {
    }
};

/** @brief The pants linear system is (numerically) singular */
class SingularSystem : public Error
{
public:
    explicit SingularSystem(const std::string& msg) : Error("singular pants system: " + msg) {}
};

/** @brief A finite-difference probe left the hyperbolic locus */
class StepLeavesHyperbolicLocus : public Error
{
public:
    explicit StepLeavesHyperbolicLocus(const std::string& msg)
        : Error("finite-difference step leaves hyperbolic locus: " + msg)
    {
    }
};

/** @brief Index of a generator, dividing curve or pants outside its range */
class IndexOutOfRange : public std::out_of_range
{
public:
    explicit IndexOutOfRange(const std::string& msg) : std::out_of_range(msg) {}
};

}  // namespace margulis
