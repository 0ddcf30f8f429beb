#pragma once

#include <stdexcept>
#include <string>

namespace groundctl {

// Failure taxonomy shared by the library and the CLI. Each class maps to a
// distinct process exit code (see exit_code_for).

/// Bad configuration, bad arguments, violated preconditions.
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

/// A spectral hypothesis (gap or rank condition) fails for the requested problem.
class HypothesisViolation : public std::runtime_error {
public:
    explicit HypothesisViolation(const std::string& what, int mode_index = -1)
        : std::runtime_error(what), mode(mode_index) {}
    int mode;  // offending mode index, -1 if not mode specific
};

/// Moment problem infeasible: a mode with zero coupling carries nonzero data.
class RankViolation : public HypothesisViolation {
public:
    RankViolation(const std::string& what, int mode_index)
        : HypothesisViolation(what, mode_index) {}
};

/// Gram conditioning exhausted every precision tier; carries what was achieved.
class ConditioningError : public std::runtime_error {
public:
    ConditioningError(const std::string& what, double achieved)
        : std::runtime_error(what), achieved_residual(achieved) {}
    double achieved_residual;
};

/// Time integration or quadrature failed to converge under the refinement cap.
class IntegrationError : public std::runtime_error {
public:
    IntegrationError(const std::string& what, double achieved)
        : std::runtime_error(what), achieved_tolerance(achieved) {}
    double achieved_tolerance;
};

/// SDE step size too large for the reflecting fold.
class StepSizeError : public std::runtime_error {
public:
    explicit StepSizeError(const std::string& what) : std::runtime_error(what) {}
};

enum ExitCode : int {
    exit_ok = 0,
    exit_validation = 2,
    exit_hypothesis = 3,
    exit_solver = 4,
    exit_integration = 5,
};

}  // namespace groundctl
