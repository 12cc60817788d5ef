#pragma once

#include <stdexcept>
#include <string>

namespace eisenlab {

// Argument outside an operation's stated domain (Re(s) too small, x <= 0, ...).
// The CLI maps this family to exit code 3.
class precondition_error : public std::domain_error {
public:
    explicit precondition_error(const std::string& what) : std::domain_error(what) {}
};

// Evaluation requested at (or too close to) a pole.
class pole_error : public precondition_error {
public:
    explicit pole_error(const std::string& what) : precondition_error(what) {}
};

// z collides with the anchor orbit; series value is unbounded there.
class coincidence_error : public precondition_error {
public:
    explicit coincidence_error(const std::string& what) : precondition_error(what) {}
};

// Work estimate exceeds the configured budget.  CLI exit code 4.
class resource_limit_error : public std::runtime_error {
public:
    explicit resource_limit_error(const std::string& what) : std::runtime_error(what) {}
};

// Two internal evaluation routes disagree beyond tolerance.  CLI exit code 5.
class consistency_error : public std::runtime_error {
public:
    explicit consistency_error(const std::string& what) : std::runtime_error(what) {}
};

// A series or quadrature failed to reach its target within its term budget.
class nonconvergence_error : public std::runtime_error {
public:
    explicit nonconvergence_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace eisenlab
