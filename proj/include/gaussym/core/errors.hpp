#ifndef GAUSSYM_CORE_ERRORS_HPP
#define GAUSSYM_CORE_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace gaussym {

/// Input outside an operation's domain (bad N, x outside the potential's domain, ...).
class invalid_input : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Quadrature did not reach its tolerance. Carries the worst offending entry.
class quadrature_failure : public std::runtime_error {
public:
    quadrature_failure(const std::string& what, std::size_t row, std::size_t col, double achieved)
        : std::runtime_error(what), row_(row), col_(col), achieved_(achieved) {}

    std::size_t row() const noexcept { return row_; }
    std::size_t col() const noexcept { return col_; }
    double achieved_error() const noexcept { return achieved_; }

private:
    std::size_t row_;
    std::size_t col_;
    double achieved_;
};

/// The working precision is too low for a pivot; retry with `required_bits()`.
class precision_escalation : public std::runtime_error {
public:
    precision_escalation(const std::string& what, unsigned required_bits)
        : std::runtime_error(what), required_bits_(required_bits) {}

    unsigned required_bits() const noexcept { return required_bits_; }

private:
    unsigned required_bits_;
};

/// Nonlinear solver failure with its residual history.
class solver_failure : public std::runtime_error {
public:
    solver_failure(const std::string& what, std::vector<double> history, bool negative_density = false)
        : std::runtime_error(what), history_(std::move(history)), negative_density_(negative_density) {}

    const std::vector<double>& residual_history() const noexcept { return history_; }
    bool negative_density() const noexcept { return negative_density_; }

private:
    std::vector<double> history_;
    bool negative_density_;
};

/// Metropolis step-size tuning left the acceptance rate outside the admissible band.
class tuning_failure : public std::runtime_error {
public:
    tuning_failure(const std::string& what, double acceptance)
        : std::runtime_error(what), acceptance_(acceptance) {}

    double acceptance_rate() const noexcept { return acceptance_; }

private:
    double acceptance_;
};

} // namespace gaussym

#endif
