#pragma once

#include <stdexcept>
#include <string>

namespace hvk {

struct invalid_argument : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct invalid_dimension : invalid_argument {
    using invalid_argument::invalid_argument;
};

struct domain_error : std::domain_error {
    using std::domain_error::domain_error;
};

struct internal_consistency_error : std::logic_error {
    using std::logic_error::logic_error;
};

// carries the best error estimate reached before giving up
struct quadrature_failure : std::runtime_error {
    double value_re, value_im, error_estimate;
    quadrature_failure(const std::string& what, double re, double im, double err)
        : std::runtime_error(what), value_re(re), value_im(im), error_estimate(err) {}
};

struct integration_failure : std::runtime_error {
    double achieved_defect;
    integration_failure(const std::string& what, double defect)
        : std::runtime_error(what), achieved_defect(defect) {}
};

struct truncation_insufficient : std::runtime_error {
    double tail_bound;
    truncation_insufficient(const std::string& what, double bound)
        : std::runtime_error(what), tail_bound(bound) {}
};

struct degenerate_spectrum : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct generic_position_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace hvk
