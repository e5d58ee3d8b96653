#pragma once

#include <stdexcept>
#include <string>

namespace plcnoise {

// Base class for all library errors.  exit_code() distinguishes input
// validation problems (2) from runtime numerical failures (1) so command
// line tools can map them directly to process exit codes.
class error : public std::runtime_error {
public:
    explicit error(const std::string& msg, int code = 1)
        : std::runtime_error(msg), code_(code) {}
    int exit_code() const noexcept { return code_; }

private:
    int code_;
};

// A model or operation parameter is outside its admissible domain.
class param_error : public error {
public:
    explicit param_error(const std::string& msg) : error(msg, 2) {}
};

// A request for zero samples, zero bins, or an otherwise empty workload.
class empty_request_error : public error {
public:
    explicit empty_request_error(const std::string& msg) : error(msg, 2) {}
};

// Skewed stable generation/inversion is out of scope; only beta == 0 works.
class unsupported_skew_error : public error {
public:
    explicit unsupported_skew_error(const std::string& msg) : error(msg, 2) {}
};

// A sample set is too small or too degenerate for the requested estimator.
class degenerate_sample_error : public error {
public:
    explicit degenerate_sample_error(const std::string& msg) : error(msg, 1) {}
};

// A density evaluation grid is too coarse, too narrow, or would need more
// quadrature nodes than the implementation allows.
class resolution_error : public error {
public:
    explicit resolution_error(const std::string& msg) : error(msg, 1) {}
};

// Two histograms do not share the same bin edges.
class grid_mismatch_error : public error {
public:
    explicit grid_mismatch_error(const std::string& msg) : error(msg, 2) {}
};

// No sample landed inside the requested histogram range.
class empty_histogram_error : public error {
public:
    explicit empty_histogram_error(const std::string& msg) : error(msg, 1) {}
};

// Segmented extreme-value estimation cannot form enough segments.
class segmentation_error : public error {
public:
    explicit segmentation_error(const std::string& msg) : error(msg, 2) {}
};

// Least-squares system is singular or numerically rank deficient.
class singular_fit_error : public error {
public:
    explicit singular_fit_error(const std::string& msg) : error(msg, 1) {}
};

// Malformed trace/CSV/JSON input files.
class format_error : public error {
public:
    explicit format_error(const std::string& msg) : error(msg, 2) {}
};

} // namespace plcnoise
