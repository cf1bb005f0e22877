#pragma once

#include <stdexcept>
#include <string>

namespace celeste {

// Every failure the engine can report, by name. The names are part of the
// CLI contract: they appear verbatim on the `error:` line of a report.
enum class errc {
    zero_vector,
    unknown_cone,
    ray_exists,
    outside_support,
    not_complete,
    model_mismatch,
    not_smooth,
    not_snc,
    non_proper_degree,
    not_resolved,
    non_convergent,
    empty_fiber,
    not_disjoint,
    non_toric_atom,
    parse_error,
    validation_error,
};

const char* errc_name(errc code);

class error : public std::runtime_error {
public:
    error(errc code, const std::string& message)
        : std::runtime_error(std::string(errc_name(code)) + ": " + message), code_(code) {}

    errc code() const { return code_; }
    const char* name() const { return errc_name(code_); }

private:
    errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& message) {
    throw error(code, message);
}

} // namespace celeste
