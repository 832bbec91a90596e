#pragma once

#include <stdexcept>
#include <string>

namespace derandom {

enum class Errc {
    bad_params,
    length_mismatch,
    image_out_of_range,
    codomain_mismatch,
    limit_too_small,
    insufficient_primes,
    pool_exhausted,
    precondition_failed,
    nonuniformity_exceeded,
    uniformity_required,
    size_mismatch,
    guess_space_too_large,
    oracle_failed,
    parse_error,
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

    Errc code() const { return code_; }

private:
    Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

} // namespace derandom
