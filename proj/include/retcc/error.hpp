#pragma once

#include <stdexcept>
#include <string>

namespace retcc {

// Failure categories surfaced by the pipeline contracts.
enum class Errc {
    no_foreground,
    out_of_bounds,
    empty_input,
    too_few_shades,
    too_small,
    bin_out_of_range,
    dimension_mismatch,
    empty_bag,
    model_too_small,
    class_too_small,
    unknown_class,
    missing_file,
    malformed_row,
    empty_manifest,
    bad_format,
    io_error,
};

const char* errc_name(Errc code);

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& message);
    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

} // namespace retcc
