#include "retcc/error.hpp"

namespace retcc {

const char* errc_name(Errc code) {
    switch (code) {
        case Errc::no_foreground: return "no_foreground";
        case Errc::out_of_bounds: return "out_of_bounds";
        case Errc::empty_input: return "empty_input";
        case Errc::too_few_shades: return "too_few_shades";
        case Errc::too_small: return "too_small";
        case Errc::bin_out_of_range: return "bin_out_of_range";
        case Errc::dimension_mismatch: return "dimension_mismatch";
        case Errc::empty_bag: return "empty_bag";
        case Errc::model_too_small: return "model_too_small";
        case Errc::class_too_small: return "class_too_small";
        case Errc::unknown_class: return "unknown_class";
        case Errc::missing_file: return "missing_file";
        case Errc::malformed_row: return "malformed_row";
        case Errc::empty_manifest: return "empty_manifest";
        case Errc::bad_format: return "bad_format";
        case Errc::io_error: return "io_error";
    }
    return "unknown";
}

Error::Error(Errc code, const std::string& message)
    : std::runtime_error(std::string(errc_name(code)) + ": " + message), code_(code) {}

} // namespace retcc
