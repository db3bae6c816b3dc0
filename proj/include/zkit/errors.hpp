#pragma once

#include <stdexcept>
#include <string>

namespace zkit {

// Error taxonomy. The CLI maps these onto process exit codes:
// math errors -> 1, input errors -> 2, consistency/verification -> 3.
enum class errc {
    dimension_mismatch,
    not_pseudo_effective,
    not_big,
    not_finite,
    curve_in_augmented_locus,
    model_inconsistent,
    non_primitive_ray,
    not_complete,
    not_smooth,
    cap_exceeded,
    input_error,
};

inline const char* errc_name(errc c) {
    switch (c) {
        case errc::dimension_mismatch:       return "DimensionMismatch";
        case errc::not_pseudo_effective:     return "NotPseudoEffective";
        case errc::not_big:                  return "NotBig";
        case errc::not_finite:               return "NotFinite";
        case errc::curve_in_augmented_locus: return "CurveInAugmentedLocus";
        case errc::model_inconsistent:       return "ModelInconsistent";
        case errc::non_primitive_ray:        return "NonPrimitiveRay";
        case errc::not_complete:             return "NotComplete";
        case errc::not_smooth:               return "NotSmooth";
        case errc::cap_exceeded:             return "CapExceededInconclusive";
        case errc::input_error:              return "InputError";
    }
    return "UnknownError";
}

class error : public std::runtime_error {
public:
    error(errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

    errc code() const noexcept { return code_; }

    // Exit-code class used by the CLI.
    int exit_class() const noexcept {
        switch (code_) {
            case errc::not_pseudo_effective:
            case errc::not_big:
            case errc::not_finite:
            case errc::curve_in_augmented_locus:
                return 1;
            case errc::dimension_mismatch:
            case errc::non_primitive_ray:
            case errc::not_complete:
            case errc::not_smooth:
            case errc::input_error:
                return 2;
            case errc::model_inconsistent:
            case errc::cap_exceeded:
                return 3;
        }
        return 2;
    }

private:
    errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) { throw error(code, what); }

} // namespace zkit
