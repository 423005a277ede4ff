#pragma once

#include <stdexcept>
#include <string>

namespace eclrc {

// Failure identities of the public operations. Tests match on the code,
// not on the message text.
enum class errc {
    not_prime,
    too_large,
    division_by_zero,
    mixed_fields,
    degenerate_all_zero,
    singular_curve,
    hasse_weil_violation,
    point_not_on_curve,
    not_a_square,
    unsupported_characteristic,
    catalog_verification_failed,
    unsupported_shape,
    shape_mismatch,
    zero_inverse,
    zero_function,
    non_rational_support,
    dimension_mismatch,
    not_found,
    not_split,
    not_invariant,
    range_error,
    no_qualifying_subgroup,
    submatrix_singular,
    length_mismatch,
    not_repairable,
    missing_provenance,
    missing_shards,
    index_out_of_range,
    format_error,
};

class error : public std::runtime_error {
   public:
    error(errc c, const std::string& what) : std::runtime_error(what), code_(c) {}
    errc code() const noexcept { return code_; }

   private:
    errc code_;
};

[[noreturn]] inline void fail(errc c, const std::string& what) { throw error(c, what); }

}  // namespace eclrc
