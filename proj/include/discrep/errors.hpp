#pragma once

#include <stdexcept>
#include <string>

namespace discrep {

// Domain errors (CLI exit 1).
struct domain_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct not_coprime : domain_error { using domain_error::domain_error; };
struct invalid_modulus : domain_error { using domain_error::domain_error; };
struct invalid_input : domain_error { using domain_error::domain_error; };
struct wrong_parity : domain_error { using domain_error::domain_error; };
struct wrong_residue : domain_error { using domain_error::domain_error; };
struct dispatch_error : domain_error { using domain_error::domain_error; };
struct non_positive_block : domain_error { using domain_error::domain_error; };
struct not_applicable : domain_error { using domain_error::domain_error; };
struct amplifier_overflow : domain_error { using domain_error::domain_error; };
struct too_large : domain_error { using domain_error::domain_error; };
struct index_out_of_range : domain_error { using domain_error::domain_error; };
struct infeasible_vector : domain_error { using domain_error::domain_error; };
struct not_square : domain_error { using domain_error::domain_error; };
struct not_zero_one : domain_error { using domain_error::domain_error; };
struct inconsistent_system : domain_error { using domain_error::domain_error; };
struct overflow_error : domain_error { using domain_error::domain_error; };

// Search hit the node budget; distinct from an infeasible verdict.
struct resource_exhausted : domain_error { using domain_error::domain_error; };

// I/O and format errors (CLI exit 2).
struct parse_error : std::runtime_error {
    long line;
    parse_error(long line_, const std::string& what_)
        : std::runtime_error("line " + std::to_string(line_) + ": " + what_), line(line_) {}
};

} // namespace discrep
