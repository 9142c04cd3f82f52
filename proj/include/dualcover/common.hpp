#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>

namespace dualcover {

inline constexpr const char* kVersion = "0.1.0";

using Rat = mpq_class;
using Int = mpz_class;

/* Error taxonomy: precondition_error for refused hypotheses (CLI exit 2),
 * certification_error when numerics cannot be certified after escalation,
 * integrity_error for internal cross-check failures that indicate a bug
 * upstream rather than a data case. */
struct error : std::runtime_error {
    explicit error(const std::string& m) : std::runtime_error(m) {}
};
struct parse_error : error {
    std::size_t position;
    parse_error(const std::string& m, std::size_t pos)
        : error(m + " (at position " + std::to_string(pos) + ")"), position(pos) {}
};
struct precondition_error : error {
    using error::error;
};
struct certification_error : error {
    using error::error;
};
struct integrity_error : error {
    using error::error;
};

/* All randomness in a run flows through one of these, seeded from the CLI
 * (or test) seed, so outputs are reproducible bit for bit. */
using Rng = std::mt19937_64;

inline double to_double(const Rat& q) { return q.get_d(); }

inline Rat rat_from_string(const std::string& s) {
    Rat q;
    if (q.set_str(s, 10) != 0) throw error("bad rational literal: " + s);
    q.canonicalize();
    return q;
}

}  // namespace dualcover
