#pragma once

#include <cstdlib>

namespace symdisc {

// Numerical tolerances used across the library.  All comparisons are absolute
// unless stated otherwise at the call site.
namespace tol {
inline constexpr double unitary = 1e-9;        // ||U U^dag - I||
inline constexpr double homomorphism = 1e-9;   // ||Theta(g)Theta(h) - Theta(gh)||
inline constexpr double equivariance = 1e-8;   // section / reassembly residuals
inline constexpr double character = 1e-6;      // character comparisons and rounding
inline constexpr double eigen_gap = 1e-8;      // relative eigenvalue cluster gap
inline constexpr double probability = 1e-9;    // probability comparisons
inline constexpr double state_norm = 1e-12;    // ||psi|| = 1
inline constexpr double povm = 1e-9;           // POVM completeness
inline constexpr double optimality = 1e-8;     // averaged-projector identity
}  // namespace tol

// Resource limits.  group_order_cap bounds the order of any group a
// group-sized representation (regular, conjugation, oracle) is built over;
// plain group construction, including direct products feeding the
// multiplication oracle, is allowed up to cap^2.  The cap also doubles as the
// threshold above which exhaustive |G|^3 table validation switches to
// deterministic sampling.  SYMDISC_GROUP_CAP in the environment overrides the
// default.
struct Limits {
    int group_order_cap = 200;
    int symmetric_n_cap = 6;
    int oracle_bits_cap = 5;
    int decompose_retries = 8;
    // The multiplication problem ranges over |G|^2 hidden pairs and stores a
    // |G|^2 x |G|^2 confusion matrix, so its base group gets a tighter cap.
    int mult_base_cap = 60;

    long construction_cap() const {
        return static_cast<long>(group_order_cap) * group_order_cap;
    }
    int rep_dim_cap() const { return 4 * group_order_cap; }
};

inline Limits& limits() {
    static Limits current = [] {
        Limits init;
        if (const char* env = std::getenv("SYMDISC_GROUP_CAP")) {
            int v = std::atoi(env);
            if (v > 0) init.group_order_cap = v;
        }
        return init;
    }();
    return current;
}

// Exhaustive-check thresholds: full |G|^3 associativity scan up to here,
// full |G|^2 homomorphism scan for dense matrix representations up to here.
inline constexpr int group_exhaustive_order = 200;
inline constexpr int rep_exhaustive_order = 60;

}  // namespace symdisc
