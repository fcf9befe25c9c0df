#pragma once

// Self-checks over the whole pipeline, reported as machine-readable JSON.

#include <cstdint>
#include <string>
#include <vector>

#include "titsring/steinberg.hpp"

namespace titsring {

/// Structural properties of a built complex and its homology.
struct StructureReport {
    bool boundary_squares_to_zero = false;
    bool euler_identity = false;
    bool pure = false;
    bool nerve_consistent = false;
    bool action_axioms = false;
    std::string detail;

    bool all() const {
        return boundary_squares_to_zero && euler_identity && pure && nerve_consistent && action_axioms;
    }
};

/// sum_d (-1)^d f_d - 1 == sum_{d >= -1} (-1)^d b~_d.
bool euler_identity_holds(const HomologyResult& h);
/// Every simplex lies in a simplex of the top dimension.
bool is_pure(const SimplicialComplex& complex);
/// Identity acts trivially, (gh)V = g(hV) on up to `max_pairs` generator
/// pairs, and every generator maps simplices to simplices.
bool action_axioms_hold(const TitsComplex& complex, std::size_t max_pairs = 400);

StructureReport check_structure(const TitsComplex& complex, const ChainComplex& cc, const HomologyResult& h,
                                const Budget& budget = {});

enum class CheckStatus { Pass, Fail, Skipped };

struct CheckResult {
    std::string id;
    std::string name;
    CheckStatus status = CheckStatus::Skipped;
    std::string detail;
    double seconds = 0;
};

struct VerifyOptions {
    std::string tier = "fast";  ///< "fast" or "full"
    Budget budget;
    unsigned jobs = 1;
    std::uint64_t seed = 1;
    /// Flips one boundary entry before the boundary checks (negative control).
    bool corrupt_boundary = false;
};

struct VerifyReport {
    std::string tier;
    std::vector<CheckResult> checks;

    bool passed() const;
    /// Timings are left out by default so reports are byte-stable.
    std::string to_json(bool include_timings = false) const;
};

VerifyReport run_verification(const VerifyOptions& options);

}  // namespace titsring
