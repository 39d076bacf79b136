#pragma once

#include "projpart/dependence.hpp"
#include "projpart/partition.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace projpart {

/// A uniformly chosen flat of dimension `dim` inside `within`, grown from
/// random points. `within` must have dimension >= dim.
Flat random_flat(const Flat& within, int dim, std::mt19937_64& rng);

/// A random almost-flat of dimension `dim`: a flat, or a flat minus a
/// random proper subflat, each with probability 1/2.
Factor random_almost_flat(const SpacePtr& space, int dim, std::mt19937_64& rng);

struct SylvesterSweep {
    int q = 0;
    int n = 0;
    std::uint64_t families = 0;  // general-position sets of 1..n+1 lines
    std::size_t max_intersections = 0;
    std::uint64_t violations = 0;    // more than two intersection points
    std::uint64_t chain_breaks = 0;  // chain prefix of length i not of dimension min(i, n)
    bool ok() const { return violations == 0 && chain_breaks == 0; }
};

/// Every set of at most n+1 distinct lines in general position.
SylvesterSweep sylvester_sweep(int q, int n);

struct LinesSweep {
    int q = 0;
    int n = 0;
    std::uint64_t families = 0;  // multisets of n+1 almost-lines
    std::uint64_t min_count = 0;
    std::uint64_t bound = 0;
    std::uint64_t violations = 0;
    std::vector<std::string> argmin;  // the first family reaching the minimum
    std::optional<std::uint64_t> tight_pair;  // n = 1: two full lines minus distinct points
    bool ok() const { return violations == 0 && min_count >= bound; }
};

/// Exhaustive over unordered families of n+1 almost-lines; the dependent
/// count of a product does not depend on the factor order. Throws
/// TooLargeForExact above max_line_families.
LinesSweep lines_sweep(int q, int n);

/// Largest number of unordered families lines_sweep will enumerate.
inline constexpr std::uint64_t max_line_families = 20'000'000;

struct LinesStratum {
    std::uint64_t samples = 0;
    std::uint64_t min_count = 0;
    std::uint64_t violations = 0;
};

struct LinesSample {
    int q = 0;
    int n = 0;
    std::uint64_t samples = 0;
    std::uint64_t seed = 0;
    std::uint64_t bound = 0;
    std::uint64_t min_count = 0;
    std::uint64_t violations = 0;
    std::map<std::string, LinesStratum> strata;
    bool ok() const { return violations == 0 && min_count >= bound; }
};

/// Seeded almost-line families in four strata: independent random lines,
/// lines through a common point, copies of one line, lines of one plane.
/// The last three favour few dependent tuples being hard to avoid.
LinesSample lines_sample(int q, int n, std::uint64_t samples, std::uint64_t seed);

struct ClaimsReport {
    int q = 0;
    int n = 0;
    std::uint64_t invariance_checked = 0;
    std::uint64_t invariance_violations = 0;
    std::uint64_t intersection_checked = 0;
    std::uint64_t intersection_violations = 0;
    std::uint64_t class_checked = 0;
    std::uint64_t class_violations = 0;
    std::vector<std::string> counterexamples;  // first few
    bool ok() const { return invariance_violations == 0 && intersection_violations == 0 && class_violations == 0; }
};

/// Exhaustive checks of quotient invariance of dependence (tuples of length
/// 2..n+1), uniform intersection sizes of a subflat with the classes of
/// F/S (all S, F, F' in F), and dependence as a class property (all
/// tuples, splits and class substitutions).
ClaimsReport quotient_claims(int q, int n);

struct SurgerySweep {
    int q = 0;
    int n = 0;  // number of factors; the ambient space has dimension n - 1
    std::uint64_t samples = 0;
    std::uint64_t seed = 0;
    std::uint64_t increased = 0;       // f(Q') > f(Q)
    std::uint64_t not_class_union = 0;  // a replaced factor is not a union of classes
    std::uint64_t dependent_prefix = 0;
    std::map<std::string, std::uint64_t> choices;
    double max_drop = 0;  // largest f(Q) - f(Q')
    bool ok() const { return increased == 0 && not_class_union == 0; }
};

/// Random parts p_1 x ... x p_k x R_{k+1} x ... x R_n of F_qP^{n-1} with
/// R_i almost-flats of dimension k+1, k uniform in [0, n-2].
SurgerySweep surgery_sweep(int q, int n, std::uint64_t samples, std::uint64_t seed);

/// One random part of the kind surgery_sweep draws.
ProductPart random_minimal_part(const SpacePtr& space, int factors, std::mt19937_64& rng);

struct AlmostFlatSweep {
    int q = 0;
    int n = 0;
    std::uint64_t samples = 0;
    std::uint64_t seed = 0;
    std::uint64_t failures = 0;  // any AlmostFlatCheck flag false
    std::uint64_t direct_failures = 0;
    std::uint64_t pipeline_failures = 0;
    std::uint64_t min_direct_count = 1;
    std::uint64_t min_direct_total = 1;
    std::uint64_t min_pipeline_count = 1;
    std::uint64_t min_pipeline_total = 1;
    std::uint64_t pipeline_tighter = 0;  // pipeline minimum strictly below the direct fraction
    std::uint64_t bound_num = 0;
    std::uint64_t bound_den = 1;
    bool ok() const { return failures == 0; }
};

/// Random products of n almost-flats of F_qP^{n-1} with non-dominated
/// dimension pattern, each run through almostflat_fraction_check.
AlmostFlatSweep almostflat_sweep(int q, int n, std::uint64_t samples, std::uint64_t seed);

}  // namespace projpart
