#pragma once

#include "ergopt/measures.hpp"
#include "ergopt/potential.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace ergopt {

struct BudgetExceeded : std::runtime_error {
    int partial_depth;
    BudgetExceeded(const std::string& msg, int depth)
        : std::runtime_error(msg), partial_depth(depth) {}
};

/// Identifies a candidate measure in sweeps and reports. An empty word with
/// kind fcf stands for delta_0.
struct CandidateId {
    enum class Kind { delta0, fcf, periodic };
    Kind kind = Kind::delta0;
    Word word;

    bool operator==(const CandidateId&) const = default;
    std::string str() const;
};

/// Birkhoff mean of phi on the periodic orbit of a primitive word. Exact
/// field arithmetic when the potential supports surd evaluation.
struct OrbitValue {
    double value;
    bool exact;
};
OrbitValue orbit_birkhoff_mean(const Word& w, const Potential& phi);

/// Mean of phi over the rational orbit of a word (the FCF integral).
struct SweepEntry {
    CandidateId id;
    double value = 0.0;
    bool exact = false;
    std::optional<Rational> exact_value;
};

struct OrbitSearchResult {
    int m = 0;
    int max_period = 0;
    double best_value = 0.0;
    bool exact = false;
    Word best_word;
    std::optional<double> upper_bound;
};

/// Lower bound for Q_m(G, phi): exhaustive primitive-necklace search over
/// alphabet {1..m}, periods <= P. Ties resolve to the lexicographically
/// smallest word.
OrbitSearchResult restricted_sup_orbits(const Potential& phi, int m, int max_period);

/// Incremental m-sweep sharing work across alphabets (orbit words whose
/// maximal digit is m' <= m are enumerated once).
std::vector<OrbitSearchResult> restricted_sup_sweep(const Potential& phi, int m_max,
                                                    int max_period);

/// Rigorous upper bound for Q_m(G, phi) from the depth-k cylinder graph and
/// its maximum mean cycle. Piecewise-affine potentials use the exact cylinder
/// maximum; otherwise midpoint value plus full Hoelder slack.
double restricted_sup_cycle_bound(const Potential& phi, int m, int depth,
                                  size_t node_budget = 2'000'000);

/// Ranked FCF candidates: all words with digits <= D, length <= L, plus
/// delta_0. Returns the top_k entries in descending order (exact-arithmetic
/// tie handling, then shorter word, then lexicographic).
std::vector<SweepEntry> fcf_sweep(const Potential& phi, int max_digit, int max_len,
                                  size_t top_k = 16);

enum class AttainingSide { invariant, fcf, tie };

struct GlobalSupEstimate {
    double q_star = 0.0;
    AttainingSide side = AttainingSide::tie;
    SweepEntry fcf_top;
    OrbitSearchResult invariant_best;
    std::vector<OrbitSearchResult> m_trajectory;
};

GlobalSupEstimate global_sup_estimate(const Potential& phi, int m_max, int max_period,
                                      int max_digit, int max_len);

struct ClassifyBudgets {
    int m_max = 8;
    int max_period = 5;
    int max_digit = 8;
    int max_len = 5;
    int cycle_depth = 4;
    double margin = 1e-3;     // required dominance gap
    double stabilize_tol = 1e-3;
};

struct Classification {
    enum class Verdict { essentially_compact, rationally_maximized, undetermined };
    Verdict verdict = Verdict::undetermined;
    // Certificates: numeric evidence only, never a proof claim.
    int certificate_m = 0;
    double certificate_gap = 0.0;
    CandidateId certificate_id;
    double certificate_value = 0.0;
    std::vector<CandidateId> attaining; // all candidates within tol of the top
    std::string note;
};

Classification classify(const Potential& phi, const ClassifyBudgets& budgets = {});

struct Example76Report {
    Rational mu1_integral;        // <(delta_0+delta_1)/2, phi>, must be 0
    Rational delta0_integral;     // phi(0) = -1
    std::vector<OrbitSearchResult> m_sweep;
    std::vector<double> m_bounds; // max{-1, -15/(2(m+2))}
    bool q_m_bound_ok = false;
    double q_star = 0.0;
    AttainingSide side = AttainingSide::tie;
    Classification classification;
    bool all_ok = false;
};

/// Reproduces the worked rational-maximization example: builds the
/// piecewise-affine potential, checks the exact integrals, the restricted
/// supremum bounds for each m, the global estimate, and the classification.
Example76Report example_7_6(int m_max = 20, int max_period = 5, double tol = 1e-6);

} // namespace ergopt
