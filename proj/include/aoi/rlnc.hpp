#ifndef AOI_RLNC_HPP
#define AOI_RLNC_HPP

#include <cstdint>
#include <map>
#include <set>
#include <utility>
#include <vector>

#include "aoi/model.hpp"

namespace aoi {

/// One unknown symbol: (update generation slot, symbol index 1..K).
struct VariableId {
    std::int64_t update_gen = 0;
    int index = 0;

    friend auto operator<=>(const VariableId&, const VariableId&) = default;
};

/// A received equation: GF(2^8) coefficients over a handful of variables.
struct CoefficientVector {
    std::vector<std::pair<VariableId, std::uint8_t>> terms;
};

/// Per-user linear system over GF(2^8), kept in reduced row-echelon form so
/// rank questions ("is this equation novel", "is this update decodable") are
/// cheap. Updates that were projected out are remembered as known and their
/// coefficients are dropped from incoming equations.
class KnowledgeBase {
public:
    /// Gaussian elimination of the equation against the current rows.
    /// Returns true iff the residual is nonzero, in which case the rank
    /// grows by exactly one. Unseen variables extend the map.
    bool absorb(const CoefficientVector& coeffs);

    /// True iff every unit vector of the update's K coordinates lies in the
    /// row space. Throws std::invalid_argument if the update is completely
    /// unknown (no column, not marked known).
    bool is_decodable(std::int64_t update_gen, int k) const;

    /// Whether the update appears in the variable map or is marked known.
    /// An update whose only received equations were all-zero never enters
    /// the map.
    bool knows_update(std::int64_t update_gen) const;

    /// Absorbs the unit vectors of the update, making it decodable by fiat.
    /// Used to re-align the oracle after a counted decode that the rank
    /// model rejected.
    void force_known(std::int64_t update_gen, int k);

    /// Drops the update's columns and unit rows and marks it known; callers
    /// must only do this once the update is decodable.
    void project_out(std::int64_t update_gen);

    void clear();

    int rank() const { return static_cast<int>(rows_.size()); }
    std::size_t num_variables() const { return variables_.size(); }

private:
    int column_of(const VariableId& id);            // creates on demand
    int find_column(const VariableId& id) const;    // -1 if absent
    std::vector<std::uint8_t> to_dense(const CoefficientVector& coeffs);
    bool insert_reduced(std::vector<std::uint8_t> vec);

    std::vector<VariableId> variables_;             // column order
    std::map<VariableId, int> column_index_;
    std::vector<std::vector<std::uint8_t>> rows_;   // RREF, sorted by pivot
    std::vector<int> pivots_;                       // pivot column per row
    std::set<std::int64_t> known_updates_;
};

struct MismatchLogEntry {
    std::int64_t slot = 0;
    User user = User::User1;
    std::int64_t update_gen = 0;
    std::int64_t collisions_in_window = 0;
};

/// Counting-model vs rank-model consistency over a verified adaptive run.
struct VerificationReport {
    std::int64_t slots_run = 0;
    std::int64_t cycles_completed = 0;
    std::int64_t decode_events = 0;
    std::int64_t agreements = 0;
    std::int64_t mismatches = 0;
    std::int64_t attributed_mismatches = 0;  // preceded by a coefficient collision
    std::int64_t expected_novel_user1 = 0;
    std::int64_t collisions_user1 = 0;
    std::int64_t expected_novel_user2 = 0;
    std::int64_t collisions_user2 = 0;
    std::vector<MismatchLogEntry> mismatch_log;

    double agreement_rate() const {
        return decode_events == 0
                   ? 1.0
                   : static_cast<double>(agreements) / static_cast<double>(decode_events);
    }
    std::int64_t unattributed_mismatches() const {
        return mismatches - attributed_mismatches;
    }
};

/// Runs the adaptive scheme while materializing every broadcast symbol as a
/// GF(2^8) coefficient vector and feeding deliveries into per-user knowledge
/// bases. Every decode event of the counting model is checked against
/// is_decodable. Stops after target_cycles completed cycles when positive,
/// otherwise at the horizon. Requires cfg.oracle_mode.
VerificationReport run_verified_simulation(const SimConfig& cfg, const ChannelParams& ch,
                                           std::int64_t target_cycles = 0);

}  // namespace aoi

#endif
