#include "aoi/rlnc.hpp"

#include <algorithm>
#include <cassert>
#include <random>
#include <stdexcept>

#include "aoi/adaptive.hpp"
#include "aoi/gf256.hpp"

namespace aoi {

using gf::gf_inv;
using gf::gf_mul;

int KnowledgeBase::find_column(const VariableId& id) const {
    auto it = column_index_.find(id);
    return it == column_index_.end() ? -1 : it->second;
}

int KnowledgeBase::column_of(const VariableId& id) {
    auto it = column_index_.find(id);
    if (it != column_index_.end()) {
        return it->second;
    }
    int col = static_cast<int>(variables_.size());
    variables_.push_back(id);
    column_index_.emplace(id, col);
    for (auto& row : rows_) {
        row.push_back(0);
    }
    return col;
}

std::vector<std::uint8_t> KnowledgeBase::to_dense(const CoefficientVector& coeffs) {
    // Resolve columns first; creating one mid-fill would invalidate sizes.
    for (const auto& [id, value] : coeffs.terms) {
        if (value != 0 && known_updates_.count(id.update_gen) == 0) {
            column_of(id);
        }
    }
    std::vector<std::uint8_t> vec(variables_.size(), 0);
    for (const auto& [id, value] : coeffs.terms) {
        if (value != 0 && known_updates_.count(id.update_gen) == 0) {
            vec[static_cast<std::size_t>(column_of(id))] ^= value;
        }
    }
    return vec;
}

bool KnowledgeBase::insert_reduced(std::vector<std::uint8_t> vec) {
    const std::size_t cols = variables_.size();

    // Eliminate against existing pivot rows.
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        std::uint8_t f = vec[static_cast<std::size_t>(pivots_[i])];
        if (f != 0) {
            const auto& row = rows_[i];
            for (std::size_t j = 0; j < cols; ++j) {
                vec[j] ^= gf_mul(f, row[j]);
            }
        }
    }

    std::size_t pivot = cols;
    for (std::size_t j = 0; j < cols; ++j) {
        if (vec[j] != 0) {
            pivot = j;
            break;
        }
    }
    if (pivot == cols) {
        return false;  // linearly dependent
    }

    std::uint8_t inv = gf_inv(vec[pivot]);
    for (std::size_t j = pivot; j < cols; ++j) {
        vec[j] = gf_mul(inv, vec[j]);
    }

    // Back-substitution keeps the matrix fully reduced.
    for (auto& row : rows_) {
        std::uint8_t f = row[pivot];
        if (f != 0) {
            for (std::size_t j = pivot; j < cols; ++j) {
                row[j] ^= gf_mul(f, vec[j]);
            }
        }
    }

    auto pos = std::upper_bound(pivots_.begin(), pivots_.end(), static_cast<int>(pivot));
    std::size_t at = static_cast<std::size_t>(pos - pivots_.begin());
    pivots_.insert(pos, static_cast<int>(pivot));
    rows_.insert(rows_.begin() + static_cast<std::ptrdiff_t>(at), std::move(vec));
    return true;
}

bool KnowledgeBase::absorb(const CoefficientVector& coeffs) {
    return insert_reduced(to_dense(coeffs));
}

bool KnowledgeBase::is_decodable(std::int64_t update_gen, int k) const {
    if (known_updates_.count(update_gen) != 0) {
        return true;
    }
    bool any_column = false;
    int determined = 0;
    for (int idx = 1; idx <= k; ++idx) {
        int col = find_column(VariableId{update_gen, idx});
        if (col < 0) {
            continue;
        }
        any_column = true;
        // In a fully reduced matrix, e_col is in the row space iff the pivot
        // row at col is exactly the unit vector.
        auto it = std::lower_bound(pivots_.begin(), pivots_.end(), col);
        if (it == pivots_.end() || *it != col) {
            continue;
        }
        const auto& row = rows_[static_cast<std::size_t>(it - pivots_.begin())];
        bool is_unit = true;
        for (std::size_t j = 0; j < row.size(); ++j) {
            if (row[j] != 0 && j != static_cast<std::size_t>(col)) {
                is_unit = false;
                break;
            }
        }
        if (is_unit) {
            ++determined;
        }
    }
    if (!any_column) {
        throw std::invalid_argument("is_decodable: unknown update");
    }
    return determined == k;
}

bool KnowledgeBase::knows_update(std::int64_t update_gen) const {
    if (known_updates_.count(update_gen) != 0) {
        return true;
    }
    for (const VariableId& id : variables_) {
        if (id.update_gen == update_gen) {
            return true;
        }
    }
    return false;
}

void KnowledgeBase::force_known(std::int64_t update_gen, int k) {
    for (int idx = 1; idx <= k; ++idx) {
        CoefficientVector unit;
        unit.terms.emplace_back(VariableId{update_gen, idx}, std::uint8_t{1});
        absorb(unit);
    }
}

void KnowledgeBase::project_out(std::int64_t update_gen) {
    // The update's pivot rows are unit vectors (decodable), so no surviving
    // row touches its columns; dropping rows and columns keeps the RREF.
    std::vector<std::size_t> drop_cols;
    for (std::size_t j = 0; j < variables_.size(); ++j) {
        if (variables_[j].update_gen == update_gen) {
            drop_cols.push_back(j);
        }
    }
    if (!drop_cols.empty()) {
        std::vector<std::size_t> keep_cols;
        keep_cols.reserve(variables_.size() - drop_cols.size());
        std::vector<bool> dropped(variables_.size(), false);
        for (std::size_t j : drop_cols) {
            dropped[j] = true;
        }
        for (std::size_t j = 0; j < variables_.size(); ++j) {
            if (!dropped[j]) {
                keep_cols.push_back(j);
            }
        }

        std::vector<VariableId> new_vars;
        new_vars.reserve(keep_cols.size());
        for (std::size_t j : keep_cols) {
            new_vars.push_back(variables_[j]);
        }

        std::vector<std::vector<std::uint8_t>> new_rows;
        std::vector<int> new_pivots;
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            if (dropped[static_cast<std::size_t>(pivots_[i])]) {
                continue;  // unit row of the projected update
            }
            std::vector<std::uint8_t> row;
            row.reserve(keep_cols.size());
            for (std::size_t j : keep_cols) {
                row.push_back(rows_[i][j]);
            }
            std::size_t p = 0;
            while (p < row.size() && row[p] == 0) {
                ++p;
            }
            assert(p < row.size());
            new_pivots.push_back(static_cast<int>(p));
            new_rows.push_back(std::move(row));
        }

        variables_ = std::move(new_vars);
        column_index_.clear();
        for (std::size_t j = 0; j < variables_.size(); ++j) {
            column_index_.emplace(variables_[j], static_cast<int>(j));
        }
        rows_ = std::move(new_rows);
        pivots_ = std::move(new_pivots);
    }
    known_updates_.insert(update_gen);
}

void KnowledgeBase::clear() {
    variables_.clear();
    column_index_.clear();
    rows_.clear();
    pivots_.clear();
    known_updates_.clear();
}

namespace {

struct SymbolMaterializer {
    std::mt19937_64 rng;

    std::uint8_t random_byte() { return static_cast<std::uint8_t>(rng() & 0xFF); }

    std::uint8_t random_nonzero_byte() {
        std::uint8_t b;
        do {
            b = random_byte();
        } while (b == 0);
        return b;
    }

    CoefficientVector materialize(const SymbolDescriptor& symbol, int k) {
        CoefficientVector vec;
        switch (symbol.kind) {
            case SymbolKind::RatelessOfW1:
                vec.terms.reserve(static_cast<std::size_t>(k));
                for (int j = 1; j <= k; ++j) {
                    vec.terms.emplace_back(VariableId{symbol.w1_gen, j}, random_byte());
                }
                break;
            case SymbolKind::UncodedW1:
                vec.terms.emplace_back(VariableId{symbol.w1_gen, symbol.index},
                                       std::uint8_t{1});
                break;
            case SymbolKind::MixedW1W2:
                vec.terms.reserve(static_cast<std::size_t>(k) + 1);
                vec.terms.emplace_back(VariableId{symbol.w1_gen, symbol.index},
                                       random_nonzero_byte());
                for (int j = 1; j <= k; ++j) {
                    vec.terms.emplace_back(VariableId{symbol.w2_gen, j}, random_byte());
                }
                break;
        }
        return vec;
    }
};

}  // namespace

VerificationReport run_verified_simulation(const SimConfig& cfg, const ChannelParams& ch,
                                           std::int64_t target_cycles) {
    if (!cfg.oracle_mode) {
        throw std::invalid_argument("run_verified_simulation requires oracle_mode");
    }
    require_valid(cfg, ch);

    ErasureStream stream = derive_stream(cfg.master_seed, 0);
    // Coefficient draws come from a separate generator so they cannot disturb
    // the erasure stream alignment.
    SymbolMaterializer source{std::mt19937_64{cfg.master_seed ^ 0xC0EFF1C1E47ULL}};

    KnowledgeBase kb1;
    KnowledgeBase kb2;
    std::int64_t window_collisions1 = 0;
    std::int64_t window_collisions2 = 0;

    VerificationReport report;

    auto check_decode = [&](KnowledgeBase& kb, const DecodeEvent& e,
                            std::int64_t& window_collisions) {
        ++report.decode_events;
        // A user whose every received equation was the zero vector has no
        // columns at all; that is a rank deficit, not an unknown update.
        bool ok = kb.knows_update(e.generation_slot) &&
                  kb.is_decodable(e.generation_slot, cfg.k);
        if (ok) {
            ++report.agreements;
        } else {
            ++report.mismatches;
            if (window_collisions > 0) {
                ++report.attributed_mismatches;
            }
            report.mismatch_log.push_back(
                MismatchLogEntry{e.slot, e.user, e.generation_slot, window_collisions});
            kb.force_known(e.generation_slot, cfg.k);
        }
        kb.project_out(e.generation_slot);
        window_collisions = 0;
    };

    drive_adaptive(cfg.horizon, cfg.k, ch, stream,
                   [&](std::int64_t t, const SymbolDescriptor& symbol, ErasurePair v,
                       const AdaptiveState& before, const AdaptiveState& after,
                       const StepEvents& events) {
        report.slots_run = t;
        CoefficientVector coeffs = source.materialize(symbol, cfg.k);

        if (v.v1 == 1) {
            // Every delivered symbol is a fresh equation for user 1.
            ++report.expected_novel_user1;
            if (!kb1.absorb(coeffs)) {
                ++report.collisions_user1;
                ++window_collisions1;
            }
        }
        if (v.v2 == 1) {
            bool counted = before.k2 < cfg.k &&
                           (before.phase == Phase::Phase1 ||
                            (before.phase == Phase::Phase2 && before.c == CodingChoice::Coded));
            bool novel = kb2.absorb(coeffs);
            if (counted) {
                ++report.expected_novel_user2;
                if (!novel) {
                    ++report.collisions_user2;
                    ++window_collisions2;
                }
            }
        }

        for (int i = 0; i < events.count; ++i) {
            const DecodeEvent& e = events.events[static_cast<std::size_t>(i)];
            if (e.user == User::User1) {
                check_decode(kb1, e, window_collisions1);
            } else {
                check_decode(kb2, e, window_collisions2);
            }
        }

        bool cycle_closed = after.phase == Phase::Phase1 &&
                            (before.phase == Phase::Phase2 || after.w1_gen == t + 1);
        if (cycle_closed) {
            ++report.cycles_completed;
            // No future symbol references this cycle's updates.
            kb1.clear();
            kb2.clear();
            window_collisions1 = 0;
            window_collisions2 = 0;
        }
        return target_cycles <= 0 || report.cycles_completed < target_cycles;
    });
    return report;
}

}  // namespace aoi
