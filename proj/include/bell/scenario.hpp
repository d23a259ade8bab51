#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "bell/rational.hpp"

namespace bell {

/// Measurement scenario: per party, an ordered list of measurements, each an
/// ordered list of distinct exact-rational outcome values. Immutable after
/// construction; fixes the index conventions used by every other module.
class Scenario {
  public:
    using OutcomeList = std::vector<Rational>;
    using PartySpec = std::vector<OutcomeList>;

    /// Validates and builds. Throws Error{EmptyParty|EmptyMeasurement|DuplicateOutcome}.
    static Scenario create(std::vector<PartySpec> parties);

    std::size_t party_count() const { return parties_.size(); }
    std::size_t measurement_count(std::size_t party) const { return parties_[party].size(); }
    const OutcomeList& outcomes(std::size_t party, std::size_t measurement) const {
        return parties_[party][measurement];
    }
    const std::vector<PartySpec>& parties() const { return parties_; }

    /// prod_p (m_p + 1); throws Error{SizeLimit} on 64-bit overflow.
    std::size_t setting_count() const;
    /// prod over all measurements of |outcomes|; throws Error{SizeLimit} on overflow.
    std::size_t strategy_count() const;

    /// Flat slot index of (party, measurement) in strategy storage.
    std::size_t slot(std::size_t party, std::size_t measurement) const;
    std::size_t slot_count() const;

    bool operator==(const Scenario& other) const { return parties_ == other.parties_; }

  private:
    explicit Scenario(std::vector<PartySpec> parties) : parties_(std::move(parties)) {}

    std::vector<PartySpec> parties_;
};

/// One measurement choice per party: 0 means no measurement (identity),
/// 1..m_p selects a measurement.
struct SettingTuple {
    static constexpr std::size_t identity = 0;
    std::vector<std::size_t> choices;

    bool is_all_identity() const;
    bool operator==(const SettingTuple&) const = default;
};

/// One outcome index per (party, measurement) slot, party-major, measurements
/// in declared order within each party.
struct DeterministicStrategy {
    std::vector<std::size_t> outcome_index;

    bool operator==(const DeterministicStrategy&) const = default;
};

/// All setting tuples in lexicographic order, last party varying fastest,
/// identity before measurement 1. Element 0 is all-identity.
std::vector<SettingTuple> enumerate_settings(const Scenario& scenario);

/// All deterministic strategies, lexicographic over slots with the last slot
/// varying fastest, outcomes in declared order.
std::vector<DeterministicStrategy> enumerate_strategies(const Scenario& scenario);

std::size_t setting_index(const Scenario& scenario, const SettingTuple& setting);
std::size_t strategy_index(const Scenario& scenario, const DeterministicStrategy& strategy);

/// Outcome value the strategy assigns to the given (party, measurement).
const Rational& strategy_outcome(const Scenario& scenario, const DeterministicStrategy& strategy,
                                 std::size_t party, std::size_t measurement);

inline constexpr std::size_t default_column_cap = std::size_t{1} << 24;

/// The matrix M mapping strategy probabilities to setting expectation values.
/// Row 0 is all ones; entry(s, strategy) is the product over measured parties
/// of the strategy's outcome for the chosen measurement.
class ModelMatrix {
  public:
    /// Throws Error{SizeLimit} if the strategy count exceeds column_cap.
    static ModelMatrix build(const Scenario& scenario, std::size_t column_cap = default_column_cap);

    const Scenario& scenario() const { return scenario_; }
    std::size_t rows() const { return settings_.size(); }
    std::size_t cols() const { return strategies_.size(); }
    const Rational& at(std::size_t row, std::size_t col) const { return entries_[row * cols_ + col]; }
    const std::vector<SettingTuple>& settings() const { return settings_; }
    const std::vector<DeterministicStrategy>& strategies() const { return strategies_; }

    const RatVec& row(std::size_t r) const { return row_cache_[r]; }
    RatVec column(std::size_t c) const;

    /// M * p (p over strategies). Throws Error{DimensionMismatch}.
    RatVec multiply(const RatVec& p) const;
    /// M^T * y (y over settings). Throws Error{DimensionMismatch}.
    RatVec transpose_multiply(const RatVec& y) const;
    /// Column sums M^T * 1 (the objective of the feasibility program).
    RatVec column_sums() const;

  private:
    ModelMatrix(Scenario scenario, std::vector<SettingTuple> settings,
                std::vector<DeterministicStrategy> strategies, std::vector<Rational> entries);

    Scenario scenario_;
    std::vector<SettingTuple> settings_;
    std::vector<DeterministicStrategy> strategies_;
    std::vector<Rational> entries_;  // row-major
    std::vector<RatVec> row_cache_;
    std::size_t cols_ = 0;
};

/// Observed expectation values, one per setting tuple in enumeration order.
/// Entry 0 is the normalization and must be exactly 1.
struct CorrelationVector {
    RatVec entries;

    bool operator==(const CorrelationVector&) const = default;
};

/// Validates raw entries against the scenario: length, exact normalization,
/// and the per-setting magnitude bound prod_p max_o |o|.
/// Throws Error{LengthMismatch|BadNormalization|MagnitudeExceedsBound}.
CorrelationVector validate_correlations(const Scenario& scenario, RatVec entries);

// Human-readable labels shared by documents and the CLI.
std::string party_symbol(std::size_t party);
std::string setting_label(const Scenario& scenario, const SettingTuple& setting);
std::string strategy_label(const Scenario& scenario, const DeterministicStrategy& strategy);

}  // namespace bell
