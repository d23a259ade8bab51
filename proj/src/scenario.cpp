#include "bell/scenario.hpp"

#include <limits>

#include "bell/errors.hpp"

namespace bell {

namespace {

// Checked product of small counts; SizeLimit instead of silent wraparound.
std::size_t checked_product(std::size_t acc, std::size_t factor) {
    if (factor != 0 && acc > std::numeric_limits<std::size_t>::max() / factor) {
        fail(ErrorCode::SizeLimit, "scenario index space overflows 64 bits");
    }
    return acc * factor;
}

}  // namespace

Scenario Scenario::create(std::vector<PartySpec> parties) {
    if (parties.empty()) {
        fail(ErrorCode::EmptyParty, "scenario needs at least one party");
    }
    for (std::size_t p = 0; p < parties.size(); ++p) {
        if (parties[p].empty()) {
            fail(ErrorCode::EmptyParty, "party " + std::to_string(p) + " has no measurements");
        }
        for (std::size_t m = 0; m < parties[p].size(); ++m) {
            const auto& outcomes = parties[p][m];
            if (outcomes.empty()) {
                fail(ErrorCode::EmptyMeasurement,
                     "party " + std::to_string(p) + " measurement " + std::to_string(m) + " has no outcomes");
            }
            for (std::size_t i = 0; i < outcomes.size(); ++i) {
                for (std::size_t j = i + 1; j < outcomes.size(); ++j) {
                    if (outcomes[i] == outcomes[j]) {
                        fail(ErrorCode::DuplicateOutcome,
                             "party " + std::to_string(p) + " measurement " + std::to_string(m) +
                                 " repeats outcome " + to_string(outcomes[i]));
                    }
                }
            }
        }
    }
    return Scenario(std::move(parties));
}

std::size_t Scenario::setting_count() const {
    std::size_t count = 1;
    for (const auto& party : parties_) count = checked_product(count, party.size() + 1);
    return count;
}

std::size_t Scenario::strategy_count() const {
    std::size_t count = 1;
    for (const auto& party : parties_) {
        for (const auto& outcomes : party) count = checked_product(count, outcomes.size());
    }
    return count;
}

std::size_t Scenario::slot(std::size_t party, std::size_t measurement) const {
    std::size_t offset = 0;
    for (std::size_t p = 0; p < party; ++p) offset += parties_[p].size();
    return offset + measurement;
}

std::size_t Scenario::slot_count() const {
    std::size_t count = 0;
    for (const auto& party : parties_) count += party.size();
    return count;
}

bool SettingTuple::is_all_identity() const {
    for (std::size_t c : choices) {
        if (c != identity) return false;
    }
    return true;
}

std::vector<SettingTuple> enumerate_settings(const Scenario& scenario) {
    const std::size_t total = scenario.setting_count();
    const std::size_t parties = scenario.party_count();
    std::vector<SettingTuple> result;
    result.reserve(total);
    SettingTuple current{std::vector<std::size_t>(parties, SettingTuple::identity)};
    for (std::size_t i = 0; i < total; ++i) {
        result.push_back(current);
        // mixed-radix increment, last party fastest
        for (std::size_t p = parties; p-- > 0;) {
            if (current.choices[p] < scenario.measurement_count(p)) {
                ++current.choices[p];
                break;
            }
            current.choices[p] = SettingTuple::identity;
        }
    }
    return result;
}

std::vector<DeterministicStrategy> enumerate_strategies(const Scenario& scenario) {
    const std::size_t total = scenario.strategy_count();
    const std::size_t slots = scenario.slot_count();
    std::vector<std::size_t> radix;
    radix.reserve(slots);
    for (const auto& party : scenario.parties()) {
        for (const auto& outcomes : party) radix.push_back(outcomes.size());
    }
    std::vector<DeterministicStrategy> result;
    result.reserve(total);
    DeterministicStrategy current{std::vector<std::size_t>(slots, 0)};
    for (std::size_t i = 0; i < total; ++i) {
        result.push_back(current);
        for (std::size_t s = slots; s-- > 0;) {
            if (current.outcome_index[s] + 1 < radix[s]) {
                ++current.outcome_index[s];
                break;
            }
            current.outcome_index[s] = 0;
        }
    }
    return result;
}

std::size_t setting_index(const Scenario& scenario, const SettingTuple& setting) {
    if (setting.choices.size() != scenario.party_count()) {
        fail(ErrorCode::DimensionMismatch, "setting tuple has wrong party count");
    }
    std::size_t index = 0;
    for (std::size_t p = 0; p < setting.choices.size(); ++p) {
        const std::size_t radix = scenario.measurement_count(p) + 1;
        if (setting.choices[p] >= radix) {
            fail(ErrorCode::OutOfRange, "measurement choice out of range for party " + std::to_string(p));
        }
        index = index * radix + setting.choices[p];
    }
    return index;
}

std::size_t strategy_index(const Scenario& scenario, const DeterministicStrategy& strategy) {
    if (strategy.outcome_index.size() != scenario.slot_count()) {
        fail(ErrorCode::DimensionMismatch, "strategy has wrong slot count");
    }
    std::size_t index = 0;
    std::size_t s = 0;
    for (const auto& party : scenario.parties()) {
        for (const auto& outcomes : party) {
            if (strategy.outcome_index[s] >= outcomes.size()) {
                fail(ErrorCode::OutOfRange, "outcome index out of range in slot " + std::to_string(s));
            }
            index = index * outcomes.size() + strategy.outcome_index[s];
            ++s;
        }
    }
    return index;
}

const Rational& strategy_outcome(const Scenario& scenario, const DeterministicStrategy& strategy,
                                 std::size_t party, std::size_t measurement) {
    return scenario.outcomes(party, measurement)[strategy.outcome_index[scenario.slot(party, measurement)]];
}

ModelMatrix::ModelMatrix(Scenario scenario, std::vector<SettingTuple> settings,
                         std::vector<DeterministicStrategy> strategies, std::vector<Rational> entries)
    : scenario_(std::move(scenario)),
      settings_(std::move(settings)),
      strategies_(std::move(strategies)),
      entries_(std::move(entries)),
      cols_(strategies_.size()) {
    row_cache_.resize(settings_.size());
    for (std::size_t r = 0; r < settings_.size(); ++r) {
        row_cache_[r].assign(entries_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                             entries_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
    }
}

ModelMatrix ModelMatrix::build(const Scenario& scenario, std::size_t column_cap) {
    const std::size_t cols = scenario.strategy_count();
    if (cols > column_cap) {
        fail(ErrorCode::SizeLimit, "strategy count " + std::to_string(cols) + " exceeds column cap " +
                                       std::to_string(column_cap));
    }
    auto settings = enumerate_settings(scenario);
    auto strategies = enumerate_strategies(scenario);
    std::vector<Rational> entries(settings.size() * cols);
    for (std::size_t r = 0; r < settings.size(); ++r) {
        const SettingTuple& s = settings[r];
        for (std::size_t c = 0; c < cols; ++c) {
            Rational product = 1;
            for (std::size_t p = 0; p < s.choices.size(); ++p) {
                if (s.choices[p] != SettingTuple::identity) {
                    product *= strategy_outcome(scenario, strategies[c], p, s.choices[p] - 1);
                }
            }
            entries[r * cols + c] = std::move(product);
        }
    }
    return ModelMatrix(scenario, std::move(settings), std::move(strategies), std::move(entries));
}

RatVec ModelMatrix::column(std::size_t c) const {
    RatVec col(rows());
    for (std::size_t r = 0; r < rows(); ++r) col[r] = at(r, c);
    return col;
}

RatVec ModelMatrix::multiply(const RatVec& p) const {
    if (p.size() != cols()) {
        fail(ErrorCode::DimensionMismatch, "vector length " + std::to_string(p.size()) +
                                               " does not match column count " + std::to_string(cols()));
    }
    RatVec result(rows());
    for (std::size_t r = 0; r < rows(); ++r) result[r] = dot(row_cache_[r], p);
    return result;
}

RatVec ModelMatrix::transpose_multiply(const RatVec& y) const {
    if (y.size() != rows()) {
        fail(ErrorCode::DimensionMismatch, "vector length " + std::to_string(y.size()) +
                                               " does not match row count " + std::to_string(rows()));
    }
    RatVec result(cols(), Rational(0));
    for (std::size_t r = 0; r < rows(); ++r) {
        if (y[r] == 0) continue;
        for (std::size_t c = 0; c < cols(); ++c) {
            if (at(r, c) != 0) result[c] += y[r] * at(r, c);
        }
    }
    return result;
}

RatVec ModelMatrix::column_sums() const {
    RatVec ones(rows(), Rational(1));
    return transpose_multiply(ones);
}

CorrelationVector validate_correlations(const Scenario& scenario, RatVec entries) {
    const auto settings = enumerate_settings(scenario);
    if (entries.size() != settings.size()) {
        fail(ErrorCode::LengthMismatch, "expected " + std::to_string(settings.size()) + " entries, got " +
                                            std::to_string(entries.size()));
    }
    if (entries[0] != 1) {
        fail(ErrorCode::BadNormalization, "normalization entry is " + to_string(entries[0]) + ", must be 1");
    }
    for (std::size_t i = 1; i < entries.size(); ++i) {
        Rational bound = 1;
        const SettingTuple& s = settings[i];
        for (std::size_t p = 0; p < s.choices.size(); ++p) {
            if (s.choices[p] == SettingTuple::identity) continue;
            Rational largest = 0;
            for (const Rational& o : scenario.outcomes(p, s.choices[p] - 1)) {
                if (abs(o) > largest) largest = abs(o);
            }
            bound *= largest;
        }
        if (abs(entries[i]) > bound) {
            fail(ErrorCode::MagnitudeExceedsBound,
                 "entry for " + setting_label(scenario, s) + " is " + to_string(entries[i]) +
                     ", magnitude bound is " + to_string(bound));
        }
    }
    return CorrelationVector{std::move(entries)};
}

std::string party_symbol(std::size_t party) {
    if (party < 26) return std::string(1, static_cast<char>('A' + party));
    return "P" + std::to_string(party + 1);
}

std::string setting_label(const Scenario& scenario, const SettingTuple& setting) {
    std::string label;
    for (std::size_t p = 0; p < setting.choices.size(); ++p) {
        if (p) label += ' ';
        if (setting.choices[p] == SettingTuple::identity) {
            label += 'I';
        } else {
            label += party_symbol(p) + std::to_string(setting.choices[p]);
        }
    }
    return label;
}

std::string strategy_label(const Scenario& scenario, const DeterministicStrategy& strategy) {
    std::string label;
    for (std::size_t p = 0; p < scenario.party_count(); ++p) {
        for (std::size_t m = 0; m < scenario.measurement_count(p); ++m) {
            if (p || m) label += ' ';
            label += party_symbol(p) + std::to_string(m + 1) + "=" +
                     to_string(strategy_outcome(scenario, strategy, p, m));
        }
    }
    return label;
}

}  // namespace bell
