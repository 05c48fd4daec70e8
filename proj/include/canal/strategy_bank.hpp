#pragma once

#include <compare>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "canal/netlist.hpp"

namespace canal {

enum class PolicyKind { middle_out, top_down, bottom_up, density_weighted };

const char* to_string(PolicyKind kind);
std::optional<PolicyKind> policy_from_string(std::string_view name);
std::vector<PolicyKind> all_policy_kinds();

struct RowSelectionPolicy {
    PolicyKind kind = PolicyKind::middle_out;
    std::vector<double> parameters;

    friend bool operator==(const RowSelectionPolicy&, const RowSelectionPolicy&) = default;
};

inline constexpr int kDensityBands = 3;
inline constexpr int kDefaultBucketCount = 5;

/// low: d <= 2, mid: 3..5, high: d >= 6.
int density_band(int density);
/// Equal-width bins over [0,1]; balance 1 falls in the last bin.
int balance_bucket(double balance, int bucket_count);

struct CellKey {
    int bucket = 0;
    int band = 0;
    friend auto operator<=>(const CellKey&, const CellKey&) = default;
};

struct BankEntry {
    RowSelectionPolicy policy;
    double success_weight = 0.0;
    friend bool operator==(const BankEntry&, const BankEntry&) = default;
};

class BankFormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Feature cell -> row-selection policy, with the empirical success rate behind each choice.
class StrategyBank {
public:
    explicit StrategyBank(int bucket_count = kDefaultBucketCount,
                          PolicyKind fill = PolicyKind::middle_out);

    int bucket_count() const { return bucket_count_; }
    CellKey cell_for(const FeatureVector& features) const;
    const BankEntry& at(CellKey cell) const;
    void set(CellKey cell, BankEntry entry);
    const RowSelectionPolicy& lookup(const FeatureVector& features) const { return at(cell_for(features)).policy; }

    /// `CANALBANK v1 buckets=B` header, then `bucket band policy weight` per cell.
    std::string serialize() const;
    static StrategyBank parse(std::string_view text);

    friend bool operator==(const StrategyBank&, const StrategyBank&) = default;

private:
    std::size_t index(CellKey cell) const;

    int bucket_count_;
    std::vector<BankEntry> cells_;
};

}  // namespace canal
