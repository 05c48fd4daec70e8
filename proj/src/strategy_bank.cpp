#include "canal/strategy_bank.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace canal {

const char* to_string(PolicyKind kind) {
    switch (kind) {
        case PolicyKind::middle_out: return "middle_out";
        case PolicyKind::top_down: return "top_down";
        case PolicyKind::bottom_up: return "bottom_up";
        case PolicyKind::density_weighted: return "density_weighted";
    }
    return "?";
}

std::optional<PolicyKind> policy_from_string(std::string_view name) {
    for (PolicyKind k : all_policy_kinds())
        if (name == to_string(k)) return k;
    return std::nullopt;
}

std::vector<PolicyKind> all_policy_kinds() {
    return {PolicyKind::middle_out, PolicyKind::top_down, PolicyKind::bottom_up, PolicyKind::density_weighted};
}

int density_band(int density) {
    if (density <= 2) return 0;
    if (density <= 5) return 1;
    return 2;
}

int balance_bucket(double balance, int bucket_count) {
    int b = static_cast<int>(std::floor(balance * bucket_count));
    return std::clamp(b, 0, bucket_count - 1);
}

StrategyBank::StrategyBank(int bucket_count, PolicyKind fill)
    : bucket_count_(bucket_count),
      cells_(static_cast<std::size_t>(std::max(bucket_count, 0)) * kDensityBands, BankEntry{{fill, {}}, 0.0}) {
    if (bucket_count < 1) throw std::invalid_argument("bucket count must be positive");
}

std::size_t StrategyBank::index(CellKey cell) const {
    if (cell.bucket < 0 || cell.bucket >= bucket_count_ || cell.band < 0 || cell.band >= kDensityBands) {
        throw std::out_of_range("bank cell out of range");
    }
    return static_cast<std::size_t>(cell.bucket) * kDensityBands + cell.band;
}

CellKey StrategyBank::cell_for(const FeatureVector& features) const {
    return {balance_bucket(features.balance, bucket_count_), density_band(features.density)};
}

const BankEntry& StrategyBank::at(CellKey cell) const { return cells_[index(cell)]; }

void StrategyBank::set(CellKey cell, BankEntry entry) { cells_[index(cell)] = std::move(entry); }

std::string StrategyBank::serialize() const {
    std::string out = "CANALBANK v1 buckets=" + std::to_string(bucket_count_) + "\n";
    char weight[32];
    for (int b = 0; b < bucket_count_; ++b) {
        for (int d = 0; d < kDensityBands; ++d) {
            const BankEntry& e = at({b, d});
            std::snprintf(weight, sizeof weight, "%.6f", e.success_weight);
            out += std::to_string(b) + " " + std::to_string(d) + " " + to_string(e.policy.kind) + " " + weight + "\n";
        }
    }
    return out;
}

StrategyBank StrategyBank::parse(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    if (!std::getline(in, line)) throw BankFormatError("empty bank file");
    int buckets = 0;
    if (std::sscanf(line.c_str(), "CANALBANK v1 buckets=%d", &buckets) != 1 || buckets < 1) {
        throw BankFormatError("bad bank header: " + line);
    }
    StrategyBank bank(buckets);
    std::vector<bool> seen(bank.cells_.size(), false);
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream fields(line);
        int b = -1, d = -1;
        std::string kind, weight_text;
        if (!(fields >> b >> d >> kind >> weight_text)) throw BankFormatError("bad bank line: " + line);
        auto policy = policy_from_string(kind);
        if (!policy) throw BankFormatError("unknown policy: " + kind);
        if (b < 0 || b >= buckets || d < 0 || d >= kDensityBands) throw BankFormatError("cell out of range: " + line);
        double w = 0.0;
        try {
            std::size_t used = 0;
            w = std::stod(weight_text, &used);
            if (used != weight_text.size()) throw std::invalid_argument(weight_text);
        } catch (const std::exception&) {
            throw BankFormatError("bad weight: " + weight_text);
        }
        if (w < 0.0 || w > 1.0) throw BankFormatError("weight outside [0,1]: " + weight_text);
        std::size_t i = bank.index({b, d});
        if (seen[i]) throw BankFormatError("duplicate cell: " + line);
        seen[i] = true;
        bank.cells_[i] = {{*policy, {}}, w};
    }
    if (std::find(seen.begin(), seen.end(), false) != seen.end()) throw BankFormatError("bank is missing cells");
    return bank;
}

}  // namespace canal
