#pragma once

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace canal {

using NetId = int;

/// Channel edge a terminal sits on. Top orders before bottom.
enum class Side : std::uint8_t { top = 0, bottom = 1 };

struct Terminal {
    Side side = Side::top;
    int column = 0;

    friend auto operator<=>(const Terminal& a, const Terminal& b) {
        if (auto c = a.column <=> b.column; c != 0) return c;
        return a.side <=> b.side;
    }
    friend bool operator==(const Terminal&, const Terminal&) = default;
};

/// A two-row channel instance. Entry 0 is a vacant position.
struct ChannelSpec {
    int columns = 0;
    std::vector<NetId> top;
    std::vector<NetId> bottom;

    NetId at(Terminal t) const { return t.side == Side::top ? top[t.column] : bottom[t.column]; }

    friend bool operator==(const ChannelSpec&, const ChannelSpec&) = default;
};

struct Net {
    NetId id = 0;
    std::vector<Terminal> terminals;  // sorted by (column, side)
    int leftmost = 0;
    int rightmost = 0;

    bool single_column() const { return leftmost == rightmost; }
};

/// Macro-level description of an instance used to pick a row-selection policy.
struct FeatureVector {
    int left_count = 0;
    int right_count = 0;
    double balance = 0.0;
    int net_count = 0;
    int density = 0;
};

class ParseError : public std::runtime_error {
public:
    enum class Kind { LengthMismatch, BadToken, SingletonNet, EmptyInput };

    ParseError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    Kind kind() const { return kind_; }

private:
    Kind kind_;
};

const char* to_string(ParseError::Kind kind);

/// Parses the `.netlist` text format (`TOP:` and `BOT:` rows, `#` comments).
ChannelSpec parse_netlist(std::string_view text);

/// Serializes a spec back to the `.netlist` format; parse_netlist inverts it.
std::string format_netlist(const ChannelSpec& spec);

/// Checks every ChannelSpec invariant; throws ParseError on the first violation.
void check_spec(const ChannelSpec& spec);

/// Nets sorted by leftmost column, ties by ascending id.
std::vector<Net> nets_of(const ChannelSpec& spec);

FeatureVector extract_features(const ChannelSpec& spec);

/// Grid row of a terminal for a channel with `max_rows` track rows.
inline int terminal_row(Side side, int max_rows) { return side == Side::top ? max_rows + 1 : 0; }

}  // namespace canal
