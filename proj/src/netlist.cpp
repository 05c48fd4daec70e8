#include "canal/netlist.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <optional>
#include <sstream>

#include "canal/constraints.hpp"

namespace canal {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.back() == '\r' || s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    return s;
}

std::vector<NetId> parse_row(std::string_view body, int line_no) {
    std::vector<NetId> row;
    std::size_t pos = 0;
    while (pos < body.size()) {
        while (pos < body.size() && (body[pos] == ' ' || body[pos] == '\t')) ++pos;
        if (pos >= body.size()) break;
        std::size_t end = pos;
        while (end < body.size() && body[end] != ' ' && body[end] != '\t') ++end;
        std::string_view token = body.substr(pos, end - pos);
        NetId value = -1;
        auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
        if (ec != std::errc{} || ptr != token.data() + token.size() || value < 0) {
            throw ParseError(ParseError::Kind::BadToken,
                             "line " + std::to_string(line_no) + ": bad token '" + std::string(token) + "'");
        }
        row.push_back(value);
        pos = end;
    }
    return row;
}

}  // namespace

const char* to_string(ParseError::Kind kind) {
    switch (kind) {
        case ParseError::Kind::LengthMismatch: return "LengthMismatch";
        case ParseError::Kind::BadToken: return "BadToken";
        case ParseError::Kind::SingletonNet: return "SingletonNet";
        case ParseError::Kind::EmptyInput: return "EmptyInput";
    }
    return "?";
}

ChannelSpec parse_netlist(std::string_view text) {
    std::optional<std::vector<NetId>> top;
    std::optional<std::vector<NetId>> bottom;

    int line_no = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t nl = text.find('\n', start);
        std::string_view line = text.substr(start, nl == std::string_view::npos ? text.size() - start : nl - start);
        ++line_no;
        line = trim(line);
        if (!line.empty() && line.front() != '#') {
            if (line.starts_with("TOP:")) {
                if (top || bottom) {
                    throw ParseError(ParseError::Kind::BadToken,
                                     "line " + std::to_string(line_no) + ": unexpected TOP: line");
                }
                top = parse_row(line.substr(4), line_no);
            } else if (line.starts_with("BOT:")) {
                if (!top || bottom) {
                    throw ParseError(ParseError::Kind::BadToken,
                                     "line " + std::to_string(line_no) + ": BOT: must follow a single TOP: line");
                }
                bottom = parse_row(line.substr(4), line_no);
            } else {
                throw ParseError(ParseError::Kind::BadToken,
                                 "line " + std::to_string(line_no) + ": expected TOP: or BOT:");
            }
        }
        if (nl == std::string_view::npos) break;
        start = nl + 1;
    }

    if (!top && !bottom) throw ParseError(ParseError::Kind::EmptyInput, "no TOP:/BOT: rows");
    if (!bottom) throw ParseError(ParseError::Kind::BadToken, "missing BOT: line");

    ChannelSpec spec;
    spec.columns = static_cast<int>(top->size());
    spec.top = std::move(*top);
    spec.bottom = std::move(*bottom);
    check_spec(spec);
    return spec;
}

void check_spec(const ChannelSpec& spec) {
    if (spec.top.size() != spec.bottom.size()) {
        throw ParseError(ParseError::Kind::LengthMismatch,
                         "TOP has " + std::to_string(spec.top.size()) + " entries, BOT has " +
                             std::to_string(spec.bottom.size()));
    }
    if (spec.top.empty()) throw ParseError(ParseError::Kind::EmptyInput, "channel has no columns");
    if (static_cast<int>(spec.top.size()) != spec.columns) {
        throw ParseError(ParseError::Kind::LengthMismatch, "column count does not match row length");
    }
    std::map<NetId, int> counts;
    for (int c = 0; c < spec.columns; ++c) {
        for (NetId id : {spec.top[c], spec.bottom[c]}) {
            if (id < 0) throw ParseError(ParseError::Kind::BadToken, "negative net id");
            if (id != 0) ++counts[id];
        }
    }
    for (auto [id, n] : counts) {
        if (n == 1) {
            throw ParseError(ParseError::Kind::SingletonNet, "net " + std::to_string(id) + " has a single terminal");
        }
    }
}

std::string format_netlist(const ChannelSpec& spec) {
    std::ostringstream out;
    auto row = [&](const char* tag, const std::vector<NetId>& ids) {
        out << tag;
        for (NetId id : ids) out << ' ' << id;
        out << '\n';
    };
    row("TOP:", spec.top);
    row("BOT:", spec.bottom);
    return out.str();
}

std::vector<Net> nets_of(const ChannelSpec& spec) {
    std::map<NetId, Net> by_id;
    for (int c = 0; c < spec.columns; ++c) {
        for (Side side : {Side::top, Side::bottom}) {
            NetId id = spec.at({side, c});
            if (id == 0) continue;
            Net& net = by_id[id];
            net.id = id;
            net.terminals.push_back({side, c});
        }
    }
    std::vector<Net> nets;
    nets.reserve(by_id.size());
    for (auto& [id, net] : by_id) {
        std::sort(net.terminals.begin(), net.terminals.end());
        net.leftmost = net.terminals.front().column;
        net.rightmost = net.terminals.back().column;
        nets.push_back(std::move(net));
    }
    std::stable_sort(nets.begin(), nets.end(),
                     [](const Net& a, const Net& b) { return a.leftmost < b.leftmost; });
    return nets;
}

FeatureVector extract_features(const ChannelSpec& spec) {
    FeatureVector f;
    const int mid = spec.columns / 2;
    for (int c = 0; c < spec.columns; ++c) {
        int occupied = (spec.top[c] != 0) + (spec.bottom[c] != 0);
        (c < mid ? f.left_count : f.right_count) += occupied;
    }
    const int total = f.left_count + f.right_count;
    f.balance = total == 0 ? 0.0 : static_cast<double>(f.left_count) / total;
    f.net_count = static_cast<int>(nets_of(spec).size());
    f.density = channel_density(spec).density;
    return f;
}

}  // namespace canal
