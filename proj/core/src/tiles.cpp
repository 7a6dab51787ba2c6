#include "flextile/tiles.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>

#include "flextile/errors.hpp"

namespace flextile {

Tile::Tile(std::vector<CohesiveEnd> ends) : ends_(std::move(ends)) {
    std::sort(ends_.begin(), ends_.end());
}

std::size_t Tile::count(BondIndex bond, bool hatted) const {
    return static_cast<std::size_t>(std::count(ends_.begin(), ends_.end(), CohesiveEnd{bond, hatted}));
}

int Tile::net(BondIndex bond) const {
    return static_cast<int>(count(bond, false)) - static_cast<int>(count(bond, true));
}

BondIndex Tile::max_bond() const {
    return ends_.empty() ? 0 : ends_.back().bond;
}

Pot::Pot(std::vector<Tile> tiles, std::vector<std::string> names)
    : tiles_(std::move(tiles)), names_(std::move(names)) {
    if (tiles_.empty()) {
        throw std::invalid_argument("pot must contain at least one tile");
    }
    if (names_.empty()) {
        for (std::size_t j = 0; j < tiles_.size(); ++j) {
            names_.push_back("t" + std::to_string(j + 1));
        }
    }
    if (names_.size() != tiles_.size()) {
        throw std::invalid_argument("pot has " + std::to_string(tiles_.size()) + " tiles but " +
                                    std::to_string(names_.size()) + " names");
    }
    std::set<BondIndex> used;
    for (std::size_t j = 0; j < tiles_.size(); ++j) {
        if (tiles_[j].arms() == 0) {
            throw std::invalid_argument("tile " + names_[j] + " has no cohesive ends");
        }
        for (const CohesiveEnd& e : tiles_[j].ends()) {
            used.insert(e.bond);
        }
        for (std::size_t k = 0; k < j; ++k) {
            if (tiles_[k] == tiles_[j]) {
                throw std::invalid_argument("tiles " + names_[k] + " and " + names_[j] + " are the same type");
            }
        }
    }
    if (*used.begin() != 1 || *used.rbegin() != used.size()) {
        throw std::invalid_argument("bond letters must be exactly a1..a" + std::to_string(used.size()));
    }
    bonds_ = used.size();
}

Pot normalized(const std::vector<Tile>& tiles, std::vector<std::string> names) {
    std::map<BondIndex, BondIndex> rename;
    for (const Tile& t : tiles) {
        for (const CohesiveEnd& e : t.ends()) {
            rename.try_emplace(e.bond, static_cast<BondIndex>(rename.size() + 1));
        }
    }
    std::vector<Tile> out;
    out.reserve(tiles.size());
    for (const Tile& t : tiles) {
        std::vector<CohesiveEnd> ends;
        for (const CohesiveEnd& e : t.ends()) {
            ends.push_back({rename.at(e.bond), e.hatted});
        }
        out.emplace_back(std::move(ends));
    }
    return Pot(std::move(out), std::move(names));
}

std::string render_end(const CohesiveEnd& end) {
    return "a" + std::to_string(end.bond) + (end.hatted ? "*" : "");
}

std::string render_pot(const Pot& pot) {
    std::ostringstream out;
    for (std::size_t j = 0; j < pot.tile_count(); ++j) {
        out << pot.names()[j] << ':';
        const auto& ends = pot.tile(j).ends();
        for (std::size_t k = 0; k < ends.size(); ++k) {
            out << (k == 0 ? " " : ", ") << render_end(ends[k]);
        }
        out << '\n';
    }
    return out.str();
}

namespace {

struct RawTile {
    std::string name;
    std::vector<CohesiveEnd> ends;  // bond indices as written
    std::size_t line = 0;
};

bool is_space(char c) {
    return c == ' ' || c == '\t' || c == '\r';
}

class PotLineParser {
public:
    PotLineParser(std::string_view line, std::size_t line_no) : line_(line), line_no_(line_no) {}

    RawTile parse() {
        RawTile tile;
        tile.line = line_no_;
        skip_space();
        const std::size_t name_start = pos_;
        while (pos_ < line_.size() && line_[pos_] != ':' && !is_space(line_[pos_])) {
            ++pos_;
        }
        tile.name = std::string(line_.substr(name_start, pos_ - name_start));
        if (tile.name.empty()) {
            fail("expected tile name");
        }
        skip_space();
        if (pos_ >= line_.size() || line_[pos_] != ':') {
            fail("expected ':' after tile name");
        }
        ++pos_;
        skip_space();
        if (pos_ >= line_.size()) {
            fail("tile " + tile.name + " has no cohesive ends");
        }
        while (true) {
            tile.ends.push_back(parse_end());
            skip_space();
            if (pos_ >= line_.size()) {
                break;
            }
            if (line_[pos_] != ',') {
                fail("expected ',' between cohesive ends");
            }
            ++pos_;
            skip_space();
        }
        return tile;
    }

private:
    CohesiveEnd parse_end() {
        if (pos_ >= line_.size() || line_[pos_] != 'a') {
            fail("expected cohesive end like 'a1' or 'a1*'");
        }
        ++pos_;
        const std::size_t digits = pos_;
        while (pos_ < line_.size() && line_[pos_] >= '0' && line_[pos_] <= '9') {
            ++pos_;
        }
        if (pos_ == digits) {
            fail("expected bond index after 'a'");
        }
        BondIndex bond = 0;
        auto [ptr, ec] = std::from_chars(line_.data() + digits, line_.data() + pos_, bond);
        if (ec != std::errc{}) {
            pos_ = digits;
            fail("bond index out of range");
        }
        bool hatted = false;
        if (pos_ < line_.size() && line_[pos_] == '*') {
            hatted = true;
            ++pos_;
        }
        return {bond, hatted};
    }

    void skip_space() {
        while (pos_ < line_.size() && is_space(line_[pos_])) {
            ++pos_;
        }
    }

    [[noreturn]] void fail(const std::string& what) const {
        throw ParseError(line_no_, pos_ + 1, what);
    }

    std::string_view line_;
    std::size_t line_no_;
    std::size_t pos_ = 0;
};

}  // namespace

Pot parse_pot(std::string_view text) {
    std::vector<RawTile> raw;
    std::size_t line_no = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        auto stop = text.find('\n', start);
        if (stop == std::string_view::npos) {
            stop = text.size();
        }
        std::string_view line = text.substr(start, stop - start);
        ++line_no;
        start = stop + 1;
        if (auto hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        if (std::all_of(line.begin(), line.end(), is_space)) {
            continue;
        }
        raw.push_back(PotLineParser(line, line_no).parse());
    }
    if (raw.empty()) {
        throw ParseError(line_no == 0 ? 1 : line_no, 1, "pot contains no tiles");
    }

    // Normalize letters by first appearance in the text.
    std::map<BondIndex, BondIndex> rename;
    for (const RawTile& t : raw) {
        for (const CohesiveEnd& e : t.ends) {
            rename.try_emplace(e.bond, static_cast<BondIndex>(rename.size() + 1));
        }
    }
    std::vector<Tile> tiles;
    std::vector<std::string> names;
    for (const RawTile& t : raw) {
        std::vector<CohesiveEnd> ends;
        for (const CohesiveEnd& e : t.ends) {
            ends.push_back({rename.at(e.bond), e.hatted});
        }
        Tile tile(std::move(ends));
        for (std::size_t k = 0; k < tiles.size(); ++k) {
            if (names[k] == t.name) {
                throw ParseError(t.line, 1, "duplicate tile name '" + t.name + "'");
            }
            if (tiles[k] == tile) {
                throw ParseError(t.line, 1, "tile '" + t.name + "' repeats the type of '" + names[k] + "'");
            }
        }
        tiles.push_back(std::move(tile));
        names.push_back(t.name);
    }
    return Pot(std::move(tiles), std::move(names));
}

namespace {

std::vector<CohesiveEnd> repeat(CohesiveEnd end, int times) {
    return std::vector<CohesiveEnd>(static_cast<std::size_t>(times), end);
}

CohesiveEnd plain(BondIndex b) {
    return {b, false};
}

CohesiveEnd hat(BondIndex b) {
    return {b, true};
}

}  // namespace

Pot wheel_pot_s12(int n) {
    if (n < 4) {
        throw std::domain_error("wheel pot needs n >= 4, got " + std::to_string(n));
    }
    return Pot({Tile({plain(1), hat(1), hat(1)}), Tile(repeat(plain(1), n - 1))});
}

Pot wheel_pot_s3(int n) {
    if (n < 4) {
        throw std::domain_error("wheel pot needs n >= 4, got " + std::to_string(n));
    }
    const auto half = static_cast<BondIndex>(n / 2);
    std::vector<Tile> tiles;
    tiles.emplace_back(repeat(plain(1), n - 1));
    tiles.emplace_back(std::vector<CohesiveEnd>{hat(1), plain(2), plain(2)});
    for (BondIndex i = 3; i <= half + 1; ++i) {
        tiles.emplace_back(std::vector<CohesiveEnd>{hat(1), hat(i - 1), plain(i)});
    }
    if (n % 2 == 0) {
        tiles.emplace_back(std::vector<CohesiveEnd>{hat(1), hat(half), hat(half + 1)});
    } else {
        tiles.emplace_back(std::vector<CohesiveEnd>{hat(1), hat(half + 1), hat(half + 1)});
    }
    return Pot(std::move(tiles));
}

Pot cycle_pot_s3(int n) {
    if (n < 3) {
        throw std::domain_error("cycle pot needs n >= 3, got " + std::to_string(n));
    }
    const Pot wheel_pot = wheel_pot_s3(n + 1);
    std::vector<Tile> tiles;
    for (std::size_t j = 1; j < wheel_pot.tile_count(); ++j) {
        std::vector<CohesiveEnd> ends;
        for (const CohesiveEnd& e : wheel_pot.tile(j).ends()) {
            if (e.bond != 1) {
                ends.push_back(e);
            }
        }
        tiles.emplace_back(std::move(ends));
    }
    return normalized(tiles);
}

}  // namespace flextile
