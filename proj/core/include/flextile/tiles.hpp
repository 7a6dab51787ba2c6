#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace flextile {

/// Bond-edge letter a_i, 1-based.
using BondIndex = std::uint32_t;

/// One arm of a tile: a bond letter with polarity. Ordering puts a_i
/// before its complement and lower letters first.
struct CohesiveEnd {
    BondIndex bond = 1;
    bool hatted = false;

    auto operator<=>(const CohesiveEnd&) const = default;
};

/// Multiset of cohesive ends. Ends are kept sorted so equality is multiset
/// equality.
class Tile {
public:
    Tile() = default;
    explicit Tile(std::vector<CohesiveEnd> ends);

    [[nodiscard]] const std::vector<CohesiveEnd>& ends() const { return ends_; }
    [[nodiscard]] std::size_t arms() const { return ends_.size(); }
    [[nodiscard]] std::size_t count(BondIndex bond, bool hatted) const;
    /// Unhatted minus hatted ends of `bond`.
    [[nodiscard]] int net(BondIndex bond) const;
    [[nodiscard]] BondIndex max_bond() const;

    auto operator<=>(const Tile&) const = default;

private:
    std::vector<CohesiveEnd> ends_;
};

/// Ordered list of distinct tile types over the alphabet a_1..a_m.
class Pot {
public:
    /// Throws std::invalid_argument on an empty pot, an empty tile, a
    /// repeated tile type, or bond indices that are not exactly 1..m.
    explicit Pot(std::vector<Tile> tiles, std::vector<std::string> names = {});

    [[nodiscard]] const std::vector<Tile>& tiles() const { return tiles_; }
    [[nodiscard]] const Tile& tile(std::size_t j) const { return tiles_.at(j); }
    [[nodiscard]] const std::vector<std::string>& names() const { return names_; }
    [[nodiscard]] std::size_t tile_count() const { return tiles_.size(); }
    [[nodiscard]] std::size_t bond_count() const { return bonds_; }

    bool operator==(const Pot&) const = default;

private:
    std::vector<Tile> tiles_;
    std::vector<std::string> names_;
    std::size_t bonds_ = 0;
};

/// Renumbers bond letters by first appearance (tile order, then sorted end
/// order) and returns the rebuilt pot. Names are kept.
[[nodiscard]] Pot normalized(const std::vector<Tile>& tiles, std::vector<std::string> names = {});

// Pot text format: "name: a1, a1*, a2" per line, '*' marks the hat.
[[nodiscard]] Pot parse_pot(std::string_view text);
[[nodiscard]] std::string render_pot(const Pot& pot);
[[nodiscard]] std::string render_end(const CohesiveEnd& end);

/// Two tiles over one letter: {a, â, â} on the rim and {a^(n-1)} at the hub.
[[nodiscard]] Pot wheel_pot_s12(int n);

/// floor(n/2)+2 tiles over floor(n/2)+1 letters. a1 runs from the hub to
/// every rim tile; the rim is labelled as a chain that closes with one tile
/// whose shape depends on the parity of n.
[[nodiscard]] Pot wheel_pot_s3(int n);

/// wheel_pot_s3(n + 1) without its hub tile and without the â1 arm on the
/// remaining tiles.
[[nodiscard]] Pot cycle_pot_s3(int n);

}  // namespace flextile
