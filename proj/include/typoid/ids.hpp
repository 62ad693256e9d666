#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <limits>

namespace typoid {

/// Small dense identifier scoped to one structure. Tag keeps terms, paths
/// and edges from mixing.
template <class Tag>
struct Id {
    using value_type = std::uint32_t;
    static constexpr value_type invalid_value = std::numeric_limits<value_type>::max();

    value_type value = invalid_value;

    constexpr Id() = default;
    constexpr explicit Id(value_type v) : value(v) {}
    constexpr explicit Id(std::size_t v) : value(static_cast<value_type>(v)) {}
    constexpr explicit Id(int v) : value(static_cast<value_type>(v)) {}

    constexpr bool valid() const { return value != invalid_value; }
    constexpr std::size_t index() const { return value; }

    friend constexpr auto operator<=>(Id, Id) = default;
};

struct TermTag {};
struct PathTag {};
struct EdgeTag {};

using TermId = Id<TermTag>;
using PathId = Id<PathTag>;
using EdgeId = Id<EdgeTag>;

} // namespace typoid

template <class Tag>
struct std::hash<typoid::Id<Tag>> {
    std::size_t operator()(typoid::Id<Tag> id) const noexcept { return std::hash<std::uint32_t>{}(id.value); }
};
