#pragma once

#include <cstdint>
#include <string_view>

namespace perspectra {

/// Enumeration limits. Defaults can be overridden through the environment
/// variable PERSPECTRA_CAPS, e.g. "subgroups=2048,sweep=512,ring=65536".
struct Caps {
    std::int64_t subgroup_enum = 1024;  ///< max |G| for subgroup enumeration
    std::int64_t sweep = 256;           ///< max |G| for full perspectivity sweeps
    std::int64_t ring = 4096;           ///< max |R| for ring enumeration
    std::int64_t intersect_enum = 4096; ///< max |G| for enumeration-based oracles

    /// Parses "key=value" pairs separated by commas; throws ParseError.
    static Caps parse(std::string_view spec);
    static Caps parse(std::string_view spec, Caps base);
};

/// Defaults with PERSPECTRA_CAPS applied (read once, then cached).
const Caps& default_caps();

} // namespace perspectra
