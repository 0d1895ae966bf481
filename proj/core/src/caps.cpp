#include "perspectra/caps.hpp"

#include "perspectra/errors.hpp"

#include <charconv>
#include <cstdlib>
#include <string>

namespace perspectra {

Caps Caps::parse(std::string_view spec) { return parse(spec, Caps{}); }

Caps Caps::parse(std::string_view spec, Caps base) {
    std::size_t pos = 0;
    while (pos < spec.size()) {
        std::size_t end = spec.find(',', pos);
        if (end == std::string_view::npos) end = spec.size();
        const std::string_view item = spec.substr(pos, end - pos);
        const std::size_t eq = item.find('=');
        if (eq == std::string_view::npos) throw ParseError("caps: expected key=value", pos);
        const std::string_view key = item.substr(0, eq);
        const std::string_view val = item.substr(eq + 1);
        std::int64_t v = 0;
        auto [ptr, ec] = std::from_chars(val.data(), val.data() + val.size(), v);
        if (ec != std::errc{} || ptr != val.data() + val.size() || v <= 0)
            throw ParseError("caps: bad value for '" + std::string(key) + "'", pos + eq + 1);
        if (key == "subgroups") base.subgroup_enum = v;
        else if (key == "sweep") base.sweep = v;
        else if (key == "ring") base.ring = v;
        else if (key == "intersect") base.intersect_enum = v;
        else throw ParseError("caps: unknown key '" + std::string(key) + "'", pos);
        pos = end + 1;
    }
    return base;
}

const Caps& default_caps() {
    static const Caps caps = [] {
        const char* env = std::getenv("PERSPECTRA_CAPS");
        return env ? Caps::parse(env) : Caps{};
    }();
    return caps;
}

} // namespace perspectra
