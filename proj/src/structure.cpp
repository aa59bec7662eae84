#include "hexcurv/structure.hpp"

namespace hexcurv {

const char* family_name(Family f)
{
    switch (f) {
    case Family::A1: return "A1";
    case Family::A2: return "A2";
    case Family::A3: return "A3";
    case Family::MixedI: return "MixedI";
    case Family::MixedII: return "MixedII";
    case Family::MixedIII: return "MixedIII";
    }
    return "?";
}

std::optional<Family> parse_family(std::string_view s)
{
    for (Family f : {Family::A1, Family::A2, Family::A3, Family::MixedI, Family::MixedII, Family::MixedIII}) {
        if (s == family_name(f))
            return f;
    }
    return std::nullopt;
}

bool is_mixed(Family f)
{
    return f == Family::MixedI || f == Family::MixedII || f == Family::MixedIII;
}

int base_type(Family f)
{
    switch (f) {
    case Family::A1:
    case Family::MixedI: return 1;
    case Family::A2:
    case Family::MixedII: return 2;
    default: return 3;
    }
}

}  // namespace hexcurv
