#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace hexcurv {

enum class Family { A1, A2, A3, MixedI, MixedII, MixedIII };

const char* family_name(Family f);
std::optional<Family> parse_family(std::string_view s);

bool is_mixed(Family f);
// 1 for A1/MixedI, 2 for A2/MixedII, 3 for A3/MixedIII
int base_type(Family f);

struct StructureSpec {
    Family family = Family::A1;
    std::vector<int> alpha;       // per boundary component, in {-1,0,1}
    std::vector<double> eta;      // per edge
    std::vector<char> special;    // per boundary component
    std::vector<double> c_shift;  // per edge, oriented from the stored first endpoint; empty means 0

    bool is_special(int v) const { return v >= 0 && v < static_cast<int>(special.size()) && special[v] != 0; }
    double shift(int edge) const { return c_shift.empty() ? 0.0 : c_shift[edge]; }
};

}  // namespace hexcurv
