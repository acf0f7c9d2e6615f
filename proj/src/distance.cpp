#include "seqcmp/mds.hpp"

#include <algorithm>
#include <numeric>

namespace seqcmp {

std::size_t levenshtein(std::span<const EventType> a, std::span<const EventType> b) {
    // single rolling row
    std::vector<std::size_t> row(b.size() + 1);
    std::iota(row.begin(), row.end(), std::size_t{0});
    for (std::size_t i = 1; i <= a.size(); ++i) {
        std::size_t diag = row[0];
        row[0] = i;
        for (std::size_t j = 1; j <= b.size(); ++j) {
            const std::size_t up = row[j];
            row[j] = std::min({row[j] + 1, row[j - 1] + 1, diag + (a[i - 1] == b[j - 1] ? 0 : 1)});
            diag = up;
        }
    }
    return row[b.size()];
}

double patternDistance(std::span<const EventType> a, std::span<const EventType> b) {
    const std::size_t longest = std::max(a.size(), b.size());
    if (longest == 0)
        return 0.0;
    return static_cast<double>(levenshtein(a, b)) / static_cast<double>(longest);
}

} // namespace seqcmp
