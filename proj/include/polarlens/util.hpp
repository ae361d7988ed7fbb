#pragma once

#include <charconv>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "polarlens/errors.hpp"

namespace polarlens {

// ---------------------------------------------------------------------------
// Seeded RNG stream derivation.
//
// All randomness in the toolkit flows from explicit integer seeds. Distinct
// logical streams (bootstrap replicate i, synthesis year y, ...) are derived
// by mixing the base seed with a stream index, so results are independent of
// scheduling and worker count.

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t derive_stream(std::uint64_t seed, std::uint64_t stream) {
    return splitmix64(splitmix64(seed) ^ (0x9e3779b97f4a7c15ULL * (stream + 1)));
}

// ---------------------------------------------------------------------------
// Locale-independent numeric formatting (CSV fields always use '.').

inline std::string format_double(double v, int significant_digits) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general,
                             significant_digits);
    return std::string(buf, res.ptr);
}

// Shortest representation that round-trips.
inline std::string format_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

inline std::string format_fixed(double v, int decimals) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::fixed, decimals);
    return std::string(buf, res.ptr);
}

// ---------------------------------------------------------------------------
// Civil calendar <-> days since the Unix epoch. Used for UTC year slicing and
// timestamp parsing; no timezone handling anywhere.

inline std::int64_t days_from_civil(int y, unsigned m, unsigned d) {
    y -= m <= 2;
    const int era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return static_cast<std::int64_t>(era) * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

struct CivilDate {
    int year;
    unsigned month;
    unsigned day;
};

inline CivilDate civil_from_days(std::int64_t z) {
    z += 719468;
    const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
    const unsigned doe = static_cast<unsigned>(z - era * 146097);
    const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    const std::int64_t y = static_cast<std::int64_t>(yoe) + era * 400;
    const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const unsigned mp = (5 * doy + 2) / 153;
    const unsigned d = doy - (153 * mp + 2) / 5 + 1;
    const unsigned m = mp + (mp < 10 ? 3 : -9);
    return CivilDate{static_cast<int>(y + (m <= 2)), m, d};
}

// Strict "YYYY-MM-DDTHH:MM:SSZ" (whole seconds, Zulu suffix) -> epoch seconds.
// Throws DataError on any deviation.
std::int64_t parse_utc_timestamp(std::string_view s);

// Inverse of parse_utc_timestamp.
std::string format_utc_timestamp(std::int64_t epoch_seconds);

inline int utc_year(std::int64_t epoch_seconds) {
    std::int64_t days = epoch_seconds / 86400;
    if (epoch_seconds < 0 && epoch_seconds % 86400 != 0) --days;
    return civil_from_days(days).year;
}

// ---------------------------------------------------------------------------
// Small string helpers.

std::vector<std::string> split_csv_line(std::string_view line);

inline void strip_trailing_cr(std::string& s) {
    if (!s.empty() && s.back() == '\r') s.pop_back();
}

// FNV-1a over a byte stream; used for input digests in run manifests.
std::string fnv1a64_hex(std::string_view bytes);
std::string fnv1a64_file_hex(const std::string& path);

} // namespace polarlens
