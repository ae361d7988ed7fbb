#include "polarlens/util.hpp"

#include <cctype>
#include <cstdio>
#include <fstream>

namespace polarlens {

namespace {

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

unsigned days_in_month(int y, unsigned m) {
    static const unsigned lens[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
    if (m == 2) {
        const bool leap = (y % 4 == 0 && y % 100 != 0) || y % 400 == 0;
        return leap ? 29u : 28u;
    }
    return lens[m - 1];
}

} // namespace

std::int64_t parse_utc_timestamp(std::string_view s) {
    // YYYY-MM-DDTHH:MM:SSZ
    if (s.size() != 20 || s[4] != '-' || s[7] != '-' || s[10] != 'T' || s[13] != ':' ||
        s[16] != ':' || s[19] != 'Z' || !all_digits(s.substr(0, 4)) ||
        !all_digits(s.substr(5, 2)) || !all_digits(s.substr(8, 2)) ||
        !all_digits(s.substr(11, 2)) || !all_digits(s.substr(14, 2)) ||
        !all_digits(s.substr(17, 2))) {
        throw DataError("bad timestamp '" + std::string(s) +
                        "' (expected YYYY-MM-DDTHH:MM:SSZ)");
    }
    auto num = [&](std::size_t pos, std::size_t len) {
        int v = 0;
        std::from_chars(s.data() + pos, s.data() + pos + len, v);
        return v;
    };
    const int y = num(0, 4);
    const unsigned mo = static_cast<unsigned>(num(5, 2));
    const unsigned d = static_cast<unsigned>(num(8, 2));
    const int hh = num(11, 2), mi = num(14, 2), ss = num(17, 2);
    if (mo < 1 || mo > 12 || d < 1 || d > days_in_month(y, mo) || hh > 23 || mi > 59 || ss > 59)
        throw DataError("bad timestamp '" + std::string(s) + "' (field out of range)");
    return days_from_civil(y, mo, d) * 86400 + hh * 3600 + mi * 60 + ss;
}

std::string format_utc_timestamp(std::int64_t epoch_seconds) {
    std::int64_t days = epoch_seconds / 86400;
    std::int64_t sod = epoch_seconds % 86400;
    if (sod < 0) {
        sod += 86400;
        --days;
    }
    const CivilDate cd = civil_from_days(days);
    char buf[24];
    std::snprintf(buf, sizeof(buf), "%04d-%02u-%02uT%02lld:%02lld:%02lldZ", cd.year, cd.month,
                  cd.day, static_cast<long long>(sod / 3600),
                  static_cast<long long>((sod % 3600) / 60), static_cast<long long>(sod % 60));
    return std::string(buf);
}

std::vector<std::string> split_csv_line(std::string_view line) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        std::size_t pos = line.find(',', start);
        if (pos == std::string_view::npos) {
            out.emplace_back(line.substr(start));
            break;
        }
        out.emplace_back(line.substr(start, pos - start));
        start = pos + 1;
    }
    return out;
}

std::string fnv1a64_hex(std::string_view bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return std::string(buf);
}

std::string fnv1a64_file_hex(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open file for digest: " + path);
    std::uint64_t h = 0xcbf29ce484222325ULL;
    char buf[1 << 16];
    while (in) {
        in.read(buf, sizeof(buf));
        for (std::streamsize i = 0; i < in.gcount(); ++i) {
            h ^= static_cast<unsigned char>(buf[i]);
            h *= 0x100000001b3ULL;
        }
    }
    char out[17];
    std::snprintf(out, sizeof(out), "%016llx", static_cast<unsigned long long>(h));
    return std::string(out);
}

} // namespace polarlens
