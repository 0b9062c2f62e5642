#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

namespace crp {

// Shortest round-trip decimal representation (std::to_chars).
std::string fmt_double(double value);

// Strict double parse of a full token; rejects trailing junk, empty, inf/nan.
std::optional<double> parse_double(std::string_view token);

std::string trim(std::string_view s);

// Splits one CSV line on commas. No quoting support: the formats used here
// never embed commas in fields.
std::vector<std::string> split_csv(std::string_view line);

std::string join(const std::vector<std::string>& parts, std::string_view sep);

// Writes via a temporary file in the same directory followed by an atomic
// rename, so failed runs leave no partial output behind.
void atomic_write_file(const std::filesystem::path& path, std::string_view content);

std::string read_file(const std::filesystem::path& path);

// Deterministic RNG stack, stamped in reports. std::uniform_* distributions
// are implementation-defined, so everything below uses raw engine output.
inline constexpr const char* kRngVersion = "splitmix64-mt19937_64-fisheryates-v1";

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

inline std::mt19937_64 make_engine(std::uint64_t seed) {
    return std::mt19937_64(splitmix64(seed));
}

inline std::uint64_t derive_subseed(std::uint64_t master, std::uint64_t index) {
    return splitmix64(master ^ (0x9E3779B97F4A7C15ULL * (index + 1)));
}

inline double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Fisher-Yates with modulo indexing; the tiny modulo bias is irrelevant here
// and keeping the rule fixed keeps historic splits stable.
template <typename T>
void shuffle_v1(std::vector<T>& items, std::mt19937_64& rng) {
    for (std::size_t i = items.size(); i > 1; --i) {
        std::size_t j = static_cast<std::size_t>(rng() % i);
        std::swap(items[i - 1], items[j]);
    }
}

} // namespace crp
