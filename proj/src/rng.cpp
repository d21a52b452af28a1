#include "retcc/rng.hpp"

namespace retcc {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

} // namespace

std::uint64_t derive_seed(std::uint64_t base, std::string_view purpose,
                          std::uint64_t a, std::uint64_t b) {
    // FNV-1a over the purpose tag, then mix in base and indices.
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (char c : purpose) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ULL;
    }
    h = splitmix64(h ^ splitmix64(base));
    h = splitmix64(h ^ splitmix64(a + 0x9e3779b97f4a7c15ULL));
    h = splitmix64(h ^ splitmix64(b + 0x2545f4914f6cdd1dULL));
    return h;
}

} // namespace retcc
