#pragma once

namespace weakmeas {

inline constexpr const char* kVersion = "0.1.0";

/// Short build identifier embedded in result metadata. Derived from the
/// version string at compile time (FNV-1a), so identical sources produce
/// identical output files.
constexpr unsigned long long fnv1a(const char* s) {
    unsigned long long h = 1469598103934665603ull;
    while (*s != '\0') {
        h ^= static_cast<unsigned char>(*s++);
        h *= 1099511628211ull;
    }
    return h;
}

const char* build_id();

} // namespace weakmeas
