#ifndef TOPOTONE_FORMAT_HPP
#define TOPOTONE_FORMAT_HPP

#include <charconv>
#include <string>

namespace topotone {

/// Shortest round-trip-exact, locale-independent double formatting. All file
/// output goes through this so identical runs produce byte-identical files.
inline std::string format_double(double v) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

} // namespace topotone

#endif
