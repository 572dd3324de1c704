#pragma once

#include <cstdint>
#include <string>

namespace svsa {

/// Fixed 17-significant-digit formatting used by every CSV/JSON writer so
/// identical runs emit identical bytes.
std::string fmt_g17(double v);

/// FNV-1a 64-bit hash, hex encoded. Used for config fingerprints.
std::string fnv1a_hex(const std::string& data);

} // namespace svsa
