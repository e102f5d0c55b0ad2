#pragma once

#include <filesystem>

#include "vtorus/simulate.hpp"

namespace vtorus {

/// Binary ensemble container:
///   8 bytes  magic "VTORUSEN"
///   8 bytes  header length L, unsigned little-endian
///   L bytes  JSON header (format, version, kernel, spectrum, scheme, seed,
///            config, index set, shape [paths, times, slots], order)
///   data     float64 little-endian, (path, time, slot) order
/// Slot 0 is X_0; member m of the index set has X^1 at 1 + 2m, X^2 at 2 + 2m.
void write_ensemble(const std::filesystem::path& path, const FieldEnsemble& ensemble);
FieldEnsemble read_ensemble(const std::filesystem::path& path);

}  // namespace vtorus
