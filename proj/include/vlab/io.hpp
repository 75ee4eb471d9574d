#pragma once

#include <filesystem>
#include <string>

#include "vlab/field.hpp"

namespace vlab {

/// CSV snapshot, row-major, header line "# nx ny Lx Ly". Complex fields
/// write re,im column pairs.
void write_csv(const std::filesystem::path& path, const CField& f);
void write_csv(const std::filesystem::path& path, const RField& f);
CField read_csv(const std::filesystem::path& path);

/// Raw little-endian float64 (re, im) pairs behind a 32-byte header:
/// magic "VLAB", u32 version, u32 nx, u32 ny, f64 Lx, f64 Ly.
void write_snapshot(const std::filesystem::path& path, const CField& f);
CField read_snapshot(const std::filesystem::path& path);

/// Writes via a temp file and renames into place.
void atomic_write_text(const std::filesystem::path& path, const std::string& content);

}  // namespace vlab
