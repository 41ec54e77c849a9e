#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "homebias/dataset.hpp"

namespace homebias {

inline constexpr const char* kDatasetFormat = "homebias-dataset";
inline constexpr int kDatasetVersion = 1;

/// Canonical JSON serialisation. Keys are emitted in a fixed order and
/// doubles round-trip exactly, so equal datasets produce equal bytes.
std::string dataset_to_json(const Dataset& ds);
Dataset dataset_from_json(const std::string& text);

void write_dataset(const Dataset& ds, const std::filesystem::path& path);
Dataset read_dataset(const std::filesystem::path& path);

/// One line per note, prefixed with the file it came from.
void write_provenance(const Dataset& ds, std::ostream& out);

}  // namespace homebias
