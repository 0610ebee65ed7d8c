#pragma once

#include "ldpower/dataset.hpp"

#include <filesystem>

namespace ldpower {

// Reads users.csv, areas.csv, issues.csv, initiatives.csv, ballots.csv and
// delegations.csv from a directory and validates the result. Throws DataError naming
// file and row.
Dataset load_dataset(const std::filesystem::path& directory);

void write_dataset(const Dataset& dataset, const std::filesystem::path& directory);

} // namespace ldpower
