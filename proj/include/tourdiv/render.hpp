#pragma once

#include <optional>
#include <string>

#include "tourdiv/diversity.hpp"
#include "tourdiv/instance.hpp"

namespace tourdiv {

/// One line per edge with count >= 1, opacity count/μ; optimal tour edges
/// drawn on top in red. Throws std::logic_error without coordinates.
std::string render_edge_counts(const Population& pop, const Instance& instance,
                               const std::optional<Tour>& opt_tour = std::nullopt);

/// One panel per tour, ordered by ascending cost. Edges shared with another
/// member are red, edges unique to the tour are blue.
std::string render_population(const Population& pop, const Instance& instance);

}  // namespace tourdiv
