#pragma once

#include <string>

#include "framemap/corpus.hpp"
#include "framemap/extraction.hpp"

namespace framemap {

// Graphviz rendering of a map. Nodes carry the headline and frame name,
// main-storyline edges are bold, everything is emitted in sorted order so
// output bytes are reproducible.
std::string export_dot(const NarrativeMap& map, const FrameTaxonomy& taxonomy);

}  // namespace framemap
