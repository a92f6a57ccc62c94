#ifndef GENBIAS_RESOURCES_HPP
#define GENBIAS_RESOURCES_HPP

#include <string_view>

namespace genbias::resources {

/// JSON text of the built-in word-set lexicon (embedded copy of
/// core/resources/builtin_lexicon.json).
std::string_view builtin_lexicon_json();

/// JSON text of the built-in gender-swap pair list (embedded copy of
/// core/resources/swap_pairs.json).
std::string_view builtin_swap_json();

}  // namespace genbias::resources

#endif  // GENBIAS_RESOURCES_HPP
