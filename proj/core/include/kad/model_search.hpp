#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string_view>
#include <vector>

#include "kad/algebra.hpp"
#include "kad/axioms.hpp"

namespace kad {

enum class PhiConstraint { Fails, Holds };

/// CLI spelling: phi-fails, phi-holds.
std::optional<PhiConstraint> parse_constraint(std::string_view text);
std::string_view to_string(PhiConstraint constraint);

struct SearchOptions {
  std::size_t max_size = 4;
  /// Stop after this many models; 0 means no limit.
  std::size_t limit = 0;
};

struct SearchStats {
  std::size_t models = 0;
  std::size_t nodes = 0;
  std::size_t duplicates = 0;
};

/// Enumerates every algebra over {0, ..., size-1} satisfying `profile`, with
/// 0 as zero and size-1 as one, one representative per isomorphism class.
/// Tables are filled cell by cell and partial tables are pruned as soon as
/// an axiom instance is decided false. Models are passed to `sink` in a
/// deterministic order; returning false from `sink` stops the search.
/// Throws BoundError if size exceeds options.max_size.
SearchStats find_models(std::size_t size, AxiomProfile profile,
                        std::optional<PhiConstraint> constraint,
                        const std::function<bool(const FiniteAlgebra &)> &sink,
                        const SearchOptions &options = {});

std::vector<FiniteAlgebra> find_models(std::size_t size, AxiomProfile profile,
                                       std::optional<PhiConstraint> constraint = std::nullopt,
                                       const SearchOptions &options = {});

} // namespace kad
