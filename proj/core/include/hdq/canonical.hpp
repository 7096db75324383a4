#pragma once

#include <string>
#include <string_view>

#include "hdq/model.hpp"

namespace hdq {

/// Canonical interchange format: UTF-8 JSON with fixed key order
/// (`id`, `elements`; per element `id`, `type`, `properties`, `links`;
/// per property `name`, `lexical`, `kind`, `unit?`, `qualifiers?`).
/// Arrays preserve ingestion order, so serialization is deterministic.
std::string serialize_canonical(const Dataset& d);

/// Inverse of serialize_canonical. The derived date parse mark is
/// recomputed under `conv`. Throws Error(MalformedInput) with a line
/// number, or Error(DuplicateId) on duplicate element ids.
Dataset parse_canonical(std::string_view bytes,
                        const ValueConventions& conv = {});

}  // namespace hdq
