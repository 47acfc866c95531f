#pragma once

#include <optional>
#include <string>

#include "banachlab/catalog.hpp"
#include "banachlab/space.hpp"
#include "banachlab/sums.hpp"

namespace banachlab {

/// Parses space specs:
///   catalog:lp(2,2)  catalog:lp(2,inf)  catalog:euclid(3)
///   catalog:ex62(8)  catalog:ex63(6)  catalog:ex64(4)  catalog:ex65(4)
///   catalog:arc2d(ex61)  catalog:arc2d(fig5)
///   dual:<spec>
///   sum(E=catalog:lp(2,2); catalog:lp(2,2), catalog:arc2d(fig5))
NormedSpace parse_space_spec(const std::string& spec, const Resolution& res = {});

/// sum(...) specs only; nullopt if the spec is not a sum.
std::optional<SumSpace> parse_sum_spec(const std::string& spec, const Resolution& res = {});

/// Absolute-norm specs: catalog:lp(m,p) or catalog:wlp(m,p;w1,...,wm),
/// or file:<path> pointing to a JSON declaration {"kind","m","p","weights"}.
AbsoluteNorm parse_absolute_spec(const std::string& spec);

/// Names of all catalog presets (for the `catalog` CLI command).
std::vector<std::string> catalog_listing();

}  // namespace banachlab
