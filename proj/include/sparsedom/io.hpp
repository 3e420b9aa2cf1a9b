#pragma once

#include <string>

#include <json.hpp>

#include "sparsedom/cubes.hpp"
#include "sparsedom/grid.hpp"
#include "sparsedom/sparse.hpp"
#include "sparsedom/spaces.hpp"

namespace sparsedom {

using Json = nlohmann::json;

/// Reals that may be infinite are written as numbers or the strings "inf" / "-inf".
Json real_to_json(double v);
double real_from_json(const Json& j);

Json to_json(const GridGeometry& g);
GridGeometry geometry_from_json(const Json& j);

/// {dim, origin, spacing, shape, values}; values row-major. Readers reject NaN and infinities.
Json to_json(const GridFunction& f);
GridFunction grid_function_from_json(const Json& j);

Json to_json(const YoungFunction& phi);
YoungFunction young_from_json(const Json& j);

Json to_json(const SpaceDescriptor& x);
SpaceDescriptor space_from_json(const Json& j);

/// Tabulated weights have no serialized form.
Json to_json(const MorreyWeight& u);
MorreyWeight morrey_weight_from_json(const Json& j);

Json to_json(const CubeFamilySpec& s);
CubeFamilySpec cube_family_from_json(const Json& j);

/// {grid, shift, top_level, eta, cubes: [[level, i0, i1], ...]}.
Json to_json(const SparseFamily& s);
SparseFamily sparse_family_from_json(const Json& j);

Json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace sparsedom
