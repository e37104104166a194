#pragma once

#include <variant>

#include "json.hpp"

#include "beauville/recipes.hpp"
#include "beauville/suzuki.hpp"

namespace bvl {

using Json = nlohmann::json;

Json field_to_json(const Field& F);
std::shared_ptr<const Field> field_from_json(const Json& j);

Json element_to_json(const FieldElement& a);
FieldElement element_from_json(const Json& j, const Field& F);

Json mat2_to_json(const Mat2& m, MatMode mode);
Mat2 mat2_from_json(const Json& j, const Field& F);

Json mat4_to_json(const Mat4& m);
Mat4 mat4_from_json(const Json& j, const Field& F);

Json structure_to_json(const Psl2Structure& s);
Json structure_to_json(const SzStructure& s);

using LoadedStructure = std::variant<Psl2Structure, SzStructure>;
/// Accepts either a bare structure object or a {"structure": ...} envelope.
LoadedStructure structure_from_json(const Json& j);

Json report_to_json(const VerificationReport& rep, const Field* F);
Json recipe_choice_to_json(const RecipeChoice& c);
Json table1_row_to_json(const Table1Row& r);
Json suzuki_order_data_to_json(const SuzukiOrderData& d);
Json ree_order_data_to_json(const ReeOrderData& d);

Json proj_point_to_json(const ProjPoint& p);

}  // namespace bvl
