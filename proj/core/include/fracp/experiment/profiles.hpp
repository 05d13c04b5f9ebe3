#pragma once

#include "fracp/experiment/config.hpp"
#include "fracp/field.hpp"
#include "fracp/order_field.hpp"

namespace fracp::experiment {

VarOrderField make_order(const OrderSpec& spec);

/// Samples a data profile at the interior nodes. The inverse-power profile
/// clamps |x - center| below a quarter of the smallest cell width so a node
/// sitting on the singularity stays finite.
Field make_profile(const ProfileSpec& spec, const GridPtr& grid);

}  // namespace fracp::experiment
