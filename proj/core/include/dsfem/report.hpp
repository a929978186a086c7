#pragma once

#include <string>
#include <vector>

#include "dsfem/analysis.hpp"

namespace dsfem {

/// Columns family,element,variant,r,n,dofs,e_l2,rate_l2,e_h1,rate_h1.
/// Rates are left empty on the first row of a sequence.
std::string galerkin_csv(const std::vector<GalerkinRow>& rows);
/// Columns family,variant,r,n,dofs,e_p,rate_p,e_u,rate_u,e_div,rate_div.
std::string mixed_csv(const std::vector<MixedRow>& rows);

std::string galerkin_markdown(const std::vector<GalerkinRow>& rows);
std::string mixed_markdown(const std::vector<MixedRow>& rows);

}  // namespace dsfem
