#pragma once

#include <string_view>

namespace dri::extract::assets {

extern const std::string_view kDecompose;
extern const std::string_view kAnalyzeBqa;
extern const std::string_view kAnalyzeMcqa;

}  // namespace dri::extract::assets
