#pragma once

#include "deltakit/modforms.hpp"

namespace deltakit::cli {

/// Built-in forms with coefficients up to 4000 (Delta stops at its int64
/// limit), generated once.
inline const modforms::Newform& builtinForm(modforms::FormId id) {
  static const modforms::Newform forms[] = {
      modforms::Newform::builtin(modforms::FormId::Delta_1_12, 4000),
      modforms::Newform::builtin(modforms::FormId::E8_2_8, 4000),
      modforms::Newform::builtin(modforms::FormId::E6_3_6, 4000),
      modforms::Newform::builtin(modforms::FormId::E4_5_4, 4000),
      modforms::Newform::builtin(modforms::FormId::E2_11_2, 4000)};
  return forms[static_cast<int>(id)];
}

}  // namespace deltakit::cli
