#include "dcmwalk/learn/variant.hpp"

#include <stdexcept>

namespace dcmwalk::learn {

const char* variant_name(Variant v) {
  switch (v) {
    case Variant::kBase:
      return "base";
    case Variant::kOracle:
      return "oracle";
    case Variant::kMBC:
      return "mbc";
    case Variant::kBOR:
      return "bor";
    case Variant::kOR:
      return "or";
    case Variant::kResRL:
      return "resrl";
    case Variant::kIL:
      return "il";
  }
  return "?";
}

Variant parse_variant(const std::string& name) {
  if (name == "base") return Variant::kBase;
  if (name == "oracle") return Variant::kOracle;
  if (name == "mbc") return Variant::kMBC;
  if (name == "bor") return Variant::kBOR;
  if (name == "or") return Variant::kOR;
  if (name == "resrl") return Variant::kResRL;
  if (name == "il") return Variant::kIL;
  throw std::invalid_argument("unknown variant: " + name);
}

}  // namespace dcmwalk::learn
