#pragma once

#include <array>
#include <optional>
#include <string_view>

#include "trustcf/trust_inference.hpp"

namespace trustcf {

enum class MethodId {
    CF,
    ETaCF_I,
    ETaCF_II,
    DTaCF,
    ITrace_I,
    ITrace_II,
    ITrace_III,
    ITrace_IV,
};

/// How similarity and trust are combined into voting weights.
enum class Fusion {
    None,  ///< similarity only
    IW,    ///< incremental: sim * t, normalised
    LW,    ///< linear: alpha * sim/Σsim + (1 - alpha) * t/Σt
};

enum class TrustSource {
    None,
    ExplicitOnly,       ///< t = 1 for explicit statements, 0 otherwise
    Inferred,           ///< shortest paths over explicit + Jaccard edges
    InferredNoJaccard,  ///< shortest paths over explicit edges only
};

inline constexpr double kDefaultAlpha = 0.3;

struct MethodConfig {
    MethodId id = MethodId::CF;
    Fusion fusion = Fusion::None;
    TrustSource source = TrustSource::None;
    std::optional<TrustFormula> formula;
    double alpha = kDefaultAlpha;  ///< used by LW only

    /// Canonical configuration of one of the eight comparison methods.
    static MethodConfig make(MethodId id, double alpha = kDefaultAlpha);

    bool uses_alpha() const noexcept { return fusion == Fusion::LW; }

    bool operator==(const MethodConfig&) const = default;
};

inline constexpr std::array<MethodId, 8> kAllMethods{
    MethodId::CF,       MethodId::ETaCF_I,   MethodId::ETaCF_II,   MethodId::DTaCF,
    MethodId::ITrace_I, MethodId::ITrace_II, MethodId::ITrace_III, MethodId::ITrace_IV,
};

/// "CF", "E-TaCF-I", ..., "iTrace-IV".
std::string_view to_string(MethodId id);
/// Case-insensitive; throws ConfigError for unknown names.
MethodId parse_method(std::string_view name);

/// True for methods whose internals are a reconstruction rather than a
/// published definition (D-TaCF).
bool is_reconstruction(MethodId id);

std::string_view to_string(Fusion f);
std::string_view to_string(TrustSource s);

}  // namespace trustcf
