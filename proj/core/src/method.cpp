#include "trustcf/method.hpp"

#include <algorithm>
#include <cctype>
#include <string>

#include "trustcf/errors.hpp"

namespace trustcf {

MethodConfig MethodConfig::make(MethodId id, double alpha) {
    if (!(alpha >= 0.0 && alpha <= 1.0)) {
        throw ConfigError("alpha must lie in [0, 1], got " + std::to_string(alpha));
    }
    using enum TrustFormula;
    switch (id) {
        case MethodId::CF: return {id, Fusion::None, TrustSource::None, std::nullopt, alpha};
        case MethodId::ETaCF_I: return {id, Fusion::IW, TrustSource::ExplicitOnly, std::nullopt, alpha};
        case MethodId::ETaCF_II: return {id, Fusion::LW, TrustSource::ExplicitOnly, std::nullopt, alpha};
        case MethodId::DTaCF: return {id, Fusion::LW, TrustSource::InferredNoJaccard, Plain, alpha};
        case MethodId::ITrace_I: return {id, Fusion::IW, TrustSource::Inferred, Attenuated, alpha};
        case MethodId::ITrace_II: return {id, Fusion::IW, TrustSource::Inferred, Plain, alpha};
        case MethodId::ITrace_III: return {id, Fusion::LW, TrustSource::Inferred, Attenuated, alpha};
        case MethodId::ITrace_IV: return {id, Fusion::LW, TrustSource::Inferred, Plain, alpha};
    }
    throw ConfigError("unknown method");
}

std::string_view to_string(MethodId id) {
    switch (id) {
        case MethodId::CF: return "CF";
        case MethodId::ETaCF_I: return "E-TaCF-I";
        case MethodId::ETaCF_II: return "E-TaCF-II";
        case MethodId::DTaCF: return "D-TaCF";
        case MethodId::ITrace_I: return "iTrace-I";
        case MethodId::ITrace_II: return "iTrace-II";
        case MethodId::ITrace_III: return "iTrace-III";
        case MethodId::ITrace_IV: return "iTrace-IV";
    }
    return "?";
}

MethodId parse_method(std::string_view name) {
    auto lower = [](std::string_view s) {
        std::string out(s);
        std::transform(out.begin(), out.end(), out.begin(),
                       [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
        return out;
    };
    auto wanted = lower(name);
    for (auto id : kAllMethods) {
        if (lower(to_string(id)) == wanted) return id;
    }
    throw ConfigError("unknown method '" + std::string(name) + "'");
}

bool is_reconstruction(MethodId id) { return id == MethodId::DTaCF; }

std::string_view to_string(Fusion f) {
    switch (f) {
        case Fusion::None: return "none";
        case Fusion::IW: return "IW";
        case Fusion::LW: return "LW";
    }
    return "?";
}

std::string_view to_string(TrustSource s) {
    switch (s) {
        case TrustSource::None: return "none";
        case TrustSource::ExplicitOnly: return "explicit-only";
        case TrustSource::Inferred: return "inferred";
        case TrustSource::InferredNoJaccard: return "inferred-no-jaccard";
    }
    return "?";
}

}  // namespace trustcf
