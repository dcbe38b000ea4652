#pragma once

#include <stdexcept>
#include <string>

namespace ssfol {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

#define SSFOL_DEFINE_ERROR(Name)                                               \
    struct Name : Error {                                                      \
        using Error::Error;                                                    \
    }

// geometry
SSFOL_DEFINE_ERROR(DependentBasis);
SSFOL_DEFINE_ERROR(UnsupportedDim);
SSFOL_DEFINE_ERROR(ZeroDeterminant);

// systems
SSFOL_DEFINE_ERROR(BadParams);
SSFOL_DEFINE_ERROR(OrbitEscape);
SSFOL_DEFINE_ERROR(NonInjectiveDerivative);

// spectrum
SSFOL_DEFINE_ERROR(NoSpectralGap);
SSFOL_DEFINE_ERROR(IllConditionedProjector);

// charts
SSFOL_DEFINE_ERROR(LeftChart);
SSFOL_DEFINE_ERROR(HyperbolicityViolation);

// manifolds
SSFOL_DEFINE_ERROR(NoConvergence);
SSFOL_DEFINE_ERROR(NotInvertible);
SSFOL_DEFINE_ERROR(DomainShortfall);

// holonomy
SSFOL_DEFINE_ERROR(ChartSwitchFailure);
SSFOL_DEFINE_ERROR(NoIntersection);
SSFOL_DEFINE_ERROR(AmbiguousLeaf);
SSFOL_DEFINE_ERROR(OffManifold);
SSFOL_DEFINE_ERROR(NonCauchy);

// cli / verify
SSFOL_DEFINE_ERROR(ConfigError);

#undef SSFOL_DEFINE_ERROR

} // namespace ssfol
