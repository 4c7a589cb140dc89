#ifndef FT_ERRORS_HPP
#define FT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace ft {

// Root of every failure this library raises on purpose. Each subclass carries the
// name used in diagnostics and run records.
struct FtError : std::runtime_error {
    explicit FtError(const std::string& what_arg) : std::runtime_error(what_arg) {}
};

#define FT_DEFINE_ERROR(Name)                                              \
    struct Name : FtError {                                                \
        explicit Name(const std::string& m = "") : FtError(#Name + (m.empty() ? std::string{} : ": " + m)) {} \
    }

// pointwise algebra
FT_DEFINE_ERROR(NotStrictlyHyperbolic);
FT_DEFINE_ERROR(NotAdmissible);
FT_DEFINE_ERROR(LopatinskiFailure);
FT_DEFINE_ERROR(DegenerateJacobian);

// moving grids
FT_DEFINE_ERROR(JacobianDegeneracy);
FT_DEFINE_ERROR(FrontExcursionTooLarge);

// time stepping and boundary closures
FT_DEFINE_ERROR(CflViolation);
FT_DEFINE_ERROR(PhaseBoxExit);
FT_DEFINE_ERROR(ClosureFailure);
FT_DEFINE_ERROR(WrongCharacteristicCount);
FT_DEFINE_ERROR(NewtonDivergence);
FT_DEFINE_ERROR(InsufficientStencil);

// fronts and contacts
FT_DEFINE_ERROR(DegenerateContact);
FT_DEFINE_ERROR(SingularA);
FT_DEFINE_ERROR(SubsonicityLoss);
FT_DEFINE_ERROR(Nu2LopatinskiLoss);

// two-sided problems
FT_DEFINE_ERROR(SingularLopatinski);
FT_DEFINE_ERROR(ZeroJump);
FT_DEFINE_ERROR(RegimeChange);

// floating body
FT_DEFINE_ERROR(DryInterior);
FT_DEFINE_ERROR(RotationOutOfRange);
FT_DEFINE_ERROR(ContactCollision);
FT_DEFINE_ERROR(LidOverrun);

// scenario I/O
FT_DEFINE_ERROR(ParseError);
FT_DEFINE_ERROR(ValidationError);

#undef FT_DEFINE_ERROR

} // namespace ft

#endif
