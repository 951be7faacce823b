"""Exception hierarchy shared by every module of the package."""


class VcycError(Exception):
    """Base class; ``kind`` is the stable name used in JSON error payloads."""

    kind = "VcycError"

    def __init__(self, message="", **details):
        super().__init__(message)
        self.details = details

    def payload(self):
        out = {"type": self.kind, "message": str(self)}
        out.update(self.details)
        return out


def _make(name, doc):
    return type(name, (VcycError,), {"kind": name, "__doc__": doc})


CapExceeded = _make("CapExceeded", "A brute-force routine was asked to exceed a configured cap.")
NotNormal = _make("NotNormal", "A subgroup required to be normal is not.")
OwnerMismatch = _make("OwnerMismatch", "Elements of different groups were combined.")
TypeMismatch = _make("TypeMismatch", "A type I group was required and a type II one given, or vice versa.")
InvalidGroup = _make("InvalidGroup", "Group data violates a structural invariant.")
InvalidHom = _make("InvalidHom", "A proposed homomorphism does not respect the relations of its source.")
ShapeMismatch = _make("ShapeMismatch", "Morphism or matrix shapes do not line up.")
FilterViolation = _make("FilterViolation", "A morphism key fails the filter of its index category.")
NoIsoAvailable = _make("NoIsoAvailable", "No isomorphism connects the requested base objects.")
NotAFunctor = _make("NotAFunctor", "Functor data failed validation on sampled composable pairs.")
NotNatural = _make("NotNatural", "Coefficient data is not a natural transformation.")
LiftMismatch = _make("LiftMismatch", "The given element does not project to the chosen generator.")
UnknownDiagram = _make("UnknownDiagram", "No built-in diagram has the requested name.")
NotMonoidCat = _make("NotMonoidCat", "Operation needs a one-object index category.")
RingMismatch = _make("RingMismatch", "Elements of different rings were combined.")
TwistMismatch = _make("TwistMismatch", "The twist of a polynomial ring is not the expected automorphism.")
ParseError = _make("ParseError", "Malformed input file.")
