"""Exception hierarchy.

InputError covers malformed user input (bad JSON, invalid polygons) and maps
to CLI exit code 2.  MathError covers violated mathematical preconditions
(non-simplicial fans, unbounded regions, torsion) and maps to exit code 3.
"""


class FanokitError(Exception):
    pass


class InputError(FanokitError):
    pass


class NonPrimitiveVertex(InputError):
    pass


class OriginNotInterior(InputError):
    pass


class NotConvex(InputError):
    pass


class SchemaError(InputError):
    pass


class MathError(FanokitError):
    pass


class NonSimplicial(MathError):
    pass


class Unbounded(MathError):
    pass


class CorankError(MathError):
    pass


class TorsionClassGroup(MathError):
    pass
