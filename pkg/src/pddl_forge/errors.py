"""Exception types raised across the package.

Parsing never raises for malformed PDDL; those problems are reported as
diagnostics. The exceptions below cover API misuse and environment failures.
"""


class PddlForgeError(Exception):
    """Base class for every error raised by pddl_forge."""


class InvalidEncoding(PddlForgeError, ValueError):
    pass


class IncompleteAst(PddlForgeError, ValueError):
    """Printing was requested for an AST that still holds error placeholders."""


class UnknownFormat(PddlForgeError, ValueError):
    pass


# type hierarchy

class HierarchyError(PddlForgeError, ValueError):
    pass


class CyclicTypes(HierarchyError):
    def __init__(self, cycle):
        self.cycle = list(cycle)
        super().__init__("cyclic type declarations: " + " -> ".join(self.cycle))


class EitherParentUnsupported(HierarchyError):
    def __init__(self, types):
        self.types = list(types)
        super().__init__(
            "(either ...) parent types cannot be drawn as a tree: "
            + ", ".join(self.types)
        )


class RendererNotFound(PddlForgeError):
    pass


class RendererFailed(PddlForgeError):
    def __init__(self, message, stderr=""):
        self.stderr = stderr
        super().__init__(message if not stderr else f"{message}\n{stderr}")


class IoFailure(PddlForgeError, OSError):
    pass


# scaffold

class AlreadyExists(PddlForgeError, FileExistsError):
    pass


class InvalidName(PddlForgeError, ValueError):
    pass


# distance

class DistanceError(PddlForgeError, ValueError):
    pass


class PartialCoordinates(DistanceError):
    def __init__(self, obj, axis):
        self.obj = obj
        self.axis = axis
        super().__init__(f"object {obj!r} has coordinates but no {axis} value")


class DuplicateCoordinate(DistanceError):
    def __init__(self, obj, function):
        self.obj = obj
        self.function = function
        super().__init__(f"({function} {obj}) is assigned more than once")


class MixedDimensionality(DistanceError):
    pass


class ExistingDistances(DistanceError):
    pass


# snippets

class UnknownSnippet(PddlForgeError, KeyError):
    def __str__(self):
        return Exception.__str__(self)


class InvalidPlaceholderValue(PddlForgeError, ValueError):
    pass


# cli

class ConfigError(PddlForgeError, ValueError):
    pass
