"""Error types shared by every module.

Each class carries ``name``, the identifier printed by the command line
front end on the diagnostic stream.
"""


class OrdlabError(Exception):
    name = "OrdlabError"


class UniverseTooLarge(OrdlabError):
    name = "UniverseTooLarge"


class LiteralError(OrdlabError, ValueError):
    name = "LiteralError"


class InvalidBijection(OrdlabError, ValueError):
    name = "InvalidBijection"


class NotInImage(OrdlabError, ValueError):
    name = "NotInImage"


class NotAChain(OrdlabError, ValueError):
    name = "NotAChain"


class InvalidTree(OrdlabError, ValueError):
    name = "InvalidTree"


class NotInclusionOrdered(OrdlabError, ValueError):
    name = "NotInclusionOrdered"


class DepthGuard(OrdlabError, ValueError):
    name = "DepthGuard"


class EqualNodes(OrdlabError, ValueError):
    name = "EqualNodes"


class NotMonochromatic(OrdlabError, ValueError):
    name = "NotMonochromatic"


class NotHeightInjective(OrdlabError, ValueError):
    name = "NotHeightInjective"


class FormulaSyntaxError(OrdlabError, ValueError):
    name = "SyntaxError"

    def __init__(self, message, position):
        super().__init__(f"{message} at offset {position}")
        self.position = position


class UnboundVariable(OrdlabError, KeyError):
    name = "UnboundVariable"

    def __str__(self):
        return Exception.__str__(self)


class NotDefinableWithinBound(OrdlabError):
    name = "NotDefinableWithinBound"
