"""Exception types shared across the toolkit."""

from .syntax import LexError, ParseError, SyntaxProblem  # noqa: F401


class ReasoningError(Exception):
    pass


class UnsupportedFeature(ReasoningError):
    """A construct outside the SHIN tier reached the reasoner (nominals, datatypes, ...)."""

    def __init__(self, feature: str, detail: str = ""):
        self.feature = feature
        super().__init__(f"unsupported feature: {feature}" + (f" ({detail})" if detail else ""))


class ResourceLimit(ReasoningError):
    def __init__(self, what: str, limit: int):
        self.what = what
        self.limit = limit
        super().__init__(f"resource limit exceeded: {what} > {limit}")


class InconsistentKB(ReasoningError):
    def __init__(self, result=None):
        self.result = result
        super().__init__("knowledge base is inconsistent")


class ImportError_(Exception):
    """Base for import-closure failures (named to avoid the builtin)."""


class MissingImport(ImportError_):
    def __init__(self, iri: str, importer: str | None = None, location=None):
        self.iri = iri
        self.importer = importer
        self.location = location  # (file, line) of the Import clause, when known
        where = f" (imported by {importer})" if importer else ""
        super().__init__(f"no catalog entry for <{iri}>{where}")


class ImportCycle(ImportError_):
    def __init__(self, path: list, location=None):
        self.path = list(path)
        self.location = location
        super().__init__("import cycle: " + " -> ".join(self.path))


class CorpusCorrupt(Exception):
    pass
