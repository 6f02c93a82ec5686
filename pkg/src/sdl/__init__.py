"""A small SHIN description-logic toolkit for Manchester-syntax ontologies."""
from .classify import Taxonomy, classify, entails, unsatisfiable_classes
from .errors import (
    ImportCycle, InconsistentKB, LexError, MissingImport, ParseError, ReasoningError,
    ResourceLimit, UnsupportedFeature,
)
from .kb import Catalog, KnowledgeBase, resolve_imports, signature
from .oracle import enumerate_models, find_model
from .syntax import parse_concept, parse_ontology, render, tokenize
from .tableau import is_consistent, is_satisfiable, subsumes

__version__ = "0.1.0"

__all__ = [
    "Catalog", "ImportCycle", "InconsistentKB", "KnowledgeBase", "LexError", "MissingImport",
    "ParseError", "ReasoningError", "ResourceLimit", "Taxonomy", "UnsupportedFeature",
    "classify", "entails", "enumerate_models", "find_model", "is_consistent",
    "is_satisfiable", "parse_concept", "parse_ontology", "render", "resolve_imports",
    "signature", "subsumes", "tokenize", "unsatisfiable_classes",
]
