"""Bundled group definitions and certificate suites."""

from __future__ import annotations

from importlib import resources

from ..certify import Certificate
from ..core import EngineError, GroupDef
from ..formats import parse_certificate, parse_group_file

__all__ = [
    "CERTIFICATES",
    "GROUPS",
    "corpus_text",
    "load_certificate",
    "load_group",
]

GROUPS = ("grigorchuk", "basilica", "odometer")
CERTIFICATES = ("grigorchuk_nea", "basilica_nea", "basilica_growth")


def corpus_text(filename: str) -> str:
    resource = resources.files(__package__).joinpath(filename)
    if not resource.is_file():
        raise EngineError(f"no bundled file named {filename!r}")
    return resource.read_text()


def load_group(name: str) -> GroupDef:
    if name not in GROUPS:
        raise EngineError(f"no bundled group named {name!r}; have {', '.join(GROUPS)}")
    return parse_group_file(corpus_text(f"{name}.agt"))


def load_certificate(name: str) -> Certificate:
    if name not in CERTIFICATES:
        raise EngineError(
            f"no bundled certificate named {name!r}; have {', '.join(CERTIFICATES)}"
        )
    return parse_certificate(corpus_text(f"{name}.cert"))
