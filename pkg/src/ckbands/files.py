"""Reading diagram files and the shipped sample library.

A PD file is line-oriented: each non-blank, non-comment line is
``PD: X(a,b,c,d) ...`` with an optional leading ``name<TAB>``.  Parse
and validation problems surface as :class:`PdFileError` carrying the
1-based line number.
"""

from __future__ import annotations

from dataclasses import dataclass
from importlib import resources
from typing import List, Optional

from .diagram import DiagramError, PlanarDiagram, parse_pd, validate

__all__ = ["PdFileError", "PdEntry", "read_pd_text", "read_pd_file", "sample_library"]


class PdFileError(ValueError):
    def __init__(self, lineno: int, message: str):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


@dataclass(frozen=True)
class PdEntry:
    lineno: int
    name: Optional[str]
    diagram: PlanarDiagram


def read_pd_text(text: str) -> List[PdEntry]:
    out = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        name: Optional[str] = None
        body = line
        if "\t" in line:
            name, body = line.split("\t", 1)
            name = name.strip()
            body = body.strip()
        try:
            d = parse_pd(body)
        except DiagramError as exc:
            raise PdFileError(lineno, str(exc)) from exc
        errs = validate(d)
        if errs:
            raise PdFileError(lineno, "; ".join(errs))
        out.append(PdEntry(lineno, name, d))
    return out


def read_pd_file(path) -> List[PdEntry]:
    with open(path, encoding="utf-8") as fh:
        return read_pd_text(fh.read())


def sample_library() -> "dict[str, PlanarDiagram]":
    """The shipped sample knots, by name, in file order."""
    text = resources.files("ckbands").joinpath("data/samples.pd").read_text("utf-8")
    out = {}
    for entry in read_pd_text(text):
        assert entry.name, "sample entries are always named"
        out[entry.name] = entry.diagram
    return out
