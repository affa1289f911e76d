"""
Obstruction catalog.

Entries are either fixed graphs matched by certificate, built-in predicates
referenced by name, or ``pending`` placeholders for patterns whose data has
not been transcribed yet. File format::

    entry <name>
    kind <ObstructionKind value>
    source: <free text, repeatable>
    genus <g>                      (optional)
    graph | predicate <name> | pending
    ... graph lines ...
    end
"""

import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Dict, List, Optional, Tuple

from troplanar.errors import CatalogMissing, ParseError
from troplanar.formats import parse_graph
from troplanar.graphs import Multigraph, Skeleton
from troplanar.obstructions import Obstruction, ObstructionKind, is_crowded

logger = logging.getLogger(__name__)

FIXTURES = Path(__file__).resolve().parent / "fixtures"
DEFAULT_CATALOG = FIXTURES / "catalog.txt"

PREDICATES: Dict[str, Callable[[Multigraph], bool]] = {
    "crowded": is_crowded,
}
REQUIRED = ("enve-loop", "crowded", "tie-fighter")
STATUSES = ("graph", "predicate", "pending")


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    kind: ObstructionKind
    status: str
    sources: Tuple[str, ...] = ()
    graph: Optional[Skeleton] = None
    predicate: Optional[str] = None
    genus: Optional[int] = None

    def applies_to(self, genus: int) -> bool:
        return self.genus is None or self.genus == genus

    def matches(self, g: Skeleton) -> bool:
        if self.status == "graph" and self.graph is not None:
            return self.graph.certificate == g.certificate
        if self.status == "predicate" and self.predicate is not None:
            return PREDICATES[self.predicate](g)
        return False


@dataclass(frozen=True)
class Catalog:
    entries: Tuple[CatalogEntry, ...]

    def names(self) -> List[str]:
        return [e.name for e in self.entries]

    def get(self, name: str) -> CatalogEntry:
        for e in self.entries:
            if e.name == name:
                return e
        raise CatalogMissing(f"catalog has no entry '{name}'", name)

    def require(self, names=REQUIRED) -> None:
        missing = [n for n in names if n not in self.names()]
        if missing:
            raise CatalogMissing(f"catalog is missing required entries: {', '.join(missing)}", missing)

    def pending(self, genus: int) -> List[CatalogEntry]:
        return [e for e in self.entries if e.status == "pending" and e.applies_to(genus)]


def parse_catalog(text: str, source: Optional[str] = None) -> Catalog:
    raw = text.splitlines()
    entries = []
    i = 0

    def fail(message: str, line: int) -> ParseError:
        return ParseError(message, line + 1, 1, source)

    while i < len(raw):
        words = raw[i].split("#", 1)[0].split()
        if not words:
            i += 1
            continue
        if words[0] != "entry" or len(words) != 2:
            raise fail(f"expected 'entry <name>', got '{raw[i].strip()}'", i)
        name, start = words[1], i
        kind = None
        status = None
        sources: List[str] = []
        genus = None
        predicate = None
        graph = None
        i += 1
        while i < len(raw):
            line = raw[i]
            if line.strip().startswith("source:"):
                sources.append(line.strip()[len("source:"):].strip())
                i += 1
                continue
            words = line.split("#", 1)[0].split()
            if not words:
                i += 1
                continue
            key = words[0]
            if key == "end":
                break
            if key == "kind" and len(words) == 2:
                try:
                    kind = ObstructionKind(words[1])
                except ValueError:
                    raise fail(f"unknown obstruction kind '{words[1]}'", i) from None
            elif key == "genus" and len(words) == 2 and words[1].isdigit():
                genus = int(words[1])
            elif key == "pending":
                status = "pending"
            elif key == "predicate" and len(words) == 2:
                if words[1] not in PREDICATES:
                    raise fail(f"unknown predicate '{words[1]}'", i)
                status, predicate = "predicate", words[1]
            elif key == "graph":
                end = i
                while end < len(raw) and raw[end].split("#", 1)[0].strip() != "end":
                    end += 1
                padded = "\n".join(raw[j] if i <= j < end else "" for j in range(len(raw)))
                parsed = parse_graph(padded, source)
                if not isinstance(parsed, Skeleton):
                    raise fail("catalog graphs must be trivalent", i)
                status, graph = "graph", parsed
                i = end
                break
            else:
                raise fail(f"unexpected '{line.strip()}' in entry '{name}'", i)
            i += 1
        else:
            raise fail(f"entry '{name}' is not closed with 'end'", start)
        if kind is None or status is None:
            raise fail(f"entry '{name}' needs a kind and one of {STATUSES}", start)
        entries.append(CatalogEntry(name, kind, status, tuple(sources), graph, predicate, genus))
        i += 1
    return Catalog(tuple(entries))


def load_catalog(path: Optional[Path] = None) -> Catalog:
    path = path or DEFAULT_CATALOG
    catalog = parse_catalog(path.read_text(), str(path))
    logger.debug(f"Loaded {len(catalog.entries)} catalog entries from {path}")
    return catalog


def detect_catalog(
    g: Skeleton,
    catalog: Catalog,
    kinds: Optional[Tuple[ObstructionKind, ...]] = None,
    require: bool = True,
) -> Optional[Obstruction]:
    """First applicable entry matching g, in catalog order.

    With ``require`` a catalog lacking any of the required entries raises
    CatalogMissing; without it the entries present are used as they are.
    """
    if require:
        catalog.require()
    for entry in catalog.entries:
        if kinds is not None and entry.kind not in kinds:
            continue
        if not entry.applies_to(g.genus):
            continue
        if entry.matches(g):
            return Obstruction(entry.kind, {"entry": entry.name, "sources": list(entry.sources)})
    return None
