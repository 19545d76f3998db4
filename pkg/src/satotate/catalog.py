"""Named groups and representations.

Finite subgroups of SU(2) ship as JSON data files (one per group, with a
sha256 checksum) in ``catalog_data/``; ``STM_CATALOG_DIR`` overrides the
directory.  The loader re-validates every file instead of trusting it.

Parametric and continuous entries are built in code:

* ``cyclic(n)``: Z/n acting on C by the weight-1 character;
* ``u1-wt1``, ``u<n>-std``, ``su<n>-std``, ``torus<r>-std``;
* ``torus_normalizer_su2``: the normalizer of the maximal torus of SU(2) is
  infinite and disconnected and cannot be represented by class data.  It is
  approximated by ``binary_dihedral(120)``, the largest binary dihedral group
  shipped.  The approximation is not exact.
"""

from __future__ import annotations

import hashlib
import json
import os
import re
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable

from .errors import CatalogError, SpecError
from .groups import (
    ClassDatum,
    FiniteClasses,
    FiniteGiven,
    GroupSpec,
    RepSpec,
    SpecialUnitary,
    Std,
    Torus,
    TorusWeights,
    Unitary,
    cyclic,
    is_self_dual_classes,
)

DATA_DIR = Path(__file__).with_name("catalog_data")
FORMAT_VERSION = 1
MAX_DIHEDRAL_N = 30

BUILTIN_CONTINUOUS = ("u1-wt1", "u2-std", "u3-std", "su2-std", "su3-std")
POLYHEDRAL = ("binary_tetrahedral", "binary_octahedral", "binary_icosahedral")
ALIASES = {"2t": "binary_tetrahedral", "2o": "binary_octahedral", "2i": "binary_icosahedral"}
NORMALIZER = "torus_normalizer_su2"
NORMALIZER_NOTE = (
    "approximation: N(T) in SU(2) is infinite; binary_dihedral(120) stands in for it "
    "(the binary dihedral groups converge to N(T) as n grows)"
)


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    group: GroupSpec
    rep: RepSpec
    note: str = ""

    @property
    def pair(self) -> tuple[GroupSpec, RepSpec]:
        return self.group, self.rep


def catalog_dir() -> Path:
    env = os.environ.get("STM_CATALOG_DIR")
    return Path(env) if env else DATA_DIR


# ---------------------------------------------------------------- file format


def _payload_digest(payload: dict) -> str:
    body = {k: v for k, v in payload.items() if k != "checksum"}
    canon = json.dumps(body, sort_keys=True, separators=(",", ":"))
    return "sha256:" + hashlib.sha256(canon.encode()).hexdigest()


def write_entry(path: Path, entry: dict) -> None:
    payload = {"format_version": FORMAT_VERSION, **entry}
    payload["checksum"] = _payload_digest(payload)
    tmp = path.with_suffix(path.suffix + ".tmp")
    tmp.write_text(json.dumps(payload, indent=1) + "\n")
    os.replace(tmp, path)


def parse_entry(payload: dict, source: str = "<data>") -> FiniteClasses:
    """Validate one catalog payload and build its FiniteClasses."""
    for key in ("format_version", "name", "order", "modulus", "classes", "checksum"):
        if key not in payload:
            raise CatalogError(f"missing field {key!r}", source)
    if payload["format_version"] != FORMAT_VERSION:
        raise CatalogError(f"unsupported format_version {payload['format_version']!r}", source)
    if payload["checksum"] != _payload_digest(payload):
        raise CatalogError("checksum mismatch (file edited without regeneration?)", source)
    try:
        classes = tuple(ClassDatum(int(c["size"]), tuple(int(e) for e in c["exponents"])) for c in payload["classes"])
        return FiniteClasses(int(payload["modulus"]), classes, int(payload["order"]), name=str(payload["name"]))
    except (KeyError, TypeError, ValueError) as exc:
        raise CatalogError(f"inconsistent class data: {exc}", source) from exc


def read_entry(path: Path) -> FiniteClasses:
    try:
        payload = json.loads(path.read_text())
    except FileNotFoundError as exc:
        raise CatalogError("catalog file not found", str(path)) from exc
    except json.JSONDecodeError as exc:
        raise CatalogError(f"malformed JSON at line {exc.lineno} column {exc.colno}: {exc.msg}", str(path)) from exc
    g = parse_entry(payload, path.name)
    expected = file_for(g.name)
    if path.name != expected:
        raise CatalogError(f"file name does not match entry name {g.name!r}", str(path))
    return g


def file_for(label: str) -> str:
    return label.replace("(", "_").replace(")", "") + ".json"


# ---------------------------------------------------------------- names


_CYCLIC = re.compile(r"^cyclic[(_-]?(\d+)\)?$")
_DIHEDRAL = re.compile(r"^binary_dihedral[(_-]?(\d+)\)?$")
_UNITARY = re.compile(r"^(s?u)(\d+)-std$")
_TORUS = re.compile(r"^torus(\d+)-std$")


def normalize_name(name: str) -> str:
    key = name.strip().lower().replace(" ", "")
    key = ALIASES.get(key, key)
    m = _CYCLIC.match(key)
    if m:
        return f"cyclic({int(m.group(1))})"
    m = _DIHEDRAL.match(key)
    if m:
        return f"binary_dihedral({int(m.group(1))})"
    return key


def _finite_file(label: str) -> FiniteClasses:
    path = catalog_dir() / file_for(label)
    if not path.exists():
        raise CatalogError(f"unknown catalog entry {label!r} (no data file {path.name})")
    return read_entry(path)


def load(name: str) -> CatalogEntry:
    """Resolve a catalog name to a validated (group, representation) entry."""
    key = normalize_name(name)
    if key == "u1-wt1":
        return CatalogEntry(key, Torus(1), TorusWeights([(1,)]))
    m = _CYCLIC.match(key)
    if m:
        n = int(m.group(1))
        if n < 1:
            raise CatalogError(f"cyclic(n) needs n >= 1, got {n}")
        return CatalogEntry(key, cyclic(n), FiniteGiven())
    m = _UNITARY.match(key)
    if m:
        n = int(m.group(2))
        try:
            grp = Unitary(n) if m.group(1) == "u" else SpecialUnitary(n)
        except SpecError as exc:
            raise CatalogError(str(exc)) from exc
        if n == 1:
            return CatalogEntry(key, Torus(1), TorusWeights([(1,)]), note="U(1) Std is the weight-1 torus")
        return CatalogEntry(key, grp, Std())
    m = _TORUS.match(key)
    if m:
        r = int(m.group(1))
        if r < 1:
            raise CatalogError("torus rank must be positive")
        return CatalogEntry(key, Torus(r), TorusWeights([tuple(int(i == j) for j in range(r)) for i in range(r)]))
    if key == NORMALIZER:
        g = _finite_file(f"binary_dihedral({4 * MAX_DIHEDRAL_N})")
        return CatalogEntry(key, g, FiniteGiven(), note=NORMALIZER_NOTE)
    if key in POLYHEDRAL or _DIHEDRAL.match(key):
        return CatalogEntry(key, _finite_file(key), FiniteGiven())
    raise CatalogError(f"unknown catalog entry {name!r}")


def catalog_load(name: str) -> tuple[GroupSpec, RepSpec]:
    return load(name).pair


def dihedral_names(max_n: int = MAX_DIHEDRAL_N) -> list[str]:
    return [f"binary_dihedral({4 * n})" for n in range(1, max_n + 1)]


def su2_finite_names() -> list[str]:
    """Every shipped finite subgroup of SU(2): binary dihedral, 2T, 2O, 2I."""
    return dihedral_names() + list(POLYHEDRAL)


def catalog_names(cyclic_range: Iterable[int] = range(1, 13)) -> list[str]:
    """Concrete entry names: built-ins, shipped files, the normalizer stand-in, and a cyclic sample."""
    return list(BUILTIN_CONTINUOUS) + [f"cyclic({n})" for n in cyclic_range] + su2_finite_names() + [NORMALIZER]


def subgroup_pairs() -> list[tuple[str, str]]:
    """Recorded (subgroup, ambient) pairs; the representation of the ambient group restricts to the subgroup's."""
    pairs = [(f"cyclic({n})", "u1-wt1") for n in range(1, 13)]
    pairs += [(f"cyclic({d})", f"cyclic({n})") for n in range(2, 13) for d in range(1, n) if n % d == 0]
    pairs += [(h, "su2-std") for h in su2_finite_names()]
    pairs += [("su2-std", "u2-std")]
    pairs += [(f"binary_dihedral({4 * n})", f"binary_dihedral({8 * n})") for n in range(1, MAX_DIHEDRAL_N // 2 + 1)]
    pairs += [
        ("binary_dihedral(8)", "binary_tetrahedral"),
        ("binary_tetrahedral", "binary_octahedral"),
        ("binary_tetrahedral", "binary_icosahedral"),
        ("binary_dihedral(16)", "binary_octahedral"),
        ("binary_dihedral(12)", "binary_octahedral"),
        ("binary_dihedral(12)", "binary_icosahedral"),
        ("binary_dihedral(20)", "binary_icosahedral"),
    ]
    return pairs


def verify_catalog(directory: Path | None = None) -> list[tuple[str, bool, str]]:
    """Re-run every data-file invariant; one (file, ok, message) row per file."""
    d = directory or catalog_dir()
    rows = []
    files = sorted(d.glob("*.json"))
    if not files:
        return [(str(d), False, "no catalog files found")]
    for path in files:
        try:
            g = read_entry(path)
            if not is_self_dual_classes(g):
                raise CatalogError("exponent multisets are not closed under negation")
            if g.dim != 2:
                raise CatalogError(f"SU(2) subgroup data must be 2-dimensional, got {g.dim}")
            for c in g.classes:
                if (sum(c.exponents) % g.modulus) != 0:
                    raise CatalogError("a class has determinant != 1")
            rows.append((path.name, True, f"order {g.order}, {len(g.classes)} classes"))
        except SpecError as exc:
            rows.append((path.name, False, str(exc)))
    return rows
