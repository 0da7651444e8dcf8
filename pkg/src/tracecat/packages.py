"""Category package files: a line-oriented text format plus shipped builtins.

Format (UTF-8, `#` comments, whitespace-separated decimal integers):

    package <name>
    base su2 <k>              or: base file <ring-name>
    msimples <label> <label> ...
    unit <label>              (only for module tensor categories)
    action <base-label>
    <one row per module simple; row j, column l = mult of m_j in c . m_l>
    ...
    mfusion <x-label> <y-label>
    <one row: multiplicities of x (x) y over the module simples>

A package with a unit and all mfusion blocks loads as ModuleTensorData;
one without mfusion blocks loads as a ModuleAction.  Every invariant is
revalidated on load and violations carry the offending line number.
Committed packages round-trip byte for byte through save_package.
"""

from __future__ import annotations

import os
import re
from pathlib import Path

import numpy as np

from .fusion import FusionRing, verlinde_su2
from .modules import (
    ModuleAction,
    ModuleError,
    ModuleTensorData,
    chebyshev_action,
    regular_module,
    validate_action,
    validate_tensor_data,
)


class PackageError(ValueError):
    """Raised when a package file cannot be parsed or fails validation."""


# -- Dynkin graphs --------------------------------------------------------------


def dynkin_graph(kind: str) -> tuple[tuple[str, ...], np.ndarray]:
    """Labels and adjacency for the graphs used by the shipped packages.

    Labelling follows the trace-table column order: the long arm is
    numbered from the end carrying the unit vertex, fork legs of D-type
    graphs are n-1 and (n-1)', the short leg of E6/E7/E8 comes right
    after its branch vertex, and tadpole graphs T_n carry a loop at the
    far end.
    """
    kind = kind.lower()
    m = re.fullmatch(r"([adet])(\d+)", kind)
    if not m:
        raise PackageError(f"unknown graph {kind!r}")
    family, n = m.group(1), int(m.group(2))

    def adj(count: int, edges: list[tuple[int, int]], loops: tuple[int, ...] = ()):
        a = np.zeros((count, count), dtype=np.int64)
        for u, v in edges:
            a[u, v] = a[v, u] = 1
        for u in loops:
            a[u, u] = 1
        return a

    if family == "a":
        labels = tuple(str(i) for i in range(1, n + 1))
        return labels, adj(n, [(i, i + 1) for i in range(n - 1)])
    if family == "t":
        labels = tuple(str(i) for i in range(1, n + 1))
        return labels, adj(n, [(i, i + 1) for i in range(n - 1)], loops=(n - 1,))
    if family == "d":
        if n < 4:
            raise PackageError("D-type graphs need at least 4 vertices")
        labels = tuple(str(i) for i in range(1, n)) + (f"{n - 1}'",)
        # path 1..n-2 with fork legs n-1 and (n-1)' both attached to n-2
        edges = [(i, i + 1) for i in range(n - 2)] + [(n - 3, n - 1)]
        return labels, adj(n, edges)
    if family == "e" and n == 6:
        labels = ("1", "2", "3", "4", "5", "6")
        return labels, adj(6, [(0, 1), (1, 2), (2, 3), (2, 4), (4, 5)])
    if family == "e" and n == 7:
        labels = ("1", "2", "3", "4", "5", "6", "7")
        return labels, adj(7, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (3, 6)])
    if family == "e" and n == 8:
        labels = ("1", "2", "3", "4", "5", "6", "7", "8")
        return labels, adj(8, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (4, 6), (6, 7)])
    raise PackageError(f"unknown graph {kind!r}")


def ade_action(kind: str, level: int, unit: str | None = "1") -> ModuleAction:
    labels, adjacency = dynkin_graph(kind)
    return chebyshev_action(
        verlinde_su2(level),
        adjacency,
        labels,
        name=f"{kind.lower()}_su2_{level}",
        unit_module=unit,
    )


# -- serialization --------------------------------------------------------------


def save_package(data: ModuleAction | ModuleTensorData, path: str | Path) -> None:
    Path(path).write_text(package_text(data), encoding="utf-8")


def package_text(data: ModuleAction | ModuleTensorData) -> str:
    action = data.action if isinstance(data, ModuleTensorData) else data
    lines = [f"package {action.name}", f"base {action.base_spec}"]
    lines.append("msimples " + " ".join(action.msimples))
    if action.unit_module is not None:
        lines.append(f"unit {action.msimples[action.unit_module]}")
    width = max(
        len(str(int(v))) for v in np.concatenate([action.mats.ravel(), _mn_ravel(data)])
    )
    for i, label in enumerate(action.base.labels):
        lines.append(f"action {label}")
        for row in action.mats[i]:
            lines.append(" ".join(str(int(v)).rjust(width) for v in row))
    if isinstance(data, ModuleTensorData):
        for x, xl in enumerate(action.msimples):
            for y, yl in enumerate(action.msimples):
                lines.append(f"mfusion {xl} {yl}")
                lines.append(
                    " ".join(str(int(v)).rjust(width) for v in data.mN[x, y])
                )
    return "\n".join(lines) + "\n"


def _mn_ravel(data) -> np.ndarray:
    if isinstance(data, ModuleTensorData):
        return data.mN.ravel()
    return np.zeros(1, dtype=np.int64)


def load_package(path: str | Path, base_dir: str | Path | None = None):
    """Parse and validate a package file.

    Returns ModuleTensorData when the file carries a unit and a complete
    set of mfusion blocks, otherwise a ModuleAction.
    """
    path = Path(path)
    text = path.read_text(encoding="utf-8")
    return parse_package(text, source=str(path), base_dir=base_dir or path.parent)


def parse_package(text: str, source: str = "<string>", base_dir=None):
    lines = text.splitlines()
    items: list[tuple[int, list[str]]] = []
    for lineno, raw in enumerate(lines, start=1):
        stripped = raw.split("#", 1)[0].strip()
        if stripped:
            items.append((lineno, stripped.split()))

    def fail(lineno: int, msg: str):
        raise PackageError(f"{source}: line {lineno}: {msg}")

    pos = 0

    def peek():
        return items[pos] if pos < len(items) else (len(lines) + 1, [])

    name = None
    base: FusionRing | None = None
    base_spec = None
    msimples: tuple[str, ...] | None = None
    unit_label = None
    actions: dict[str, np.ndarray] = {}
    mfusion: dict[tuple[str, str], np.ndarray] = {}

    def read_row(expected_len: int) -> np.ndarray:
        nonlocal pos
        lineno, tokens = peek()
        if pos >= len(items):
            fail(lineno, "unexpected end of file inside a matrix block")
        try:
            row = [int(t) for t in tokens]
        except ValueError:
            fail(lineno, f"expected integers, got {' '.join(tokens)!r}")
        if len(row) != expected_len:
            fail(lineno, f"expected {expected_len} integers, got {len(row)}")
        for v in row:
            if v < 0:
                fail(lineno, f"negative multiplicity {v}")
        pos += 1
        return np.array(row, dtype=np.int64)

    while pos < len(items):
        lineno, tokens = items[pos]
        key = tokens[0]
        if key == "package":
            if len(tokens) != 2:
                fail(lineno, "usage: package <name>")
            name = tokens[1]
            pos += 1
        elif key == "base":
            if len(tokens) != 3 or tokens[1] not in ("su2", "file"):
                fail(lineno, "usage: base su2 <k> | base file <ring-name>")
            if tokens[1] == "su2":
                try:
                    k = int(tokens[2])
                except ValueError:
                    fail(lineno, f"bad level {tokens[2]!r}")
                base = verlinde_su2(k)
            else:
                if base_dir is None:
                    fail(lineno, "base file references need a base directory")
                ref = load_builtin_or_file(tokens[2], base_dir)
                if not isinstance(ref, ModuleTensorData):
                    fail(lineno, f"base ring {tokens[2]!r} is not a module tensor package")
                base = ref.module_ring()
            base_spec = f"{tokens[1]} {tokens[2]}"
            pos += 1
        elif key == "msimples":
            msimples = tuple(tokens[1:])
            if len(set(msimples)) != len(msimples) or not msimples:
                fail(lineno, "module simple labels must be nonempty and distinct")
            pos += 1
        elif key == "unit":
            if len(tokens) != 2:
                fail(lineno, "usage: unit <label>")
            unit_label = tokens[1]
            pos += 1
        elif key == "action":
            if base is None or msimples is None:
                fail(lineno, "action block before base/msimples")
            if len(tokens) != 2:
                fail(lineno, "usage: action <base-label>")
            label = tokens[1]
            if label not in base.labels:
                fail(lineno, f"unknown base label {label!r}")
            if label in actions:
                fail(lineno, f"duplicate action block for {label!r}")
            pos += 1
            rows = [read_row(len(msimples)) for _ in range(len(msimples))]
            actions[label] = np.stack(rows)
        elif key == "mfusion":
            if msimples is None:
                fail(lineno, "mfusion block before msimples")
            if len(tokens) != 3:
                fail(lineno, "usage: mfusion <x-label> <y-label>")
            xl, yl = tokens[1], tokens[2]
            for lab in (xl, yl):
                if lab not in msimples:
                    fail(lineno, f"unknown module label {lab!r}")
            if (xl, yl) in mfusion:
                fail(lineno, f"duplicate mfusion block for {xl} {yl}")
            pos += 1
            mfusion[(xl, yl)] = read_row(len(msimples))
        else:
            fail(lineno, f"unknown directive {key!r}")

    first_line = items[0][0] if items else 1
    if name is None:
        fail(first_line, "missing package name")
    if base is None:
        fail(first_line, "missing base declaration")
    if msimples is None:
        fail(first_line, "missing msimples declaration")
    missing = [lab for lab in base.labels if lab not in actions]
    if missing:
        fail(len(lines), f"missing action block for base label {missing[0]!r}")

    unit_index = None
    if unit_label is not None:
        if unit_label not in msimples:
            fail(first_line, f"unit label {unit_label!r} is not a module simple")
        unit_index = msimples.index(unit_label)

    action = ModuleAction(
        name=name,
        base=base,
        base_spec=base_spec,
        msimples=msimples,
        mats=np.stack([actions[lab] for lab in base.labels]),
        unit_module=unit_index,
    )
    report = validate_action(action)
    if not report.ok:
        fail(first_line, "; ".join(report.failures))

    if not mfusion:
        return action
    if unit_index is None:
        fail(first_line, "mfusion blocks require a unit declaration")
    m = len(msimples)
    mN = np.zeros((m, m, m), dtype=np.int64)
    for x, xl in enumerate(msimples):
        for y, yl in enumerate(msimples):
            if (xl, yl) not in mfusion:
                fail(len(lines), f"missing mfusion block for {xl} {yl}")
            mN[x, y] = mfusion[(xl, yl)]
    try:
        data = ModuleTensorData(action=action, mN=mN)
    except ModuleError as exc:
        fail(first_line, str(exc))
    report = validate_tensor_data(data)
    if not report.ok:
        fail(first_line, "; ".join(report.failures))
    return data


# -- builtins -------------------------------------------------------------------

BUILTIN_FILES = (
    "d4_su2_4",
    "e6_su2_10",
    "e8_su2_28",
    "d10_su2_16",
    "e7_su2_16",
    "a17_su2_16",
)

REGULAR_PATTERN = re.compile(r"a(\d+)_su2_(\d+)")


def data_dir() -> Path:
    override = os.environ.get("TRACECAT_DATA")
    if override:
        return Path(override)
    return Path(__file__).parent / "data"


def load_builtin_or_file(name: str, base_dir=None):
    candidates = []
    if base_dir is not None:
        candidates.append(Path(base_dir) / f"{name}.pkg")
    candidates.append(data_dir() / f"{name}.pkg")
    for candidate in candidates:
        if candidate.exists():
            return load_package(candidate)
    m = REGULAR_PATTERN.fullmatch(name)
    if m and int(m.group(1)) == int(m.group(2)) + 1:
        return regular_module(verlinde_su2(int(m.group(2))), name=name)
    raise PackageError(f"no builtin or package file named {name!r}")


def load_builtin(name: str):
    return load_builtin_or_file(name)
