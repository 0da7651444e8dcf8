"""The categorified trace at the level of multiplicity vectors.

For a module tensor category given by action matrices M(c_i) with
distinguished unit column, the right adjoint of the free-module map sends
the module simple m_j to the base object with multiplicities

    T[i][j] = M(c_i)[j][unit],

the adjunction being dim Hom(c_i, Tr m_j) = dim Hom(Phi(c_i), m_j).  All
checks in this module are exhaustive and exact.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .fusion import FusionError, ObjectVec, ValidationReport, fuse
from .modules import ModuleAction, ModuleError, ModuleTensorData


def _action_of(data: ModuleTensorData | ModuleAction) -> ModuleAction:
    return data.action if isinstance(data, ModuleTensorData) else data


@dataclass(frozen=True)
class TraceMatrix:
    """Multiplicity of the base simple c_i in the trace of the module simple m_j."""

    base_labels: tuple[str, ...]
    module_labels: tuple[str, ...]
    T: np.ndarray

    def __post_init__(self):
        t = np.asarray(self.T, dtype=np.int64)
        t.setflags(write=False)
        object.__setattr__(self, "T", t)

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(int(v) for v in self.T[:, j])


def trace_matrix(data: ModuleTensorData | ModuleAction) -> TraceMatrix:
    action = _action_of(data)
    if action.unit_module is None:
        raise ModuleError(f"{action.name} has no unit module; cannot take traces")
    T = action.mats[:, :, action.unit_module]
    return TraceMatrix(action.base.labels, action.msimples, T)


def trace_object(
    data: ModuleTensorData | ModuleAction, x: ObjectVec
) -> ObjectVec:
    """Linear extension of the trace to arbitrary module objects."""
    action = _action_of(data)
    if x.space != f"{action.name}.module" or len(x.mult) != action.rank:
        raise FusionError(f"object over {x.space} does not match module {action.name}")
    T = trace_matrix(data).T
    return ObjectVec(
        action.base.name, tuple(int(v) for v in T @ x.as_array())
    )


def trace_of_word(data: ModuleTensorData, word) -> ObjectVec:
    """Trace of a tensor word of module objects, folded left to right."""
    if not isinstance(data, ModuleTensorData):
        raise ModuleError("tensor words need module fusion data")
    factors = list(word)
    if not factors:
        acc = data.action.basis(data.unit_module)
    else:
        acc = factors[0]
        for factor in factors[1:]:
            acc = data.mfuse(acc, factor)
    return trace_object(data, acc)


def internal_end(action: ModuleAction | ModuleTensorData, x: ObjectVec) -> ObjectVec:
    """The base object representing endomorphisms of the module object x."""
    action = _action_of(action)
    if x.space != f"{action.name}.module" or len(x.mult) != action.rank:
        raise FusionError(f"object over {x.space} does not match module {action.name}")
    if x.is_zero():
        raise ModuleError("internal End of the zero object is undefined")
    v = x.as_array()
    out = np.einsum("j,ijl,l->i", v, action.mats, v)
    return ObjectVec(action.base.name, tuple(int(c) for c in out))


# -- verification ---------------------------------------------------------------


def check_adjunction(data: ModuleTensorData | ModuleAction) -> ValidationReport:
    """dim Hom(c_i, Tr m_j) = dim Hom(Phi(c_i), m_j), exhaustively."""
    action = _action_of(data)
    failures: list[str] = []
    tm = trace_matrix(data)
    phi = action.phi_matrix()
    for i in range(action.base.rank):
        for j in range(action.rank):
            lhs = trace_object(data, action.basis(j)).mult[i]
            rhs = int(phi[i][j])
            if lhs != rhs or lhs != int(tm.T[i, j]):
                failures.append(
                    f"adjunction fails at (c={action.base.labels[i]}, "
                    f"m={action.msimples[j]}): {lhs} vs {rhs}"
                )
    rng = np.random.default_rng(0)
    for _ in range(20):
        c = rng.integers(0, 3, size=action.base.rank)
        x = rng.integers(0, 3, size=action.rank)
        # paired dimensions of Hom(c, Tr x) and Hom(Phi(c), x)
        lhs = int(c @ tm.T @ x)
        rhs = int((c @ phi) @ x)
        if lhs != rhs:
            failures.append(f"adjunction fails on non-simple pair {c} {x}")
            break
    return ValidationReport(f"adjunction {action.name}", failures)


def check_splitting_iso(data: ModuleTensorData) -> ValidationReport:
    """Tr(x (x) Phi(c)) = Tr(x) (x) c for all simple x, c."""
    failures: list[str] = []
    action = data.action
    base = data.base
    phi = action.phi_matrix()
    for j in range(action.rank):
        x = action.basis(j)
        tx = trace_object(data, x)
        for i in range(base.rank):
            phic = action.object_vec(phi[i])
            lhs = trace_object(data, data.mfuse(x, phic))
            rhs = fuse(base, tx, base.basis(i))
            if lhs != rhs:
                failures.append(
                    f"splitting fails at (m={action.msimples[j]}, "
                    f"c={base.labels[i]}): {lhs.mult} vs {rhs.mult}"
                )
    return ValidationReport(f"splitting {data.name}", failures)


def check_traciator_iso(data: ModuleTensorData) -> ValidationReport:
    """Tr(x (x) y) = Tr(y (x) x), plus the rotated three-factor identity."""
    failures: list[str] = []
    action = data.action
    m = action.rank
    for j in range(m):
        x = action.basis(j)
        for l in range(m):
            y = action.basis(l)
            lhs = trace_of_word(data, [x, y])
            rhs = trace_of_word(data, [y, x])
            if lhs != rhs:
                failures.append(
                    f"trace symmetry fails at ({action.msimples[j]}, "
                    f"{action.msimples[l]})"
                )
    for j in range(m):
        for l in range(m):
            for s in range(m):
                x, y, z = action.basis(j), action.basis(l), action.basis(s)
                lhs = trace_object(data, data.mfuse(x, data.mfuse(y, z)))
                rhs = trace_object(data, data.mfuse(data.mfuse(z, x), y))
                if lhs != rhs:
                    failures.append(
                        "rotated three-factor trace fails at "
                        f"({action.msimples[j]}, {action.msimples[l]}, "
                        f"{action.msimples[s]})"
                    )
    return ValidationReport(f"trace rotation {data.name}", failures)


def check_forgetful(data: ModuleTensorData | ModuleAction) -> ValidationReport:
    """The trace agrees with the underlying-object map, two ways.

    First the intertwining law Tr(c . x) = c (x) Tr(x) as matrices, then an
    independent reconstruction of the whole trace matrix from the internal
    End of the unit by propagation along the module graph.
    """
    action = _action_of(data)
    failures: list[str] = []
    tm = trace_matrix(data).T
    base = action.base
    for i in range(base.rank):
        lhs = tm @ action.mats[i]
        rhs = base.action_matrix(i) @ tm
        if not np.array_equal(lhs, rhs):
            failures.append(
                f"trace does not intertwine the action of {base.labels[i]}"
            )
            break
    rebuilt = _rebuild_trace_matrix(action)
    if rebuilt is None:
        failures.append("could not rebuild the trace matrix along the module graph")
    elif not np.array_equal(rebuilt, tm):
        i, j = np.argwhere(rebuilt != tm)[0]
        failures.append(
            "rebuilt trace disagrees at "
            f"(c={base.labels[i]}, m={action.msimples[j]})"
        )
    return ValidationReport(f"underlying object {action.name}", failures)


def _rebuild_trace_matrix(action: ModuleAction) -> np.ndarray | None:
    """Independent route to the trace matrix.

    Seeds the unit column with the internal End of the unit object and
    pushes values along the module graph using Tr(gen . m) = gen (x) Tr(m),
    where gen is the base generator whose action matrix is the graph.
    """
    base = action.base
    if base.rank < 2:
        seed = np.array(
            [int(action.mats[i][action.unit_module][action.unit_module]) for i in range(base.rank)]
        )
        return seed.reshape(base.rank, 1)
    unit = action.unit_module
    m = action.rank
    gen = 1  # the base label "2"
    A = action.mats[gen]
    N2 = base.action_matrix(gen)
    T = np.zeros((base.rank, m), dtype=np.int64)
    known = [False] * m
    T[:, unit] = [int(action.mats[i][unit][unit]) for i in range(base.rank)]
    known[unit] = True
    progress = True
    while progress and not all(known):
        progress = False
        for j in range(m):
            if not known[j]:
                continue
            neighbors = [l for l in range(m) if A[l][j] != 0]
            unknown = [l for l in neighbors if not known[l]]
            if len(unknown) != 1:
                continue
            l = unknown[0]
            rest = N2 @ T[:, j] - sum(
                int(A[o][j]) * T[:, o] for o in neighbors if known[o]
            )
            coef = int(A[l][j])
            if np.any(rest % coef != 0) or np.any(rest < 0):
                return None
            T[:, l] = rest // coef
            known[l] = True
            progress = True
    if not all(known):
        # fork vertices leave siblings that only a joint exact solve separates
        T = _solve_residual_columns(action, T, known)
        if T is None:
            return None
    for i in range(base.rank):
        if not np.array_equal(T @ action.mats[i], base.action_matrix(i) @ T):
            return None
    return T


def _solve_residual_columns(
    action: ModuleAction, T: np.ndarray, known: list[bool]
) -> np.ndarray | None:
    """Exact solve for columns the tree propagation could not separate.

    Stacks every intertwining relation sum_l M(c_i)[l][j] T[:, l] =
    N(c_i) T[:, j] and solves for the unknown columns over the rationals.
    """
    from fractions import Fraction

    base = action.base
    r, m = base.rank, action.rank
    unknown_cols = [l for l in range(m) if not known[l]]
    index = {}
    for t, l in enumerate(unknown_cols):
        for a in range(r):
            index[(l, a)] = t * r + a
    nvars = len(unknown_cols) * r
    unknown_set = set(unknown_cols)
    rows: list[list[Fraction]] = []
    rhs: list[Fraction] = []
    for i in range(r):
        Mi = action.mats[i]
        Ni = base.action_matrix(i)
        for j in range(m):
            touches = j in unknown_set or any(
                Mi[l][j] != 0 for l in unknown_cols
            )
            if not touches:
                continue  # constant rows are re-verified by the caller
            # component a of: sum_l Mi[l][j] T[:, l] - Ni T[:, j] = 0
            for a in range(r):
                row = [Fraction(0)] * nvars
                const = Fraction(0)
                for l in range(m):
                    c = int(Mi[l][j])
                    if c == 0:
                        continue
                    if known[l]:
                        const += c * int(T[a, l])
                    else:
                        row[index[(l, a)]] += c
                if known[j]:
                    const -= sum(int(Ni[a][b]) * int(T[b, j]) for b in range(r))
                else:
                    for b in range(r):
                        c = int(Ni[a][b])
                        if c:
                            row[index[(j, b)]] -= c
                if any(row):
                    rows.append(row)
                    rhs.append(-const)
                elif const != 0:
                    return None
    solution = _solve_affine_nonneg(rows, rhs, nvars)
    if solution is None:
        return None
    out = T.copy()
    for t, l in enumerate(unknown_cols):
        for a in range(r):
            out[a, l] = solution[t * r + a]
    return out


def _solve_affine_nonneg(rows, rhs, nvars):
    """Unique nonnegative integer solution of a rational linear system.

    The system may have a small rational kernel (fork symmetries of the
    module graph); the kernel directions are enumerated over the integer
    points where every coordinate stays nonnegative.
    """
    from fractions import Fraction

    # incremental reduced row echelon basis with early stop at full rank
    basis: dict[int, list[Fraction]] = {}  # pivot column -> normalized row + rhs
    for row, b in zip(rows, rhs):
        work = list(row) + [b]
        for col, brow in basis.items():
            if work[col] != 0:
                f = work[col]
                work = [a - f * c for a, c in zip(work, brow)]
        lead = next((c for c in range(nvars) if work[c] != 0), None)
        if lead is None:
            if work[nvars] != 0:
                return None
            continue
        inv = Fraction(1) / work[lead]
        work = [v * inv for v in work]
        for col, brow in basis.items():
            if brow[lead] != 0:
                f = brow[lead]
                basis[col] = [a - f * c for a, c in zip(brow, work)]
        basis[lead] = work
        if len(basis) == nvars:
            break
    pivots = sorted(basis)
    free = [c for c in range(nvars) if c not in basis]
    if len(free) > 2:
        return None
    particular = [Fraction(0)] * nvars
    for col in pivots:
        particular[col] = basis[col][nvars]
    kernel = []
    for f in free:
        vec = [Fraction(0)] * nvars
        vec[f] = Fraction(1)
        for col in pivots:
            vec[col] = -basis[col][f]
        kernel.append(vec)

    def candidate(ts):
        vals = []
        for c in range(nvars):
            v = particular[c] + sum(t * kern[c] for t, kern in zip(ts, kernel))
            if v.denominator != 1 or v < 0:
                return None
            vals.append(int(v))
        return vals

    if not kernel:
        return candidate(())

    bound = 0
    for c in range(nvars):
        if particular[c].denominator == 1:
            bound = max(bound, abs(int(particular[c])))
    span = range(-(bound + 1), bound + 2)
    found = None
    for ts in __import__("itertools").product(span, repeat=len(kernel)):
        vals = candidate(ts)
        if vals is None:
            continue
        if found is not None and vals != found:
            return None
        found = vals
    return found


# -- table formatting -----------------------------------------------------------


def decomposition(vec: ObjectVec, labels: tuple[str, ...], style: str = "text") -> str:
    """Render an object as a sum of simples.

    text:    1 ⊕ 5     (repeating each simple by its multiplicity)
    machine: 1^1 + 5^1
    """
    if vec.is_zero():
        return "0"
    if style == "text":
        parts = []
        for lab, mult in zip(labels, vec.mult):
            parts.extend([lab] * mult)
        return " ⊕ ".join(parts)
    if style == "machine":
        return " + ".join(
            f"{lab}^{mult}" for lab, mult in zip(labels, vec.mult) if mult
        )
    raise ValueError(f"unknown style {style!r}")


def trace_table(data: ModuleTensorData | ModuleAction, fmt: str = "text") -> str:
    """The trace of every module simple.

    text:    aligned `label : 1 ⊕ 5` rows
    machine: `label : 1^1 + 5^1` rows
    tsv:     tab-separated machine rows
    """
    action = _action_of(data)
    tm = trace_matrix(data)
    rows = []
    for j, mlabel in enumerate(action.msimples):
        vec = ObjectVec(action.base.name, tm.column(j))
        rows.append((mlabel, vec))
    if fmt == "tsv":
        return (
            "\n".join(
                f"{mlabel}\t{decomposition(vec, tm.base_labels, 'machine')}"
                for mlabel, vec in rows
            )
            + "\n"
        )
    if fmt not in ("text", "machine"):
        raise ValueError(f"unknown table format {fmt!r}")
    style = "text" if fmt == "text" else "machine"
    left = max(len(r[0]) for r in rows)
    out = [
        f"{mlabel.ljust(left)} : {decomposition(vec, tm.base_labels, style)}"
        for mlabel, vec in rows
    ]
    return "\n".join(out) + "\n"
