"""Module categories over fusion rings as integer matrix data.

A ModuleAction packages the base ring together with one nonnegative square
matrix per base simple, M(c)[j][l] = multiplicity of m_j inside c . m_l.
ADE actions are produced from Dynkin-diagram adjacency matrices by the
Chebyshev recursion M(n+1) = M(2) M(n) - M(n-1).

A ModuleTensorData adds the module fusion tensor mN (making the module
simples a based ring in their own right) and the induced ring map of the
free-module functor.  derive_module_fusion reconstructs mN from the action
alone: products with free objects are forced linearly, the rest is found
by exhaustive nonnegative integer search constrained by associativity,
duality, unitality, and dimension additivity (the last only as a pruning
bound), quotienting solutions by unit-fixing symmetries of the graph.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .fusion import (
    FusionRing,
    ObjectVec,
    ValidationReport,
    is_transitive,
    perron_vector,
    validate_ring,
    verlinde_su2,
)


class ModuleError(ValueError):
    """Raised for invalid module-category data."""


@dataclass(frozen=True)
class ModuleAction:
    """A module category at the level of multiplicity matrices."""

    name: str
    base: FusionRing
    base_spec: str
    msimples: tuple[str, ...]
    mats: np.ndarray = field(compare=False, repr=False)  # (rank_base, m, m) int64
    unit_module: int | None = None

    def __post_init__(self):
        mats = np.asarray(self.mats, dtype=np.int64)
        mats.setflags(write=False)
        object.__setattr__(self, "mats", mats)
        m = len(self.msimples)
        if mats.shape != (self.base.rank, m, m):
            raise ModuleError("action matrix stack has wrong shape")
        if self.unit_module is not None and not 0 <= self.unit_module < m:
            raise ModuleError("unit module index out of range")

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ModuleAction):
            return NotImplemented
        return (
            self.name == other.name
            and self.base == other.base
            and self.msimples == other.msimples
            and self.unit_module == other.unit_module
            and np.array_equal(self.mats, other.mats)
        )

    @property
    def rank(self) -> int:
        return len(self.msimples)

    def index(self, label: str) -> int:
        try:
            return self.msimples.index(label)
        except ValueError:
            raise ModuleError(
                f"unknown module label {label!r} in {self.name}"
            ) from None

    def basis(self, j: int | str) -> ObjectVec:
        if isinstance(j, str):
            j = self.index(j)
        mult = [0] * self.rank
        mult[j] = 1
        return ObjectVec(f"{self.name}.module", tuple(mult))

    def object_vec(self, mult) -> ObjectVec:
        return ObjectVec(f"{self.name}.module", tuple(int(v) for v in mult))

    def phi_matrix(self) -> np.ndarray:
        """Row i = image of the base simple c_i under the free-module map."""
        if self.unit_module is None:
            raise ModuleError(f"{self.name} has no distinguished unit module")
        return self.mats[:, :, self.unit_module].copy()

    def module_dims(self) -> np.ndarray:
        """Perron-Frobenius dimensions of the module simples (floating point)."""
        anchor = self.unit_module if self.unit_module is not None else 0
        return perron_vector(self.mats, anchor)


def validate_action(action: ModuleAction) -> ValidationReport:
    failures: list[str] = []
    base, mats = action.base, action.mats
    m = action.rank
    if np.min(mats) < 0:
        i, j, l = np.argwhere(mats < 0)[0]
        failures.append(f"negative multiplicity in action of {base.labels[i]}")
    if not np.array_equal(mats[base.unit], np.eye(m, dtype=np.int64)):
        failures.append("unit of the base does not act as the identity")
    lhs = np.einsum("iab,jbc->ijac", mats, mats)
    rhs = np.einsum("ijk,kac->ijac", base.N, mats)
    if not np.array_equal(lhs, rhs):
        i, j, a, c = np.argwhere(lhs != rhs)[0]
        failures.append(
            "module associativity fails at "
            f"M({base.labels[i]}) M({base.labels[j]}) on column {action.msimples[c]}"
        )
    if not is_transitive(mats):
        failures.append("action graph is not connected")
    return ValidationReport(f"action {action.name}", failures)


def chebyshev_action(
    base: FusionRing,
    adjacency,
    msimples: tuple[str, ...] | list[str],
    name: str,
    unit_module: str | None = None,
) -> ModuleAction:
    """Module action generated from a graph by the Chebyshev recursion.

    The adjacency matrix encodes tensoring by the base label "2"; tadpole
    graphs (nonzero diagonal) are accepted.  Validity is decided post hoc:
    every matrix in the recursion must stay nonnegative and the recursion
    must close up at the top of the fusion alcove.
    """
    k = base.rank - 1
    if base != verlinde_su2(k):
        raise ModuleError("chebyshev_action requires an SU(2) level-k base ring")
    A = np.asarray(adjacency, dtype=np.int64)
    m = len(msimples)
    if A.shape != (m, m) or not np.array_equal(A, A.T):
        raise ModuleError("adjacency must be a symmetric square matrix")
    if np.min(A) < 0:
        raise ModuleError("adjacency entries must be nonnegative")
    if k == 0:
        if m != 1 or A[0, 0] != 0:
            raise ModuleError("level 0 admits only the one-vertex graph")
        mats = [np.eye(1, dtype=np.int64)]
    else:
        mats = [np.eye(m, dtype=np.int64), A]
        for n in range(2, k + 2):
            nxt = A @ mats[-1] - mats[-2]
            if n == k + 1:
                if np.any(nxt != 0):
                    raise ModuleError(
                        f"graph is not a level-{k} module graph "
                        f"(consistency failure at level {n + 1})"
                    )
                break
            if np.min(nxt) < 0:
                raise ModuleError(
                    f"graph is not a level-{k} module graph (first failure at {n + 1})"
                )
            mats.append(nxt)
    action = ModuleAction(
        name=name,
        base=base,
        base_spec=f"su2 {k}",
        msimples=tuple(msimples),
        mats=np.stack(mats),
        unit_module=None if unit_module is None else list(msimples).index(unit_module),
    )
    report = validate_action(action)
    if not report.ok:
        raise ModuleError("; ".join(report.failures))
    return action


def regular_module(ring: FusionRing, name: str | None = None) -> "ModuleTensorData":
    """The ring acting on itself; the module fusion tensor is the ring's own."""
    mats = np.stack([ring.action_matrix(i) for i in range(ring.rank)])
    action = ModuleAction(
        name=name or f"regular_{ring.name}",
        base=ring,
        base_spec=_base_spec_for(ring),
        msimples=ring.labels,
        mats=mats,
        unit_module=ring.unit,
    )
    return ModuleTensorData(action=action, mN=ring.N.copy(), mdual=ring.dual)


def _base_spec_for(ring: FusionRing) -> str:
    if ring.name.startswith("su2_"):
        return f"su2 {ring.name.split('_')[1]}"
    return f"file {ring.name}"


@dataclass(frozen=True)
class ModuleTensorData:
    """A module category with compatible tensor structure (at the K-level)."""

    action: ModuleAction
    mN: np.ndarray = field(compare=False, repr=False)
    mdual: tuple[int, ...] = ()

    def __post_init__(self):
        if self.action.unit_module is None:
            raise ModuleError("module tensor data requires a unit module")
        mN = np.asarray(self.mN, dtype=np.int64)
        mN.setflags(write=False)
        object.__setattr__(self, "mN", mN)
        m = self.action.rank
        if mN.shape != (m, m, m):
            raise ModuleError("module fusion tensor has wrong shape")
        if not self.mdual:
            object.__setattr__(self, "mdual", _dual_from_tensor(mN, self.unit_module))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ModuleTensorData):
            return NotImplemented
        return (
            self.action == other.action
            and self.mdual == other.mdual
            and np.array_equal(self.mN, other.mN)
        )

    @property
    def name(self) -> str:
        return self.action.name

    @property
    def base(self) -> FusionRing:
        return self.action.base

    @property
    def msimples(self) -> tuple[str, ...]:
        return self.action.msimples

    @property
    def unit_module(self) -> int:
        return self.action.unit_module

    def module_ring(self) -> FusionRing:
        return FusionRing(
            name=f"{self.name}.module",
            labels=self.msimples,
            unit=self.unit_module,
            dual=self.mdual,
            N=self.mN,
        )

    def mfuse(self, x: ObjectVec, y: ObjectVec) -> ObjectVec:
        space = f"{self.name}.module"
        if x.space != space or y.space != space:
            raise ModuleError(f"objects do not live over {space}")
        out = np.einsum("i,j,ijk->k", x.as_array(), y.as_array(), self.mN)
        return self.action.object_vec(out)


def _dual_from_tensor(mN: np.ndarray, unit: int) -> tuple[int, ...]:
    m = mN.shape[0]
    dual = []
    for x in range(m):
        mates = np.nonzero(mN[x, :, unit])[0]
        if len(mates) != 1 or mN[x, mates[0], unit] != 1:
            raise ModuleError(f"module simple {x} has no unique dual")
        dual.append(int(mates[0]))
    return tuple(dual)


def validate_tensor_data(data: ModuleTensorData) -> ValidationReport:
    failures = list(validate_action(data.action).failures)
    ring_report = validate_ring(data.module_ring())
    failures += ring_report.failures
    phi = data.action.phi_matrix()
    mats = data.action.mats
    compat = np.einsum("iz,zxw->iwx", phi, data.mN)
    if not np.array_equal(compat, mats):
        i, w, x = np.argwhere(compat != mats)[0]
        failures.append(
            "free-module compatibility fails: "
            f"Phi({data.base.labels[i]}) (x) {data.msimples[x]}"
        )
    hom_lhs = np.einsum("ix,jy,xyw->ijw", phi, phi, data.mN)
    hom_rhs = np.einsum("ijk,kw->ijw", data.base.N, phi)
    if not np.array_equal(hom_lhs, hom_rhs):
        i, j, w = np.argwhere(hom_lhs != hom_rhs)[0]
        failures.append(
            "free-module map is not a ring homomorphism at "
            f"({data.base.labels[i]}, {data.base.labels[j]})"
        )
    return ValidationReport(f"module tensor data {data.name}", failures)


# -- graph automorphisms -------------------------------------------------------


def action_automorphisms(action: ModuleAction) -> list[tuple[int, ...]]:
    """Permutations of module simples commuting with every action matrix.

    When a unit module is distinguished it must be fixed: these are the
    label symmetries by which fusion-tensor solutions are quotiented.
    """
    m = action.rank
    mats = action.mats

    def invariant(v: int):
        rows = tuple(
            (int(mats[i, v, v]), tuple(sorted(mats[i, v, :])), tuple(sorted(mats[i, :, v])))
            for i in range(mats.shape[0])
        )
        return rows

    inv = [invariant(v) for v in range(m)]
    perms: list[tuple[int, ...]] = []

    def extend(pi: list[int], used: set[int]) -> None:
        v = len(pi)
        if v == m:
            perms.append(tuple(pi))
            return
        for w in range(m):
            if w in used or inv[v] != inv[w]:
                continue
            if action.unit_module is not None and v == action.unit_module and w != v:
                continue
            ok = True
            for i in range(mats.shape[0]):
                for u, pu in enumerate(pi):
                    if mats[i, v, u] != mats[i, w, pu] or mats[i, u, v] != mats[i, pu, w]:
                        ok = False
                        break
                if not ok:
                    break
            if ok:
                extend(pi + [w], used | {w})

    extend([], set())
    return perms


# -- deriving the module fusion tensor -----------------------------------------


class NoConsistentFusion(ModuleError):
    pass


class AmbiguousFusion(ModuleError):
    def __init__(self, message: str, solutions: list[np.ndarray]):
        super().__init__(message)
        self.solutions = solutions


@dataclass
class DeriveResult:
    data: ModuleTensorData
    n_solutions: int
    symmetries: list[tuple[int, ...]]


def derive_module_fusion(
    action: ModuleAction, unit_module: int | str | None = None
) -> DeriveResult:
    """Reconstruct the module fusion tensor from the action matrices.

    Raises NoConsistentFusion when the constraint system has no solution
    and AmbiguousFusion when several survive beyond the unit-fixing graph
    symmetries.  The returned representative is the lexicographically
    smallest solution, so regeneration is reproducible bit for bit.
    """
    if unit_module is None:
        unit = action.unit_module
        if unit is None:
            raise ModuleError("no unit module specified")
    else:
        unit = action.index(unit_module) if isinstance(unit_module, str) else unit_module
    if action.unit_module != unit:
        action = ModuleAction(
            name=action.name,
            base=action.base,
            base_spec=action.base_spec,
            msimples=action.msimples,
            mats=action.mats,
            unit_module=unit,
        )
    report = validate_action(action)
    if not report.ok:
        raise ModuleError("; ".join(report.failures))

    m = action.rank
    mats = action.mats
    phi = action.phi_matrix()  # (rank_base, m)
    solver = _FusionSolver(action, phi, unit)
    solutions = solver.solve()
    if not solutions:
        raise NoConsistentFusion(
            f"no consistent fusion tensor for {action.name} with unit "
            f"{action.msimples[unit]}"
        )
    perms = action_automorphisms(action)
    reps = _quotient_by_symmetry(solutions, perms)
    if len(reps) > 1:
        raise AmbiguousFusion(
            f"{len(reps)} fusion tensors for {action.name} remain after "
            "quotienting by graph symmetry",
            reps,
        )
    data = ModuleTensorData(action=action, mN=reps[0])
    check = validate_tensor_data(data)
    if not check.ok:
        raise NoConsistentFusion("; ".join(check.failures))
    return DeriveResult(data=data, n_solutions=len(solutions), symmetries=perms)


def _quotient_by_symmetry(
    solutions: list[np.ndarray], perms: list[tuple[int, ...]]
) -> list[np.ndarray]:
    seen: dict[bytes, np.ndarray] = {}
    for sol in solutions:
        orbit = []
        for p in perms:
            pi = list(p)
            permuted = sol[np.ix_(pi, pi, pi)]
            orbit.append(permuted.tobytes())
        canon = min(orbit)
        if canon not in seen:
            idx = orbit.index(canon)
            pi = list(perms[idx])
            seen[canon] = sol[np.ix_(pi, pi, pi)]
    return [seen[key] for key in sorted(seen)]


class _FusionSolver:
    """Exhaustive search for mN with linear forcing and constraint propagation.

    For each pair (x, w), the values u[z] = mN[z][x][w] satisfy the linear
    system  sum_z phi[i][z] u[z] = mats[i][w][x]; row reduction expresses
    the pivot rows as affine functions of the kernel (free) rows.  Once the
    unit column fixes the dual involution, values propagate through the
    based-ring symmetries

        mN[a][b][c] = mN[b*][a*][c*]      (duality compatibility)
        mN[a][b][c] = mN[b][c*][a*]       (cyclic Frobenius relation)

    which cuts the remaining search to a handful of cells even at rank 10.
    The cyclic relation is a consequence of associativity together with the
    duality axioms, so using it for propagation loses no solutions.
    """

    def __init__(self, action: ModuleAction, phi: np.ndarray, unit: int):
        self.action = action
        self.mats = action.mats
        self.m = action.rank
        self.unit = unit
        self.phi = phi
        self.dims = action.module_dims()
        self._prepare_linear_system()

    def _prepare_linear_system(self) -> None:
        rows = [[Fraction(int(v)) for v in self.phi[i]] for i in range(self.phi.shape[0])]
        rhs_ops: list[tuple[str, int, int, Fraction]] = []
        pivots: list[int] = []
        r = 0
        nrows = len(rows)
        for col in range(self.m):
            piv = next((i for i in range(r, nrows) if rows[i][col] != 0), None)
            if piv is None:
                continue
            if piv != r:
                rows[r], rows[piv] = rows[piv], rows[r]
                rhs_ops.append(("swap", r, piv, Fraction(0)))
            if rows[r][col] != 1:
                inv = Fraction(1) / rows[r][col]
                rows[r] = [v * inv for v in rows[r]]
                rhs_ops.append(("scale", r, 0, inv))
            for i in range(nrows):
                if i != r and rows[i][col] != 0:
                    factor = rows[i][col]
                    rows[i] = [a - factor * b for a, b in zip(rows[i], rows[r])]
                    rhs_ops.append(("axpy", i, r, factor))
            pivots.append(col)
            r += 1
        self.rank = r
        self.pivots = pivots
        self.pivot_pos = {c: t for t, c in enumerate(pivots)}
        self.free_cols = [c for c in range(self.m) if c not in pivots]
        self.reduced = rows
        self.rhs_ops = rhs_ops

    def _reduce_rhs(self, b: list[Fraction]) -> list[Fraction] | None:
        b = list(b)
        for op, i, j, factor in self.rhs_ops:
            if op == "swap":
                b[i], b[j] = b[j], b[i]
            elif op == "scale":
                b[i] *= factor
            else:
                b[i] -= factor * b[j]
        for i in range(self.rank, len(b)):
            if b[i] != 0:
                return None
        return b[: self.rank]

    def _cell_bound(self, z: int, x: int, w: int) -> int:
        d = self.dims
        return int(np.floor(d[z] * d[x] / max(d[w], 1e-9) + 0.5))

    def solve(self) -> list[np.ndarray]:
        m = self.m
        self.const: dict[tuple[int, int], list[Fraction]] = {}
        for x in range(m):
            for w in range(m):
                b = [Fraction(int(self.mats[i][w][x])) for i in range(self.mats.shape[0])]
                red = self._reduce_rhs(b)
                if red is None:
                    return []
                self.const[(x, w)] = red

        base: dict[tuple[int, int, int], int] = {}
        for x in range(m):
            for w in range(m):
                if not self._put(base, (self.unit, x, w), 1 if x == w else 0):
                    return []
                if not self._put(base, (x, self.unit, w), 1 if x == w else 0):
                    return []
        if not self._propagate(base, dual=None):
            return []

        solutions: list[np.ndarray] = []
        unit_cells = sorted(
            (f, x, self.unit)
            for f in self.free_cols
            for x in range(m)
            if (f, x, self.unit) not in base
        )
        self._search_unit(base, unit_cells, 0, solutions)
        return solutions

    # -- value store -----------------------------------------------------------

    def _put(self, vals, cell, value) -> bool:
        if value < 0 or value > self._cell_bound(*cell):
            return False
        old = vals.get(cell)
        if old is not None:
            return old == value
        vals[cell] = value
        return True

    def _group_frees(self, vals, x, w):
        return [f for f in self.free_cols if (f, x, w) not in vals]

    def _propagate(self, vals, dual) -> bool:
        """Close `vals` under linear forcing and (if dual is known) symmetry."""
        changed = True
        while changed:
            changed = False
            for x in range(self.m):
                for w in range(self.m):
                    missing = self._group_frees(vals, x, w)
                    if missing:
                        # a pivot row with a single unknown free coefficient can
                        # still force that free cell once its own value is known
                        for z in self.pivots:
                            if (z, x, w) not in vals:
                                continue
                            row = self.reduced[self.pivot_pos[z]]
                            unknown = [f for f in missing if row[f] != 0]
                            if len(unknown) != 1:
                                continue
                            f = unknown[0]
                            rem = self.const[(x, w)][self.pivot_pos[z]] - vals[(z, x, w)]
                            for g in self.free_cols:
                                if g != f and row[g] != 0:
                                    rem -= row[g] * vals[(g, x, w)]
                            val = rem / row[f]
                            if val.denominator != 1 or val < 0:
                                return False
                            if not self._put(vals, (f, x, w), int(val)):
                                return False
                            missing.remove(f)
                            changed = True
                    if not missing:
                        for z in self.pivots:
                            if (z, x, w) in vals:
                                continue
                            t = self.pivot_pos[z]
                            row = self.reduced[t]
                            val = self.const[(x, w)][t]
                            for f in self.free_cols:
                                if row[f] != 0:
                                    val -= row[f] * vals[(f, x, w)]
                            if val.denominator != 1 or val < 0:
                                return False
                            if not self._put(vals, (z, x, w), int(val)):
                                return False
                            changed = True
            if dual is not None:
                for (a, b, c), v in list(vals.items()):
                    images = (
                        (dual[b], dual[a], dual[c]),
                        (b, dual[c], dual[a]),
                        (dual[c], a, dual[b]),
                    )
                    for img in images:
                        if img not in vals:
                            if not self._put(vals, img, v):
                                return False
                            changed = True
                        elif vals[img] != v:
                            return False
        return True

    # -- phase 1: the unit column fixes the duality ------------------------------

    def _search_unit(self, vals, cells, idx, solutions) -> None:
        if idx == len(cells):
            dual = self._derive_dual(vals)
            if dual is None:
                return
            state = dict(vals)
            if not self._propagate(state, dual):
                return
            rest = sorted(
                (f, x, w)
                for f in self.free_cols
                for x in range(self.m)
                for w in range(self.m)
                if (f, x, w) not in state
            )
            self._search_rest(state, dual, rest, solutions)
            return
        cell = cells[idx]
        if cell in vals:
            self._search_unit(vals, cells, idx + 1, solutions)
            return
        for value in (0, 1):
            state = dict(vals)
            if not self._put(state, cell, value):
                continue
            if self._propagate(state, None):
                self._search_unit(state, cells, idx + 1, solutions)

    def _derive_dual(self, vals) -> tuple[int, ...] | None:
        dual = []
        for z in range(self.m):
            mates = []
            for x in range(self.m):
                v = vals.get((z, x, self.unit))
                if v is None or v < 0 or v > 1:
                    return None
                if v == 1:
                    mates.append(x)
            if len(mates) != 1:
                return None
            dual.append(mates[0])
        if sorted(dual) != list(range(self.m)):
            return None
        if any(dual[dual[z]] != z for z in range(self.m)):
            return None
        return tuple(dual)

    # -- phase 2: remaining cells under full propagation -------------------------

    def _search_rest(self, vals, dual, rest, solutions) -> None:
        cell = next((c for c in rest if c not in vals), None)
        if cell is None:
            mN = self._assemble(vals)
            if mN is not None and self._final_check(mN, dual):
                solutions.append(mN)
            return
        for value in range(self._cell_bound(*cell) + 1):
            state = dict(vals)
            if not self._put(state, cell, value):
                continue
            if self._dim_prune(state) and self._propagate(state, dual):
                self._search_rest(state, dual, rest, solutions)

    def _dim_prune(self, vals) -> bool:
        d = self.dims
        by_product: dict[tuple[int, int], tuple[float, int]] = {}
        for (z, x, w), v in vals.items():
            tot, cnt = by_product.get((z, x), (0.0, 0))
            by_product[(z, x)] = (tot + v * d[w], cnt + 1)
        for (z, x), (tot, cnt) in by_product.items():
            target = d[z] * d[x]
            if cnt == self.m:
                if abs(tot - target) > 1e-8 * max(1.0, target):
                    return False
            elif tot > target * (1 + 1e-8) + 1e-8:
                return False
        return True

    def _assemble(self, vals) -> np.ndarray | None:
        mN = np.zeros((self.m, self.m, self.m), dtype=np.int64)
        for z in range(self.m):
            for x in range(self.m):
                for w in range(self.m):
                    v = vals.get((z, x, w))
                    if v is None:
                        return None
                    mN[z, x, w] = v
        return mN

    def _final_check(self, mN: np.ndarray, dual) -> bool:
        ring = FusionRing(
            name="candidate",
            labels=self.action.msimples,
            unit=self.unit,
            dual=dual,
            N=mN,
        )
        if not validate_ring(ring).ok:
            return False
        compat = np.einsum("iz,zxw->iwx", self.phi, mN)
        return np.array_equal(compat, self.mats)
