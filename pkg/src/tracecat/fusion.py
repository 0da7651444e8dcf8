"""Fusion rings: unital based rings with duality, and the SU(2) level-k family.

A FusionRing stores the structure tensor N[i][j][k] = multiplicity of the
simple k inside i (x) j, together with the unit index and the duality
involution.  All arithmetic is exact integer arithmetic (numpy int64);
only fp_dimensions works in floating point, and its output is used for
sanity checks and search pruning, never for exact decisions.

Simple labels are 1-based strings ("1".."17", "9'") so tables read off
against the standard ADE conventions; indices are 0-based internally.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np


class FusionError(ValueError):
    """Raised for structurally invalid fusion data."""


@dataclass(frozen=True)
class ObjectVec:
    """An isomorphism class of an object: multiplicities over simple labels."""

    space: str
    mult: tuple[int, ...]

    def __post_init__(self):
        if any(m < 0 for m in self.mult):
            raise FusionError("object multiplicities must be nonnegative")

    def __add__(self, other: "ObjectVec") -> "ObjectVec":
        self._check(other)
        return ObjectVec(self.space, tuple(a + b for a, b in zip(self.mult, other.mult)))

    def _check(self, other: "ObjectVec") -> None:
        if self.space != other.space or len(self.mult) != len(other.mult):
            raise FusionError(
                f"label-set mismatch: {self.space}[{len(self.mult)}] vs "
                f"{other.space}[{len(other.mult)}]"
            )

    def is_zero(self) -> bool:
        return not any(self.mult)

    @property
    def total(self) -> int:
        return sum(self.mult)

    def as_array(self) -> np.ndarray:
        return np.array(self.mult, dtype=np.int64)


@dataclass(frozen=True)
class FusionRing:
    """A unital based ring with duality."""

    name: str
    labels: tuple[str, ...]
    unit: int
    dual: tuple[int, ...]
    N: np.ndarray = field(compare=False, repr=False)  # shape (r, r, r), int64

    def __post_init__(self):
        n = np.asarray(self.N, dtype=np.int64)
        n.setflags(write=False)
        object.__setattr__(self, "N", n)
        r = len(self.labels)
        if n.shape != (r, r, r):
            raise FusionError("structure tensor shape mismatch")
        if sorted(self.dual) != list(range(r)):
            raise FusionError("dual is not a permutation")

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FusionRing):
            return NotImplemented
        return (
            self.labels == other.labels
            and self.unit == other.unit
            and self.dual == other.dual
            and np.array_equal(self.N, other.N)
        )

    def __hash__(self) -> int:
        return hash((self.labels, self.unit, self.dual, self.N.tobytes()))

    @property
    def rank(self) -> int:
        return len(self.labels)

    def index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise FusionError(f"unknown label {label!r} in ring {self.name}") from None

    def basis(self, i: int | str) -> ObjectVec:
        if isinstance(i, str):
            i = self.index(i)
        mult = [0] * self.rank
        mult[i] = 1
        return ObjectVec(self.name, tuple(mult))

    def unit_object(self) -> ObjectVec:
        return self.basis(self.unit)

    def action_matrix(self, i: int) -> np.ndarray:
        """Matrix of left multiplication by simple i: rows = output simples."""
        return self.N[i].T.copy()

    def dual_object(self, x: ObjectVec) -> ObjectVec:
        mult = [0] * self.rank
        for i, m in enumerate(x.mult):
            mult[self.dual[i]] += m
        return ObjectVec(self.name, tuple(mult))


def verlinde_su2(k: int) -> FusionRing:
    """The SU(2) level-k fusion ring on labels "1".."k+1".

    Structure constants follow the truncated angular-momentum rule: with
    1-based labels a, b, the product contains c for c = |a-b|+1, |a-b|+3,
    ..., min(a+b-1, 2k+3-a-b).
    """
    if k < 0:
        raise FusionError("level must be nonnegative")
    r = k + 1
    N = np.zeros((r, r, r), dtype=np.int64)
    for i in range(r):
        for j in range(r):
            a, b = i + 1, j + 1
            top = min(a + b - 1, 2 * k + 3 - a - b)
            for c in range(abs(a - b) + 1, top + 1, 2):
                N[i, j, c - 1] = 1
    return FusionRing(
        name=f"su2_{k}",
        labels=tuple(str(n) for n in range(1, r + 1)),
        unit=0,
        dual=tuple(range(r)),
        N=N,
    )


@dataclass
class ValidationReport:
    name: str
    failures: list[str]

    @property
    def ok(self) -> bool:
        return not self.failures

    def lines(self) -> list[str]:
        if self.ok:
            return [f"PASS  {self.name}"]
        return [f"FAIL  {self.name}: {msg}" for msg in self.failures]


def validate_ring(ring: FusionRing) -> ValidationReport:
    """Check unitality, associativity, and the based-ring duality axioms."""
    N = ring.N
    r = ring.rank
    failures: list[str] = []
    eye = np.eye(r, dtype=np.int64)

    if not np.array_equal(N[ring.unit], eye):
        j, k = np.argwhere(N[ring.unit] != eye)[0]
        failures.append(f"unitality fails at N[1][{ring.labels[j]}][{ring.labels[k]}]")
    if not np.array_equal(N[:, ring.unit, :], eye):
        i, k = np.argwhere(N[:, ring.unit, :] != eye)[0]
        failures.append(f"unitality fails at N[{ring.labels[i]}][1][{ring.labels[k]}]")

    lhs = np.einsum("ijm,mlk->iljk", N, N)
    rhs = np.einsum("jlm,imk->iljk", N, N)
    if not np.array_equal(lhs, rhs):
        i, l, j, k = np.argwhere(lhs != rhs)[0]
        failures.append(
            "associativity fails at "
            f"({ring.labels[i]},{ring.labels[j]},{ring.labels[l]}) -> {ring.labels[k]}"
        )

    dual_delta = np.zeros((r, r), dtype=np.int64)
    for i in range(r):
        dual_delta[i, ring.dual[i]] = 1
    if not np.array_equal(N[:, :, ring.unit], dual_delta):
        i, j = np.argwhere(N[:, :, ring.unit] != dual_delta)[0]
        failures.append(
            f"duality normalization fails at N[{ring.labels[i]}][{ring.labels[j]}][1]"
        )

    d = list(ring.dual)
    twisted = N[np.ix_(d, d, d)].transpose(1, 0, 2)
    if not np.array_equal(N, twisted):
        i, j, k = np.argwhere(N != twisted)[0]
        failures.append(
            "duality compatibility fails at "
            f"N[{ring.labels[i]}][{ring.labels[j]}][{ring.labels[k]}]"
        )

    return ValidationReport(f"ring {ring.name}", failures)


def fuse(ring: FusionRing, x: ObjectVec, y: ObjectVec) -> ObjectVec:
    """Bilinear extension of the structure tensor: (x (x) y)."""
    for v in (x, y):
        if v.space != ring.name or len(v.mult) != ring.rank:
            raise FusionError(f"object over {v.space} does not match ring {ring.name}")
    out = np.einsum("i,j,ijk->k", x.as_array(), y.as_array(), ring.N)
    return ObjectVec(ring.name, tuple(int(v) for v in out))


def is_transitive(mats: np.ndarray) -> bool:
    """Connectivity of the union of the action graphs."""
    adj = (np.sum(mats, axis=0) > 0).astype(np.int64)
    n = adj.shape[0]
    seen = {0}
    frontier = [0]
    while frontier:
        v = frontier.pop()
        for w in np.nonzero(adj[v] + adj[:, v])[0]:
            if int(w) not in seen:
                seen.add(int(w))
                frontier.append(int(w))
    return len(seen) == n


def perron_vector(mats: np.ndarray, normalize_at: int, tol: float = 1e-12) -> np.ndarray:
    """Power iteration for the common Perron-Frobenius eigenvector.

    `mats` is a stack of commuting nonnegative matrices whose sum is
    irreducible; the result is normalised to value 1 at `normalize_at`.
    """
    total = np.sum(mats, axis=0).astype(float)
    n = total.shape[0]
    v = np.ones(n) / n
    for _ in range(100000):
        w = total @ v
        w = w / np.linalg.norm(w)
        if np.max(np.abs(w - v)) < tol:
            v = w
            break
        v = w
    else:
        raise ArithmeticError("power iteration did not converge")
    return v / v[normalize_at]


def fp_dimensions(ring: FusionRing) -> np.ndarray:
    """Frobenius-Perron dimensions of the simples (floating point)."""
    report = validate_ring(ring)
    if not report.ok:
        raise FusionError("; ".join(report.failures))
    mats = np.stack([ring.action_matrix(i) for i in range(ring.rank)])
    if not is_transitive(mats):
        raise FusionError("ring is not transitive: decompose first")
    dims = perron_vector(mats, ring.unit)
    check = np.einsum("ijk,k->ij", ring.N, dims)
    if np.max(np.abs(check - np.outer(dims, dims))) > 1e-10:
        raise ArithmeticError("dimension vector fails multiplicativity")
    return dims
