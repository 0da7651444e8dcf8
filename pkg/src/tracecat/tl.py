"""Exact Temperley-Lieb diagram calculus at a root of unity.

Morphisms are formal linear combinations of noncrossing planar pairings
with coefficients in the cyclotomic field of `cyclo.scalar_field(k)`.
Closed loops created by stacking evaluate to delta = [2]_q = q + q^(-1).

Boundary convention: a diagram from n_bottom to n_top points carries its
bottom points at indices 0..n_bottom-1 (left to right) and its top points
at n_bottom..n_bottom+n_top-1 (left to right).  Planarity is checked in
the disk order (bottom left to right, then top right to left).

Simple objects are modelled by Jones-Wenzl projectors: the level-k label
n corresponds to the projector on n-1 strands.  The pivotal structure is
strict (caps and cups are plain arcs, the double dual is the identity on
diagrams), so the two canonical twists differ only through the braiding,
and all identities below are decided by exact scalar equality.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .cyclo import scalar_field


@dataclass(frozen=True)
class PlanarDiagram:
    """A perfect noncrossing matching of n_bottom + n_top boundary points."""

    n_bottom: int
    n_top: int
    pairing: tuple[int, ...]

    def __post_init__(self):
        n = self.n_bottom + self.n_top
        if n % 2:
            raise ValueError("odd number of boundary points")
        if len(self.pairing) != n:
            raise ValueError("pairing length mismatch")
        for p, q in enumerate(self.pairing):
            if q == p or not 0 <= q < n or self.pairing[q] != p:
                raise ValueError("pairing is not a fixed-point-free involution")
        if not _is_noncrossing(self.n_bottom, self.n_top, self.pairing):
            raise ValueError("pairing has crossing chords")

    def rotate180(self) -> "PlanarDiagram":
        """The diagram turned upside down (duality on morphisms)."""
        nb, nt = self.n_bottom, self.n_top
        n = nb + nt

        def remap(p: int) -> int:
            # old top j (left to right) -> new bottom nt-1-j, and vice versa
            return (nt - 1 - (p - nb)) if p >= nb else (nt + nb - 1 - p)

        new = [0] * n
        for p, q in enumerate(self.pairing):
            new[remap(p)] = remap(q)
        return PlanarDiagram(nt, nb, tuple(new))


def _is_noncrossing(nb: int, nt: int, pairing: tuple[int, ...]) -> bool:
    def cpos(p: int) -> int:
        return p if p < nb else nb + (nt - 1 - (p - nb))

    chords = []
    for p, q in enumerate(pairing):
        if p < q:
            a, b = sorted((cpos(p), cpos(q)))
            chords.append((a, b))
    for i, (a, b) in enumerate(chords):
        for c, d in chords[i + 1 :]:
            if (a < c < b < d) or (c < a < d < b):
                return False
    return True


_GLUE_CACHE: dict[tuple[PlanarDiagram, PlanarDiagram], tuple[int, tuple[int, ...]]] = {}


def _glue(top: PlanarDiagram, bottom: PlanarDiagram) -> tuple[int, tuple[int, ...]]:
    """Stack `top` onto `bottom`; return (closed loops, resulting pairing)."""
    key = (top, bottom)
    hit = _GLUE_CACHE.get(key)
    if hit is not None:
        return hit
    a, b, c = bottom.n_bottom, bottom.n_top, top.n_top
    # union point ids: bottom diagram 0..a+b-1, top diagram a+b..a+2b+c-1
    off = a + b
    partner = list(bottom.pairing) + [p + off for p in top.pairing]

    def is_mid(u: int) -> bool:
        return a <= u < a + 2 * b

    def glue_partner(u: int) -> int:
        # bottom-top point a+j is glued to top-bottom point off+j
        return u + b if u < off else u - b

    outer = list(range(a)) + list(range(off + b, off + b + c))
    result = [0] * (a + c)

    def resid(u: int) -> int:
        return u if u < a else u - off - b + a

    seen = [False] * (a + 2 * b + c)
    for start in outer:
        if seen[start]:
            continue
        seen[start] = True
        u = partner[start]
        while is_mid(u):
            seen[u] = True
            u = glue_partner(u)
            seen[u] = True
            u = partner[u]
        seen[u] = True
        result[resid(start)] = resid(u)
        result[resid(u)] = resid(start)
    loops = 0
    for start in range(a, a + 2 * b):
        if seen[start]:
            continue
        loops += 1
        u = start
        while not seen[u]:
            seen[u] = True
            u = partner[u]
            seen[u] = True
            u = glue_partner(u)
    out = (loops, tuple(result))
    _GLUE_CACHE[key] = out
    return out


class TLMorphism:
    """Finite linear combination of planar diagrams with common boundary."""

    __slots__ = ("field", "n_bottom", "n_top", "terms")

    def __init__(self, field, n_bottom: int, n_top: int, terms: dict | None = None):
        self.field = field
        self.n_bottom = n_bottom
        self.n_top = n_top
        clean = {}
        for diag, coef in (terms or {}).items():
            if diag.n_bottom != n_bottom or diag.n_top != n_top:
                raise ValueError("diagram boundary mismatch")
            if not coef.is_zero():
                clean[diag] = coef
        self.terms = clean

    # -- linear structure ---------------------------------------------------

    def __add__(self, other: "TLMorphism") -> "TLMorphism":
        self._check_boundary(other)
        terms = dict(self.terms)
        for d, c in other.terms.items():
            terms[d] = terms[d] + c if d in terms else c
        return TLMorphism(self.field, self.n_bottom, self.n_top, terms)

    def __sub__(self, other: "TLMorphism") -> "TLMorphism":
        return self + other.scaled(-self.field.one)

    def scaled(self, scalar) -> "TLMorphism":
        return TLMorphism(
            self.field,
            self.n_bottom,
            self.n_top,
            {d: c * scalar for d, c in self.terms.items()},
        )

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TLMorphism):
            return NotImplemented
        if (self.n_bottom, self.n_top) != (other.n_bottom, other.n_top):
            return False
        return (self - other).is_zero()

    def __hash__(self):
        raise TypeError("TLMorphism is unhashable")

    def _check_boundary(self, other: "TLMorphism") -> None:
        if (self.n_bottom, self.n_top) != (other.n_bottom, other.n_top):
            raise ValueError("boundary mismatch")

    # -- diagram operations ---------------------------------------------------

    def rotate180(self) -> "TLMorphism":
        return TLMorphism(
            self.field,
            self.n_top,
            self.n_bottom,
            {d.rotate180(): c for d, c in self.terms.items()},
        )

    def __repr__(self) -> str:
        return (
            f"TLMorphism({self.n_bottom}->{self.n_top}, {len(self.terms)} terms)"
        )


def compose(f: TLMorphism, g: TLMorphism) -> TLMorphism:
    """The composite f after g (g is applied first)."""
    if f.field is not g.field:
        raise ValueError("scalar field mismatch")
    if f.n_bottom != g.n_top:
        raise ValueError(
            f"cannot compose: f expects {f.n_bottom} inputs, g produces {g.n_top}"
        )
    field = f.field
    delta_pow = _delta_powers(field)
    terms: dict[PlanarDiagram, object] = {}
    for dg, cg in g.terms.items():
        for df, cf in f.terms.items():
            loops, pairing = _glue(df, dg)
            coef = cf * cg
            if loops:
                coef = coef * delta_pow(loops)
            diag = PlanarDiagram(g.n_bottom, f.n_top, pairing)
            terms[diag] = terms[diag] + coef if diag in terms else coef
    return TLMorphism(field, g.n_bottom, f.n_top, terms)


def tensor(f: TLMorphism, g: TLMorphism) -> TLMorphism:
    """Horizontal juxtaposition, f to the left of g."""
    if f.field is not g.field:
        raise ValueError("scalar field mismatch")
    nb, nt = f.n_bottom + g.n_bottom, f.n_top + g.n_top
    terms = {}
    for df, cf in f.terms.items():
        for dg, cg in g.terms.items():
            terms[_tensor_diagrams(df, dg)] = cf * cg
    return TLMorphism(f.field, nb, nt, terms)


@lru_cache(maxsize=None)
def _tensor_diagrams(df: PlanarDiagram, dg: PlanarDiagram) -> PlanarDiagram:
    nb, nt = df.n_bottom + dg.n_bottom, df.n_top + dg.n_top

    def remap_f(p: int) -> int:
        return p if p < df.n_bottom else p + dg.n_bottom

    def remap_g(p: int) -> int:
        return p + df.n_bottom if p < dg.n_bottom else p + df.n_bottom + df.n_top

    pairing = [0] * (nb + nt)
    for p, q in enumerate(df.pairing):
        pairing[remap_f(p)] = remap_f(q)
    for p, q in enumerate(dg.pairing):
        pairing[remap_g(p)] = remap_g(q)
    return PlanarDiagram(nb, nt, tuple(pairing))


_DELTA_POWERS: dict[int, list] = {}


def _delta_powers(field):
    powers = _DELTA_POWERS.setdefault(id(field), [field.one, field.loop_value()])

    def get(n: int):
        while len(powers) <= n:
            powers.append(powers[-1] * powers[1])
        return powers[n]

    return get


# -- basic diagrams ----------------------------------------------------------


def identity(field, n: int) -> TLMorphism:
    pairing = tuple(range(n, 2 * n)) + tuple(range(n))
    return TLMorphism(field, n, n, {PlanarDiagram(n, n, pairing): field.one})


def cup(field, m: int = 1) -> TLMorphism:
    """Nested coevaluation 0 -> 2m (point j pairs with 2m-1-j)."""
    pairing = tuple(2 * m - 1 - j for j in range(2 * m))
    return TLMorphism(field, 0, 2 * m, {PlanarDiagram(0, 2 * m, pairing): field.one})


def cap(field, m: int = 1) -> TLMorphism:
    """Nested evaluation 2m -> 0."""
    pairing = tuple(2 * m - 1 - j for j in range(2 * m))
    return TLMorphism(field, 2 * m, 0, {PlanarDiagram(2 * m, 0, pairing): field.one})


def e_generator(field, n: int, i: int) -> TLMorphism:
    """The TL generator e_i on n strands (cap-cup at positions i, i+1)."""
    if not 0 <= i < n - 1:
        raise ValueError("generator index out of range")
    return embed(compose(cup(field), cap(field)), i, n - 2 - i)


def embed(f: TLMorphism, left: int, right: int) -> TLMorphism:
    """id_left (x) f (x) id_right."""
    out = f
    if left:
        out = tensor(identity(f.field, left), out)
    if right:
        out = tensor(out, identity(f.field, right))
    return out


def all_diagrams(nb: int, nt: int) -> list[PlanarDiagram]:
    """Every planar pairing with the given boundary (Catalan many)."""
    n = nb + nt
    if n % 2:
        return []

    def cpos_inv(c: int) -> int:
        return c if c < nb else nb + (nt - 1 - (c - nb))

    def rec(points: tuple[int, ...]) -> list[dict[int, int]]:
        if not points:
            return [{}]
        out = []
        first = points[0]
        for j in range(1, len(points), 2):
            mate = points[j]
            for left in rec(points[1:j]):
                for right in rec(points[j + 1 :]):
                    combined = dict(left)
                    combined.update(right)
                    combined[first] = mate
                    combined[mate] = first
                    out.append(combined)
        return out

    results = []
    for matching in rec(tuple(range(n))):
        pairing = [0] * n
        for p, q in matching.items():
            pairing[cpos_inv(p)] = cpos_inv(q)
        results.append(PlanarDiagram(nb, nt, tuple(pairing)))
    return results


# -- Jones-Wenzl projectors ---------------------------------------------------


@dataclass(frozen=True)
class JWProjector:
    """The Jones-Wenzl idempotent on n strands."""

    n: int
    morphism: TLMorphism

    @property
    def strands(self) -> int:
        return self.n

    @property
    def proj(self) -> TLMorphism:
        return self.morphism

    def as_object(self) -> "TLObject":
        return TLObject(self.n, self.morphism)


@lru_cache(maxsize=None)
def jones_wenzl(n: int, field) -> JWProjector:
    """Wenzl recursion; fails where a quantum integer [m], m <= n, vanishes."""
    if n < 0:
        raise ValueError("strand count must be nonnegative")
    if n <= 1:
        return JWProjector(n, identity(field, n))
    prev = jones_wenzl(n - 1, field).morphism
    qn = field.quantum_integer(n)
    if qn.is_zero():
        raise ValueError(f"vanishing quantum integer [{n}]_q")
    ratio = field.quantum_integer(n - 1) * qn.inverse()
    grown = tensor(prev, identity(field, 1))
    e_last = e_generator(field, n, n - 2)
    correction = compose(grown, compose(e_last, grown)).scaled(ratio)
    return JWProjector(n, grown - correction)


@dataclass(frozen=True)
class TLObject:
    """An object of the projected category: strands with an idempotent on them."""

    strands: int
    proj: TLMorphism

    def tensor(self, other: "TLObject") -> "TLObject":
        return TLObject(self.strands + other.strands, tensor(self.proj, other.proj))


def unit_object(field) -> TLObject:
    return TLObject(0, identity(field, 0))


def simple_object(label: int, field) -> TLObject:
    """The simple object with 1-based label n, modelled on n-1 strands."""
    return jones_wenzl(label - 1, field).as_object()


# -- braiding and twists ------------------------------------------------------


def braiding(field, over: bool = True, negate: bool = False) -> TLMorphism:
    """Kauffman-style crossing: i q^(1/2) id - i q^(-1/2) e (over), inverse for under.

    The sign of q^(1/2) is fixed once and for all (q^(1/2) = zeta); `negate`
    flips the overall sign of the crossing, the one residual convention the
    skein relation leaves open.
    """
    i = field.imag_unit()
    e = e_generator(field, 2, 0)
    if over:
        out = identity(field, 2).scaled(i * field.q_half(1)) - e.scaled(
            i * field.q_half(-1)
        )
    else:
        out = identity(field, 2).scaled(-(i * field.q_half(-1))) + e.scaled(
            i * field.q_half(1)
        )
    return out.scaled(field.from_int(-1)) if negate else out


@lru_cache(maxsize=None)
def braid_blocks(field, p: int, q: int, over: bool = True) -> TLMorphism:
    """Braid a block of p strands past a block of q strands (p+q -> q+p)."""
    out = identity(field, p + q)
    if p == 0 or q == 0:
        return out
    x = braiding(field, over)
    for moved in range(p):
        start = p - 1 - moved
        for j in range(q):
            out = compose(embed(x, start + j, p + q - 2 - start - j), out)
    return out


def _sandwich(x: TLObject, y: TLObject, middle: TLMorphism) -> TLMorphism:
    bottom = tensor(x.proj, y.proj)
    top = tensor(y.proj, x.proj)
    return compose(top, compose(middle, bottom))


def _apply_block_crossings(
    m: TLMorphism, offset: int, p: int, q: int, over: bool
) -> TLMorphism:
    """Braid strands [offset, offset+p) past [offset+p, offset+p+q) on top of m.

    Applying the p*q elementary crossings one at a time keeps every
    intermediate morphism anchored to m's (typically projected, hence
    small) bottom instead of materialising a pure-strand block braid.
    """
    field = m.field
    total = m.n_top
    x = braiding(field, over)
    for moved in range(p):
        start = p - 1 - moved
        for j in range(q):
            pos = offset + start + j
            m = compose(embed(x, pos, total - 2 - pos), m)
    return m


@lru_cache(maxsize=None)
def _curl_middle(field, n: int, positive: bool, side: str) -> TLMorphism:
    """Unprojected curl on n strands: wrap the group around itself and close."""
    if side == "right":
        m = tensor(identity(field, n), cup(field, n))
        m = _apply_block_crossings(m, 0, n, n, positive)
        return compose(tensor(identity(field, n), cap(field, n)), m)
    m = tensor(cup(field, n), identity(field, n))
    m = _apply_block_crossings(m, n, n, n, positive)
    return compose(tensor(cap(field, n), identity(field, n)), m)


def twist_morphism(x: TLObject, positive: bool = True, side: str = "right") -> TLMorphism:
    """The curl through the object: braid a strand group around itself and close."""
    field = x.proj.field
    n = x.strands
    if n == 0:
        return x.proj
    if side not in ("left", "right"):
        raise ValueError("side must be 'left' or 'right'")
    return compose(x.proj, compose(_curl_middle(field, n, positive, side), x.proj))


def twist(x: JWProjector, variant: int = 1):
    """Scalar by which the chosen twist acts on the simple object x.

    Variant 1 closes the positive curl to the right, variant 2 to the left;
    they agree exactly here because the braiding is ribbon.
    """
    if variant not in (1, 2):
        raise ValueError("variant must be 1 or 2")
    side = "right" if variant == 1 else "left"
    mor = twist_morphism(x.as_object(), positive=True, side=side)
    return extract_scalar(mor, x.morphism)


def extract_scalar(mor: TLMorphism, base: TLMorphism):
    """Write mor = s * base for a scalar s (valid on simple objects)."""
    field = mor.field
    if base.is_zero():
        raise ValueError("cannot divide by the zero morphism")
    diag, coef = next(iter(base.terms.items()))
    s = mor.terms.get(diag, field.zero) * coef.inverse()
    if not (base.scaled(s) - mor).is_zero():
        raise ValueError("morphism is not a scalar multiple of the base")
    return s


def pivotal_trace(f: TLMorphism, side: str = "left"):
    """Close an endomorphism to the chosen side; returns the exact scalar."""
    if f.n_bottom != f.n_top:
        raise ValueError("trace requires an endomorphism")
    field = f.field
    n = f.n_bottom
    if side == "right":
        closed = compose(
            cap(field, n), compose(tensor(f, identity(field, n)), cup(field, n))
        )
    elif side == "left":
        closed = compose(
            cap(field, n), compose(tensor(identity(field, n), f), cup(field, n))
        )
    else:
        raise ValueError("side must be 'left' or 'right'")
    empty = PlanarDiagram(0, 0, ())
    return closed.terms.get(empty, field.zero)


# -- the traciator in the self-action instance --------------------------------


def traciator_self_action(x: TLObject | JWProjector, y: TLObject | JWProjector, sign: str = "+") -> TLMorphism:
    """The morphism x (x) y -> y (x) x wrapping one factor around the cylinder.

    With the category acting on itself the counit of the adjunction is the
    identity and the half-braiding is the braiding, so the wrapping strand
    is realised by a block braiding closed off with a cup/cap pair:
    the '+' version sends y around (over), the '-' version sends x around
    the other way (under).
    """
    if isinstance(x, JWProjector):
        x = x.as_object()
    if isinstance(y, JWProjector):
        y = y.as_object()
    if sign not in ("+", "-"):
        raise ValueError("sign must be '+' or '-'")
    field = x.proj.field
    middle = _traciator_middle(field, x.strands, y.strands, sign)
    return _sandwich(x, y, middle)


@lru_cache(maxsize=None)
def _traciator_middle(field, p: int, q: int, sign: str) -> TLMorphism:
    # Wide wraps are assembled from single-strand wraps via the composition
    # law (valid on the nose for framed tangles); narrow ones are built
    # directly from the wrap diagram.
    if sign == "+":
        if q > 2:
            return compose(
                _traciator_middle(field, 1 + p, q - 1, sign),
                _traciator_middle(field, p + q - 1, 1, sign),
            )
        m = tensor(identity(field, p + q), cup(field, q))
        m = _apply_block_crossings(m, 0, p + q, q, over=True)
        return compose(tensor(identity(field, q + p), cap(field, q)), m)
    if p > 2:
        return compose(
            _traciator_middle(field, p - 1, q + 1, sign),
            _traciator_middle(field, 1, p - 1 + q, sign),
        )
    m = tensor(cup(field, p), identity(field, p + q))
    m = _apply_block_crossings(m, p, p, p + q, over=False)
    return compose(tensor(cap(field, p), identity(field, q + p)), m)


# -- the identity suite --------------------------------------------------------


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str = ""


@dataclass
class SuiteReport:
    level: int
    checks: list[CheckResult]

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def lines(self) -> list[str]:
        out = []
        for c in self.checks:
            status = "PASS" if c.passed else "FAIL"
            suffix = f"  ({c.detail})" if c.detail and not c.passed else ""
            out.append(f"{status}  {c.name}{suffix}")
        return out


def jw_by_annihilation(n: int, field) -> TLMorphism:
    """Independent construction of the Jones-Wenzl projector by linear algebra.

    Solves for the unique combination of planar diagrams on n strands that
    every cap kills, normalised to have identity coefficient 1.
    """
    diagrams = all_diagrams(n, n)
    idx = {d: j for j, d in enumerate(diagrams)}
    rows: list[list] = []
    rhs: list = []
    for i in range(n - 1):
        capped: dict[PlanarDiagram, dict[int, object]] = {}
        capper = embed(cap(field), i, n - 2 - i)
        for d in diagrams:
            single = TLMorphism(field, n, n, {d: field.one})
            out = compose(capper, single)
            for dd, c in out.terms.items():
                capped.setdefault(dd, {})[idx[d]] = c
        for dd, entries in capped.items():
            row = [field.zero] * len(diagrams)
            for j, c in entries.items():
                row[j] = c
            rows.append(row)
            rhs.append(field.zero)
    ident = next(
        d for d in diagrams if d.pairing == tuple(range(n, 2 * n)) + tuple(range(n))
    )
    row = [field.zero] * len(diagrams)
    row[idx[ident]] = field.one
    rows.append(row)
    rhs.append(field.one)
    solution = _solve_field(rows, rhs, field)
    return TLMorphism(
        field, n, n, {d: solution[idx[d]] for d in diagrams}
    )


def _solve_field(rows, rhs, field):
    """Gaussian elimination over the scalar field; requires a unique solution."""
    m = [list(r) + [b] for r, b in zip(rows, rhs)]
    ncols = len(rows[0])
    pivots = []
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, len(m)) if not m[i][col].is_zero()), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = m[r][col].inverse()
        m[r] = [v * inv for v in m[r]]
        for i in range(len(m)):
            if i != r and not m[i][col].is_zero():
                factor = m[i][col]
                m[i] = [a - factor * b for a, b in zip(m[i], m[r])]
        pivots.append(col)
        r += 1
    for i in range(r, len(m)):
        if not m[i][ncols].is_zero():
            raise ValueError("inconsistent linear system")
    if len(pivots) != ncols:
        raise ValueError("solution is not unique")
    sol = [field.zero] * ncols
    for i, col in enumerate(pivots):
        sol[col] = m[i][ncols]
    return sol


DEFAULT_STRAND_CAPS = {2: (6, 6), 4: (5, 5), 10: (4, 4), 16: (4, 4)}


def identity_suite(
    k: int,
    exact: bool = True,
    pair_cap: int | None = None,
    triple_cap: int | None = None,
) -> SuiteReport:
    """Run the full morphism-level identity suite at level k.

    Caps are total strand counts for the two- and three-object checks and
    keep every intermediate diagram space below 10^4 diagrams.
    """
    field = scalar_field(k, exact=exact)
    caps = DEFAULT_STRAND_CAPS.get(k, (4, 4))
    pair_cap = caps[0] if pair_cap is None else pair_cap
    triple_cap = caps[1] if triple_cap is None else triple_cap

    checks: list[CheckResult] = []

    def run(name: str, fn) -> None:
        try:
            witness = fn()
        except Exception as exc:  # surface failures as check results
            checks.append(CheckResult(name, False, f"error: {exc}"))
            return
        checks.append(
            CheckResult(name, witness is None, "" if witness is None else str(witness))
        )

    delta = field.loop_value()
    labels = list(range(1, k + 2))

    def tl_relations():
        for n in range(2, min(k + 1, 4) + 1):
            for i in range(n - 1):
                e = e_generator(field, n, i)
                if compose(e, e) != e.scaled(delta):
                    return f"e_{i}^2 != delta e_{i} on {n} strands"
                for j in range(n - 1):
                    ej = e_generator(field, n, j)
                    if abs(i - j) == 1 and compose(e, compose(ej, e)) != e:
                        return f"e_{i} e_{j} e_{i} != e_{i} on {n} strands"
                    if abs(i - j) >= 2 and compose(e, ej) != compose(ej, e):
                        return f"e_{i} e_{j} != e_{j} e_{i} on {n} strands"
        return None

    run("tl_relations", tl_relations)

    def braid_checks():
        b, binv = braiding(field, True), braiding(field, False)
        if compose(b, binv) != identity(field, 2) or compose(binv, b) != identity(
            field, 2
        ):
            return "braiding not invertible"
        b1, b2 = embed(b, 0, 1), embed(b, 1, 0)
        if compose(b1, compose(b2, b1)) != compose(b2, compose(b1, b2)):
            return "Reidemeister III fails"
        u1, u2 = embed(binv, 0, 1), embed(binv, 1, 0)
        if compose(u1, compose(u2, u1)) != compose(u2, compose(u1, u2)):
            return "Reidemeister III fails (inverse)"
        return None

    run("braid_inverse_reidemeister_2_3", braid_checks)

    def reidemeister_1():
        x = jones_wenzl(1, field)
        theta = twist(x, 1)
        expected = field.imag_unit() * field.q_half(3)
        if theta != expected:
            return "curl scalar is not i q^(3/2)"
        if theta == field.one:
            return "curl is trivial; Reidemeister I would hold"
        return None

    run("reidemeister_1_fails_by_twist", reidemeister_1)

    def jw_checks():
        for n in range(min(k + 1, pair_cap) + 1):
            p = jones_wenzl(n, field).morphism
            if compose(p, p) != p:
                return f"JW({n}) not idempotent"
            for i in range(n - 1):
                if not compose(embed(cap(field), i, n - 2 - i), p).is_zero():
                    return f"cap_{i} does not kill JW({n})"
                if not compose(p, embed(cup(field), i, n - 2 - i)).is_zero():
                    return f"JW({n}) does not kill cup_{i}"
            if pivotal_trace(p, "left") != field.quantum_integer(n + 1):
                return f"closed trace of JW({n}) is not [{n + 1}]"
        return None

    run("jw_idempotent_killed_trace", jw_checks)

    def jw_unique():
        for n in range(2, min(k + 1, 4) + 1):
            if jw_by_annihilation(n, field) != jones_wenzl(n, field).morphism:
                return f"JW({n}) differs from annihilation solution"
        return None

    run("jw_unique_by_annihilation", jw_unique)

    def dims_nonzero():
        for n in labels:
            if field.quantum_integer(n).is_zero():
                return f"[{n}]_q = 0"
        return None

    run("quantum_dims_nonzero", dims_nonzero)

    objects: dict[tuple[int, ...], TLObject] = {}

    def obj(parts: tuple[int, ...]) -> TLObject:
        if parts not in objects:
            out = unit_object(field)
            for lab in parts:
                out = out.tensor(simple_object(lab, field))
            objects[parts] = out
        return objects[parts]

    taus: dict = {}

    def tau(xparts: tuple[int, ...], yparts: tuple[int, ...], sign: str) -> TLMorphism:
        key = (xparts, yparts, sign)
        if key not in taus:
            taus[key] = traciator_self_action(obj(xparts), obj(yparts), sign)
        return taus[key]

    def strand_total(parts: tuple[int, ...]) -> int:
        return sum(l - 1 for l in parts)

    pair_labels = [
        (a, b)
        for a in labels
        for b in labels
        if 0 < strand_total((a, b)) <= pair_cap
    ]
    triple_labels = [
        (a, b, c)
        for a in labels
        for b in labels
        for c in labels
        if 0 < strand_total((a, b, c)) <= triple_cap
    ]
    single_labels = [a for a in labels if a - 1 <= max(pair_cap - 1, 2)]

    def traciator_units():
        for a in single_labels:
            x = obj((a,))
            if tau((a,), (1,), "+") != x.proj:
                return f"tau(x,1) != id for label {a}"
            theta = twist_morphism(x, True, "right")
            if tau((1,), (a,), "+") != theta:
                return f"tau(1,x) != twist for label {a}"
            if tau((1,), (a,), "-") != x.proj:
                return f"tau-(1,x) != id for label {a}"
            theta_inv = twist_morphism(x, False, "right")
            if tau((a,), (1,), "-") != theta_inv:
                return f"tau-(x,1) != inverse twist for label {a}"
        return None

    run("traciator_unit_laws", traciator_units)

    def traciator_inverse():
        for a, b in pair_labels:
            plus = tau((b,), (a,), "+")
            minus = tau((a,), (b,), "-")
            if compose(minus, plus) != obj((b, a)).proj:
                return f"tau- tau+ != id at {(a, b)}"
            if compose(plus, minus) != obj((a, b)).proj:
                return f"tau+ tau- != id at {(a, b)}"
        return None

    run("traciator_inverse", traciator_inverse)

    def traciator_composition():
        for a, b, c in triple_labels:
            lhs = tau((a,), (b, c), "+")
            rhs = compose(tau((c, a), (b,), "+"), tau((a, b), (c,), "+"))
            if lhs != rhs:
                return f"composition law fails at {(a, b, c)}"
        return None

    run("traciator_composition", traciator_composition)

    def traciator_zigzag():
        # the auxiliary object x (x) y (x) x makes this check the widest one,
        # so it gets its own cap on 4p + q
        for a, b in pair_labels:
            if 4 * (a - 1) + (b - 1) > 9:
                continue
            x, y = obj((a,)), obj((b,))
            p = x.strands
            lhs = tau((b,), (a,), "+")
            tm = traciator_self_action(x, obj((a, b, a)), "-")
            pre = tensor(cup(field, p), tensor(y.proj, x.proj))
            post = tensor(tensor(x.proj, y.proj), cap(field, p))
            if lhs != compose(post, compose(tm, pre)):
                return f"zig-zag fails at {(a, b)}"
        return None

    run("traciator_zigzag", traciator_zigzag)

    def double_traciator():
        for a, b in pair_labels:
            lhs = compose(tau((b,), (a,), "+"), tau((a,), (b,), "+"))
            if lhs != twist_morphism(obj((a, b)), True, "right"):
                return f"double traciator != twist at {(a, b)}"
        return None

    run("double_traciator_is_twist", double_traciator)

    def traciator_braiding_twist():
        for a, b in pair_labels:
            x, y = obj((a,)), obj((b,))
            beta = _sandwich(x, y, braid_blocks(field, x.strands, y.strands, True))
            rhs = compose(beta, tensor(x.proj, twist_morphism(y, True, "right")))
            if tau((a,), (b,), "+") != rhs:
                return f"tau != braiding o (id x twist) at {(a, b)}"
            beta_inv = _sandwich(
                x, y, braid_blocks(field, x.strands, y.strands, False)
            )
            rhs_inv = compose(
                beta_inv, tensor(twist_morphism(x, False, "right"), y.proj)
            )
            if tau((a,), (b,), "-") != rhs_inv:
                return f"tau- != inverse braiding o (inverse twist x id) at {(a, b)}"
        return None

    run("traciator_braiding_twist", traciator_braiding_twist)

    def two_twists():
        for a in single_labels:
            x = obj((a,))
            t1 = twist_morphism(x, True, "right")
            t2 = twist_morphism(x, True, "left")
            agree = t1 == t2
            ribbon = t1.rotate180() == t1
            phi1 = compose(twist_morphism(x, False, "left"), t1)
            phi2 = compose(
                twist_morphism(x, True, "left"), twist_morphism(x, False, "right")
            )
            phis_agree = phi1 == phi2
            if not (agree == ribbon == phis_agree):
                return f"twist/ribbon/pivotal equivalence broken at label {a}"
            if not agree:
                return f"category unexpectedly non-ribbon at label {a}"
            if phi1 != x.proj:
                return f"pivotal morphism is not the identity at label {a}"
            if t2.rotate180() != t1:
                return f"twist duality relation fails at label {a}"
        return None

    run("two_twists_ribbon_pivotal", two_twists)

    def spherical():
        for a in single_labels:
            p = jones_wenzl(a - 1, field).morphism
            if pivotal_trace(p, "left") != pivotal_trace(p, "right"):
                return f"tr_L != tr_R on JW({a - 1})"
        n = min(k + 1, 3)
        f = braid_blocks(field, 1, n - 1, True)
        g = compose(f, braid_blocks(field, n - 1, 1, True))
        for mor in (g, g + identity(field, n).scaled(delta)):
            if pivotal_trace(mor, "left") != pivotal_trace(mor, "right"):
                return "tr_L != tr_R on a braided endomorphism"
        return None

    run("spherical_trace", spherical)

    return SuiteReport(k, checks)
