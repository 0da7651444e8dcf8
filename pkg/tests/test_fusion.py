import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tracecat.fusion import (
    FusionError,
    FusionRing,
    ObjectVec,
    fp_dimensions,
    fuse,
    validate_ring,
    verlinde_su2,
)


def chebyshev_oracle(k: int) -> np.ndarray:
    """Brute-force structure constants from m (x) 2 = (m-1) + (m+1), clipped."""
    r = k + 1
    A = np.zeros((r, r), dtype=np.int64)
    for i in range(r - 1):
        A[i, i + 1] = A[i + 1, i] = 1
    mats = [np.eye(r, dtype=np.int64), A]
    for _ in range(2, r):
        mats.append(A @ mats[-1] - mats[-2])
    N = np.zeros((r, r, r), dtype=np.int64)
    for i in range(r):
        N[i] = mats[i].T
    return N


@pytest.mark.parametrize("k", [0, 1, 2, 3, 4, 10, 16])
def test_verlinde_matches_recursion_oracle(k):
    ring = verlinde_su2(k)
    assert ring.rank == k + 1
    assert np.array_equal(ring.N, chebyshev_oracle(k))
    assert validate_ring(ring).ok


def test_verlinde_spec_examples():
    # k=0: the trivial ring
    triv = verlinde_su2(0)
    assert triv.rank == 1 and triv.N[0, 0, 0] == 1

    r2 = verlinde_su2(2)
    two = r2.basis("2")
    assert fuse(r2, two, two).mult == (1, 0, 1)  # 2 (x) 2 = 1 + 3
    three = r2.basis("3")
    assert fuse(r2, three, three).mult == (1, 0, 0)  # 3 (x) 3 = 1

    r16 = verlinde_su2(16)
    nine = r16.basis("9")
    assert fuse(r16, nine, nine).mult[r16.index("17")] == 1


def test_fuse_unit_law_and_bilinearity():
    ring = verlinde_su2(4)
    x = ObjectVec(ring.name, (1, 0, 2, 0, 1))
    assert fuse(ring, ring.unit_object(), x) == x
    assert fuse(ring, x, ring.unit_object()) == x

    # SU(2)_16: (1+9)(1+9) = 1 + 9 + 9 + 9*9
    r16 = verlinde_su2(16)
    a = r16.basis("1") + r16.basis("9")
    prod = fuse(r16, a, a)
    nn = fuse(r16, r16.basis("9"), r16.basis("9"))
    expected = [0] * 17
    expected[0] += 1
    expected[8] += 2
    for idx, v in enumerate(nn.mult):
        expected[idx] += v
    assert prod.mult == tuple(expected)


def test_fuse_rejects_label_mismatch():
    r4, r2 = verlinde_su2(4), verlinde_su2(2)
    with pytest.raises(FusionError):
        fuse(r4, r2.basis("1"), r4.basis("1"))


small_vecs = st.lists(st.integers(min_value=0, max_value=3), min_size=5, max_size=5)


@settings(max_examples=40, deadline=None)
@given(small_vecs, small_vecs, small_vecs)
def test_fuse_associative_and_unital(xs, ys, zs):
    ring = verlinde_su2(4)
    x, y, z = (ObjectVec(ring.name, tuple(v)) for v in (xs, ys, zs))
    assert fuse(ring, fuse(ring, x, y), z) == fuse(ring, x, fuse(ring, y, z))
    assert fuse(ring, ring.unit_object(), x) == x


@settings(max_examples=40, deadline=None)
@given(small_vecs)
def test_dual_pairing_counts_unit(xs):
    # x (x) x* contains the unit with multiplicity sum(x_i^2)
    ring = verlinde_su2(4)
    x = ObjectVec(ring.name, tuple(xs))
    xd = ring.dual_object(x)
    pairing = fuse(ring, x, xd)
    assert pairing.mult[ring.unit] == sum(v * v for v in xs)


def test_dual_is_involution():
    ring = verlinde_su2(10)
    assert tuple(ring.dual[ring.dual[i]] for i in range(ring.rank)) == tuple(
        range(ring.rank)
    )


def test_validate_ring_reports_witness():
    good = verlinde_su2(4)
    bad_N = np.array(good.N)
    bad_N[1, 1, 1] += 1
    bad = FusionRing("bad", good.labels, good.unit, good.dual, bad_N)
    report = validate_ring(bad)
    assert not report.ok
    assert any("associativity" in f or "duality" in f for f in report.failures)


@pytest.mark.parametrize(
    "k,index,value",
    [(2, 1, 2**0.5), (4, 1, 3**0.5), (0, 0, 1.0)],
)
def test_fp_dimensions_golden(k, index, value):
    dims = fp_dimensions(verlinde_su2(k))
    assert abs(dims[index] - value) < 1e-10


def test_fp_dimensions_multiplicative():
    ring = verlinde_su2(10)
    dims = fp_dimensions(ring)
    check = np.einsum("ijk,k->ij", ring.N, dims)
    assert np.max(np.abs(check - np.outer(dims, dims))) < 1e-10


def test_transitivity_detection():
    from tracecat.fusion import is_transitive

    connected = np.stack([np.eye(2, dtype=np.int64), np.ones((2, 2), dtype=np.int64)])
    disconnected = np.stack([np.eye(2, dtype=np.int64)] * 2)
    assert is_transitive(connected)
    assert not is_transitive(disconnected)


def test_fp_dimensions_rejects_invalid_ring():
    good = verlinde_su2(2)
    bad_N = np.array(good.N)
    bad_N[2, 2, 0] = 0  # break the duality pairing of the third simple
    bad = FusionRing("bad", good.labels, good.unit, good.dual, bad_N)
    with pytest.raises(FusionError):
        fp_dimensions(bad)


def test_fuse_simple_pair_su2_4():
    ring = verlinde_su2(4)
    out = fuse(ring, ring.basis("2"), ring.basis("4"))
    assert out.mult == (0, 0, 1, 0, 1)  # 2 (x) 4 = 3 + 5
