import pytest

from tracecat.cyclo import scalar_field
from tracecat.tl import (
    PlanarDiagram,
    all_diagrams,
    braid_blocks,
    braiding,
    cap,
    compose,
    cup,
    e_generator,
    embed,
    identity,
    identity_suite,
    jones_wenzl,
    jw_by_annihilation,
    pivotal_trace,
    simple_object,
    tensor,
    traciator_self_action,
    twist,
    twist_morphism,
    unit_object,
)

K = 4
F = scalar_field(K)
DELTA = F.loop_value()


def test_planar_diagram_validation():
    with pytest.raises(ValueError):
        PlanarDiagram(2, 2, (1, 0, 3, 2, 5, 4))  # wrong length
    with pytest.raises(ValueError):
        PlanarDiagram(2, 2, (3, 2, 1, 0))  # crossing chords
    PlanarDiagram(2, 2, (1, 0, 3, 2))  # cup over cap is fine
    PlanarDiagram(2, 2, (2, 3, 0, 1))  # so is the identity


def test_diagram_counts_are_catalan():
    assert len(all_diagrams(2, 2)) == 2
    assert len(all_diagrams(3, 3)) == 5
    assert len(all_diagrams(4, 4)) == 14
    assert len(all_diagrams(0, 6)) == 5


def test_loop_value():
    closed = compose(cap(F), cup(F))
    empty = PlanarDiagram(0, 0, ())
    assert closed.terms[empty] == DELTA


def test_tl_relations():
    for n in (3, 4):
        for i in range(n - 1):
            e = e_generator(F, n, i)
            assert compose(e, e) == e.scaled(DELTA)
            if i + 1 < n - 1:
                f = e_generator(F, n, i + 1)
                assert compose(e, compose(f, e)) == e
                assert compose(f, compose(e, f)) == f
    e0, e2 = e_generator(F, 4, 0), e_generator(F, 4, 2)
    assert compose(e0, e2) == compose(e2, e0)


def test_compose_boundary_mismatch():
    with pytest.raises(ValueError):
        compose(identity(F, 2), identity(F, 3))


def test_identity_neutral():
    f = braiding(F)
    assert compose(identity(F, 2), f) == f
    assert compose(f, identity(F, 2)) == f


def test_braiding_inverse_and_reidemeister():
    b, binv = braiding(F, True), braiding(F, False)
    assert compose(b, binv) == identity(F, 2)
    assert compose(binv, b) == identity(F, 2)
    b1, b2 = embed(b, 0, 1), embed(b, 1, 0)
    assert compose(b1, compose(b2, b1)) == compose(b2, compose(b1, b2))


def test_curl_scalar():
    # closing the positive crossing gives i q^(3/2); Reidemeister I fails by it
    got = twist(jones_wenzl(1, F), 1)
    expected = F.imag_unit() * F.q_half(3)
    assert got == expected
    assert got != F.one


@pytest.mark.parametrize("n", range(5))
def test_jones_wenzl_idempotent_and_killed(n):
    p = jones_wenzl(n, F).morphism
    assert compose(p, p) == p
    for i in range(n - 1):
        assert compose(embed(cap(F), i, n - 2 - i), p).is_zero()
        assert compose(p, embed(cup(F), i, n - 2 - i)).is_zero()
    assert pivotal_trace(p, "left") == F.quantum_integer(n + 1)
    assert pivotal_trace(p, "right") == F.quantum_integer(n + 1)


def test_jones_wenzl_alcove_wall():
    # at level k the recursion stops after k+1 strands
    F2 = scalar_field(2)
    top = jones_wenzl(3, F2)  # n = k+1 is allowed...
    assert pivotal_trace(top.morphism, "left").is_zero()  # ...with trace [4] = 0
    with pytest.raises(ValueError, match="quantum integer"):
        jones_wenzl(4, F2)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_jones_wenzl_unique_by_annihilation(n):
    assert jw_by_annihilation(n, F) == jones_wenzl(n, F).morphism


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_twist_matches_kauffman_oracle(n):
    # independent oracle: the positive curl acts on the n-strand projector
    # by (-1)^n A^(n(n+2)) where A = i q^(1/2)
    th = twist(jones_wenzl(n, F), 1)
    A = F.zeta(K + 3)
    oracle = A ** (n * (n + 2))
    if n % 2:
        oracle = -oracle
    assert th == oracle
    assert twist(jones_wenzl(n, F), 2) == oracle


def test_twist_unit_variants():
    assert twist(jones_wenzl(0, F), 1) == F.one
    with pytest.raises(ValueError):
        twist(jones_wenzl(1, F), 3)


def test_pivotal_trace_spherical():
    f = compose(braid_blocks(F, 1, 2), braid_blocks(F, 2, 1))
    assert pivotal_trace(f, "left") == pivotal_trace(f, "right")
    zero = identity(F, 2) - identity(F, 2)
    assert pivotal_trace(zero, "left").is_zero()


def test_traciator_unit_cases():
    u = unit_object(F)
    x = simple_object(3, F)
    theta = twist_morphism(x, True, "right")
    assert traciator_self_action(x, u, "+") == x.proj
    assert traciator_self_action(u, x, "+") == theta
    assert traciator_self_action(u, x, "-") == x.proj
    assert traciator_self_action(x, u, "-") == twist_morphism(x, False, "right")


def test_traciator_inverse_pair():
    # the spec's (n, m) = (2, 2) example, plus an asymmetric pair
    for la, lb in [(2, 2), (3, 2)]:
        x, y = simple_object(la, F), simple_object(lb, F)
        plus = traciator_self_action(y, x, "+")
        minus = traciator_self_action(x, y, "-")
        assert compose(minus, plus) == tensor(y.proj, x.proj)
        assert compose(plus, minus) == tensor(x.proj, y.proj)


def test_traciator_is_braiding_after_twist():
    for la, lb in [(2, 2), (2, 3), (3, 2)]:
        x, y = simple_object(la, F), simple_object(lb, F)
        got = traciator_self_action(x, y, "+")
        block = braid_blocks(F, x.strands, y.strands, True)
        beta = compose(tensor(y.proj, x.proj), compose(block, tensor(x.proj, y.proj)))
        assert got == compose(beta, tensor(x.proj, twist_morphism(y, True, "right")))


def test_traciator_composition_law():
    x, y, z = (simple_object(l, F) for l in (2, 3, 2))
    lhs = traciator_self_action(x, y.tensor(z), "+")
    rhs = compose(
        traciator_self_action(z.tensor(x), y, "+"),
        traciator_self_action(x.tensor(y), z, "+"),
    )
    assert lhs == rhs


def test_double_traciator_is_twist():
    x, y = simple_object(2, F), simple_object(3, F)
    composed = compose(
        traciator_self_action(y, x, "+"), traciator_self_action(x, y, "+")
    )
    assert composed == twist_morphism(x.tensor(y), True, "right")


def test_rotation_duality():
    x = simple_object(3, F)
    theta = twist_morphism(x, True, "right")
    # theta is self-dual here: every simple is its own dual
    assert theta.rotate180() == theta
    b = braiding(F, True)
    assert b.rotate180() == b


def test_float_fast_path_agrees():
    Ff = scalar_field(K, exact=False)
    for n in (1, 2, 3):
        exact = complex(twist(jones_wenzl(n, F), 1))
        fast = complex(twist(jones_wenzl(n, Ff), 1))
        assert abs(exact - fast) < 1e-9


def test_identity_suite_small_level():
    report = identity_suite(2)
    assert report.ok, [c for c in report.checks if not c.passed]
    names = {c.name for c in report.checks}
    assert "traciator_composition" in names
    assert "quantum_dims_nonzero" in names


def test_negated_braiding_still_braids():
    # the leftover sign convention: negating the crossing preserves the
    # braid relations and inverts the twist's sign
    b = braiding(F, True, negate=True)
    binv = braiding(F, False, negate=True)
    assert compose(b, binv) == identity(F, 2)
    b1, b2 = embed(b, 0, 1), embed(b, 1, 0)
    assert compose(b1, compose(b2, b1)) == compose(b2, compose(b1, b2))
    closed = compose(
        tensor(identity(F, 1), cap(F)),
        compose(tensor(b, identity(F, 1)), tensor(identity(F, 1), cup(F))),
    )
    curl = closed.terms[next(iter(closed.terms))]
    assert curl == -(F.imag_unit() * F.q_half(3))


def test_identity_suite_float_fast_path():
    report = identity_suite(2, exact=False)
    assert report.ok, [c for c in report.checks if not c.passed]


def test_jones_wenzl_two_strand_formula():
    # f_2 = id - (1/[2]) e, with closed trace [3]
    p = jones_wenzl(2, F).morphism
    e = e_generator(F, 2, 0)
    expected = identity(F, 2) - e.scaled(F.quantum_integer(2).inverse())
    assert p == expected
    assert pivotal_trace(p, "left") == F.quantum_integer(3)


def test_traciator_accepts_projectors_directly():
    x, y = jones_wenzl(1, F), jones_wenzl(2, F)
    plus = traciator_self_action(x, y, "+")
    minus = traciator_self_action(y.as_object(), x, "-")
    assert compose(minus, plus) == tensor(x.morphism, y.morphism)
    with pytest.raises(ValueError):
        traciator_self_action(x, y, "?")
