import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tracecat.fusion import FusionError, ObjectVec
from tracecat.modules import ModuleAction, ModuleError
from tracecat.packages import load_builtin
from tracecat.trace import (
    check_adjunction,
    check_forgetful,
    check_splitting_iso,
    check_traciator_iso,
    decomposition,
    internal_end,
    trace_matrix,
    trace_object,
    trace_of_word,
    trace_table,
)

D4_TABLE = [["1", "5"], ["2", "4"], ["3"], ["3"]]
E6_TABLE = [
    ["1", "7"],
    ["2", "6", "8"],
    ["3", "5", "7", "9"],
    ["4", "8"],
    ["4", "6", "10"],
    ["5", "11"],
]
E8_TABLE = [
    ["1", "11", "19", "29"],
    ["2", "10", "12", "18", "20", "28"],
    ["3", "9", "11", "13", "17", "19", "21", "27"],
    ["4", "8", "10", "12", "14", "16", "18", "20", "22", "26"],
    ["5", "7", "9", "11", "13", "15", "15", "17", "19", "21", "23", "25"],
    ["6", "10", "14", "16", "20", "24"],
    ["6", "8", "12", "14", "16", "18", "22", "24"],
    ["7", "13", "17", "23"],
]


def column_labels(data, j):
    tm = trace_matrix(data)
    out = []
    for i, lab in enumerate(tm.base_labels):
        out.extend([lab] * int(tm.T[i][j]))
    return out


def object_labels(vec: ObjectVec, labels) -> list[str]:
    out = []
    for lab, mult in zip(labels, vec.mult):
        out.extend([lab] * mult)
    return out


@pytest.mark.parametrize(
    "name,table",
    [("d4_su2_4", D4_TABLE), ("e6_su2_10", E6_TABLE), ("e8_su2_28", E8_TABLE)],
)
def test_ade_trace_tables(name, table):
    data = load_builtin(name)
    got = [column_labels(data, j) for j in range(len(data.msimples))]
    assert got == table


def test_trace_of_unit_is_the_defining_algebra():
    for name, expected in [
        ("d4_su2_4", ["1", "5"]),
        ("e6_su2_10", ["1", "7"]),
        ("e8_su2_28", ["1", "11", "19", "29"]),
    ]:
        data = load_builtin(name)
        tr = trace_object(data, data.action.basis(data.unit_module))
        assert object_labels(tr, data.base.labels) == expected


def test_trace_object_zero_and_additive():
    d4 = load_builtin("d4_su2_4")
    zero = d4.action.object_vec([0, 0, 0, 0])
    assert trace_object(d4, zero).is_zero()


@settings(max_examples=30, deadline=None)
@given(
    st.lists(st.integers(min_value=0, max_value=3), min_size=4, max_size=4),
    st.lists(st.integers(min_value=0, max_value=3), min_size=4, max_size=4),
)
def test_trace_additivity(xs, ys):
    d4 = load_builtin("d4_su2_4")
    x, y = d4.action.object_vec(xs), d4.action.object_vec(ys)
    assert trace_object(d4, x + y) == trace_object(d4, x) + trace_object(d4, y)


def test_trace_label_mismatch():
    d4 = load_builtin("d4_su2_4")
    with pytest.raises(FusionError):
        trace_object(d4, ObjectVec("other", (1, 0, 0, 0)))


def test_trace_of_word_golden():
    d10 = load_builtin("d10_su2_16")
    A = d10.action.basis("1") + d10.action.basis("9")
    B = d10.action.basis("1") + d10.action.basis("9'")
    labels = d10.base.labels
    assert object_labels(trace_of_word(d10, [A]), labels) == ["1", "9", "17"]
    assert object_labels(trace_of_word(d10, [A, A]), labels) == [
        "1", "1", "5", "9", "9", "9", "13", "17", "17",
    ]
    assert object_labels(trace_of_word(d10, [A, B]), labels) == [
        "1", "3", "7", "9", "9", "11", "15", "17",
    ]


def test_trace_of_word_fold_order_immaterial():
    d10 = load_builtin("d10_su2_16")
    A = d10.action.basis("2") + d10.action.basis("9")
    B = d10.action.basis("3")
    C = d10.action.basis("9'") + d10.action.basis("5")
    left = trace_object(d10, d10.mfuse(d10.mfuse(A, B), C))
    right = trace_object(d10, d10.mfuse(A, d10.mfuse(B, C)))
    assert left == right == trace_of_word(d10, [A, B, C])


def test_trace_of_singleton_word_is_trace_object():
    d4 = load_builtin("d4_su2_4")
    unit = d4.action.basis(d4.unit_module)
    assert trace_of_word(d4, [unit]) == trace_object(d4, unit)
    assert trace_of_word(d4, []) == trace_object(d4, unit)


def test_internal_end_examples():
    e7 = load_builtin("e7_su2_16")
    tail = e7.basis("1")
    second = e7.basis("2")
    labels = e7.base.labels
    assert object_labels(internal_end(e7, tail), labels) == ["1", "9", "17"]
    assert object_labels(internal_end(e7, second), labels) == [
        "1", "3", "7", "9", "9", "11", "15", "17",
    ]
    # End(1) = 1 in a regular module
    a5 = load_builtin("a5_su2_4")
    unit = a5.action.basis(a5.unit_module)
    assert internal_end(a5, unit).mult == (1, 0, 0, 0, 0)
    with pytest.raises(ModuleError):
        internal_end(e7, e7.object_vec([0] * 7))


@pytest.mark.parametrize(
    "name", ["d4_su2_4", "e6_su2_10", "e8_su2_28", "d10_su2_16", "a5_su2_4"]
)
def test_checks_pass_on_shipped_packages(name):
    data = load_builtin(name)
    assert check_adjunction(data).ok
    assert check_splitting_iso(data).ok
    assert check_traciator_iso(data).ok
    assert check_forgetful(data).ok


def test_regular_trace_matrix_is_identity():
    a5 = load_builtin("a5_su2_4")
    assert np.array_equal(trace_matrix(a5).T, np.eye(5, dtype=np.int64))


def test_trace_commutes_with_duality():
    # every SU(2)_k simple is self-dual, so this is an involution check
    d10 = load_builtin("d10_su2_16")
    mdual = d10.mdual
    for j in range(10):
        tr = trace_object(d10, d10.action.basis(j))
        tr_dual = trace_object(d10, d10.action.basis(mdual[j]))
        dualised = d10.base.dual_object(tr)
        assert tr_dual == dualised


def test_corrupted_action_detected():
    d4 = load_builtin("d4_su2_4")
    mats = np.array(d4.action.mats)
    mats[4][0][0] += 1
    bad = ModuleAction(
        name="bad",
        base=d4.base,
        base_spec="su2 4",
        msimples=d4.msimples,
        mats=mats,
        unit_module=0,
    )
    assert not check_forgetful(bad).ok


def test_adjunction_needs_unit():
    e7 = load_builtin("e7_su2_16")
    with pytest.raises(ModuleError, match="unit"):
        trace_matrix(e7)


def test_table_formats():
    d4 = load_builtin("d4_su2_4")
    text = trace_table(d4)
    assert text == "1  : 1 ⊕ 5\n2  : 2 ⊕ 4\n3  : 3\n3' : 3\n"
    tsv = trace_table(d4, fmt="tsv")
    assert tsv == "1\t1^1 + 5^1\n2\t2^1 + 4^1\n3\t3^1\n3'\t3^1\n"


def test_decomposition_styles():
    vec = ObjectVec("su2_28", tuple(1 if i in (4, 14) else 2 if i == 6 else 0 for i in range(29)))
    labels = load_builtin("e8_su2_28").base.labels
    assert decomposition(vec, labels, "text") == "5 ⊕ 7 ⊕ 7 ⊕ 15"
    assert decomposition(vec, labels, "machine") == "5^1 + 7^2 + 15^1"
    zero = ObjectVec("su2_28", (0,) * 29)
    assert decomposition(zero, labels, "text") == "0"


def test_machine_table_format():
    d4 = load_builtin("d4_su2_4")
    machine = trace_table(d4, fmt="machine")
    assert machine.splitlines()[0] == "1  : 1^1 + 5^1"
    with pytest.raises(ValueError):
        trace_table(d4, fmt="json")


def test_bumped_trace_matrix_detected():
    # a trace matrix with one entry bumped no longer matches the adjunction data
    d4 = load_builtin("d4_su2_4")
    good = trace_matrix(d4)
    bumped = np.array(good.T)
    bumped[0, 1] += 1
    phi = d4.action.phi_matrix()
    assert np.array_equal(good.T, phi)
    assert not np.array_equal(bumped, phi)
    witness = np.argwhere(bumped != phi)
    assert witness.tolist() == [[0, 1]]
