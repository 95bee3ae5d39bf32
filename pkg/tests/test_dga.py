import pytest

from sullivan_lab.dga import DGAError, attach_differential, free_dga
from sullivan_lab.documents import corpus_entry, corpus_ids
from sullivan_lab.gca import CapOverflow, Element, basis_of_degree, make_free_gca


def free_corpus():
    out = []
    for cid in corpus_ids():
        doc = corpus_entry(cid).document
        if doc.kind == "free_dga":
            D = doc.build()
            if D.cap > 8:
                D = D.with_cap(8)
            out.append(pytest.param(D, id=cid))
    return out


@pytest.mark.parametrize("D", free_corpus())
def test_d_squared_vanishes_on_every_basis_element(D):
    A = D.algebra
    for k in range(A.cap - 1):
        for m in basis_of_degree(A, k):
            e = Element(A, {m: 1}, k)
            assert not D.d(D.d(e))


@pytest.mark.parametrize("D", free_corpus())
def test_leibniz_on_basis_pairs(D):
    A = D.algebra
    keys = [(k, m) for k in range(A.cap) for m in basis_of_degree(A, k)]
    for k1, m1 in keys:
        for k2, m2 in keys:
            if k1 + k2 + 1 > A.cap:
                continue
            x, y = Element(A, {m1: 1}, k1), Element(A, {m2: 1}, k2)
            lhs = D.d(x * y)
            rhs = D.d(x) * y + x * D.d(y) * (-1) ** k1
            assert lhs == rhs


def test_linearity(m7):
    A = m7.algebra
    u, v = A.element("a*x"), A.element("b*y")
    assert m7.d(u * 3 + v * -2) == m7.d(u) * 3 - m7.d(v) * 2


def test_m7_examples(m7):
    A = m7.algebra
    # d(xy) = dx*y - x*dy with dx = a^2, dy = b^2
    assert m7.d(A.element("x*y")) == A.element("a^2*y - b^2*x")
    assert m7.d(A.element("a*z")) == A.element("2*a^2*b")


def test_degree_mismatch_rejected():
    A = make_free_gca([("a", 2), ("x", 3)], 8)
    with pytest.raises(DGAError) as exc:
        attach_differential(A, {"x": "a"})
    assert exc.value.generator == "x"


def test_d_squared_nonzero_rejected():
    A = make_free_gca([("x", 1), ("y", 2)], 4)
    with pytest.raises(DGAError, match="d\\^2 x"):
        attach_differential(A, {"x": "y", "y": "x*y"})


def test_image_above_cap():
    with pytest.raises((CapOverflow, DGAError)):
        free_dga([("a", 2), ("x", 3)], {"x": "a^2"}, 3)


def test_minimality_flag():
    assert free_dga([("a", 2), ("x", 3)], {"x": "a^2"}, 8).minimal
    assert not free_dga([("a", 2), ("x", 1)], {"x": "a"}, 4).minimal
