from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from effectus import totalization as tz
from effectus.errors import InvalidAlgebra
from effectus.instances import Pfn
from effectus.instances import pfn as pf


def test_nat_matrix_is_partial_function():
    f = tz.matrix(tz.NAT, 2, 2, [[1, 0], [0, 0]])
    assert f.is_subcausal()
    assert tz.to_partial_function(f) == pf.morphism(2, 2, [0, None])


def test_row_sum_two_is_excluded():
    f = tz.matrix(tz.NAT, 1, 2, [[1, 1]])
    assert not f.is_subcausal()
    assert tz.to_partial_function(f) is None


@given(st.lists(st.one_of(st.none(), st.integers(0, 2)), min_size=3, max_size=3),
       st.lists(st.one_of(st.none(), st.integers(0, 2)), min_size=3, max_size=3))
def test_correspondence_is_functorial(t1, t2):
    P = Pfn()
    f, g = pf.morphism(3, 3, t1), pf.morphism(3, 3, t2)
    lhs = tz.from_partial_function(P.compose(g, f))
    rhs = tz.compose(tz.from_partial_function(g), tz.from_partial_function(f))
    assert lhs.rows == rhs.rows
    assert tz.to_partial_function(tz.from_partial_function(f)) == f


def test_ground_map_is_all_ones():
    g = tz.ground(tz.QPOS, 3)
    assert [list(r) for r in g.rows] == [[1], [1], [1]]
    h = tz.matrix(tz.QPOS, 1, 3, [[Fraction(1, 2), Fraction(1, 4), 0]])
    assert h.is_subcausal() and not h.is_causal()


def test_interval_totalization():
    T = tz.totalize_interval(2)
    half = T.eta(Fraction(1, 2))
    assert T.add(half, half, half) == Fraction(3, 2)
    assert T.pcm_sum([half, half, half]) is None
    assert T.pcm_sum([half, half]) == 1
    N = tz.totalize_interval(1)
    assert N.as_natural(N.add(1, 1, 1)) == 3


@pytest.mark.parametrize("R", [tz.NAT, tz.QPOS])
def test_grounded_biproduct_laws(R):
    assert tz.gbc_law_suite(R, max_size=2, samples=50).passed


def test_boolean_semiring_is_rejected():
    # 1 + 1 = 1 is a fine rig, but the table below has 1 + 1 = 0
    doc = {"elements": ["0", "1"], "add": [["0", "1"], ["1", "0"]],
           "mul": [["0", "0"], ["0", "1"]]}
    with pytest.raises(InvalidAlgebra) as exc:
        tz.load_rig(doc)
    assert not exc.value.report["positive"].passed


def test_boolean_semiring_loads():
    doc = {"elements": ["0", "1"], "add": [["0", "1"], ["1", "1"]],
           "mul": [["0", "0"], ["0", "1"]]}
    assert tz.load_rig(doc).one == "1"
