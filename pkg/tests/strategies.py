"""Hypothesis strategies shared by the module tests.

Most point families come from the seeded samplers in ``hybridberk.selftest``
(the same ones the self-test uses), driven by a hypothesis-chosen seed, so
failures shrink to a reproducible seed.  Scalars and polynomials are drawn
directly.
"""
from fractions import Fraction

import numpy as np
from hypothesis import strategies as st

from hybridberk import selftest as S
from hybridberk.core_points import ArchPoint, TrivPoint, enumerate_irreducibles
from hybridberk.polynomial import QI_FIELD, Q, Polynomial
from hybridberk.scalars import QI

rngs = st.integers(0, 2 ** 32 - 1).map(np.random.default_rng)

small_fractions = st.builds(Fraction, st.integers(-12, 12), st.integers(1, 6))
radii = st.builds(Fraction, st.integers(0, 40), st.integers(1, 20))
times = st.floats(0.0, 1.0, allow_nan=False)
fibres = st.floats(0.01, 1.0, allow_nan=False)
fields = st.sampled_from([Q, QI_FIELD])


@st.composite
def scalars(draw, field=QI_FIELD):
    im = draw(small_fractions) if field is QI_FIELD else 0
    return QI(draw(small_fractions), im)


@st.composite
def polys(draw, field=QI_FIELD, max_degree=4, nonzero=True):
    deg = draw(st.integers(0, max_degree))
    cs = [draw(scalars(field)) for _ in range(deg + 1)]
    if nonzero and not cs[-1]:
        cs[-1] = QI(1)
    return Polynomial(cs, field)


@st.composite
def arch_points(draw, field=QI_FIELD):
    re = draw(st.floats(-6, 6, allow_nan=False))
    im = draw(st.floats(-6, 6, allow_nan=False)) if field is QI_FIELD else 0.0
    return ArchPoint(complex(re, im), draw(fibres), field)


@st.composite
def triv_points(draw, field=QI_FIELD):
    p = draw(st.sampled_from(enumerate_irreducibles(field, 14)))
    return TrivPoint(p, draw(radii))


def line_points(field=QI_FIELD):
    return st.one_of(arch_points(field), triv_points(field))


def sampled(sampler, *args, **kwargs):
    """Lift a seeded sampler ``sampler(rng, *args)`` to a strategy."""
    return rngs.map(lambda rng: sampler(rng, *args, **kwargs))


gauss_points = sampled(S.sample_gauss)
cylinder_coords = sampled(S.sample_cyl)
base_points = sampled(S.sample_base_point)
