from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from spinorqc.algebra import STA, Multivector
from spinorqc.scalar import Scalar
from spinorqc.tensor import TensorMultivector

settings.register_profile(
    "default",
    deadline=None,
    max_examples=60,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")

EVEN_MASKS = tuple(m for m in range(16) if (m).bit_count() % 2 == 0)

fractions = st.fractions(min_value=-12, max_value=12, max_denominator=9)
nonzero_fractions = fractions.filter(bool)


@st.composite
def scalars(draw, irrational=True):
    rat = draw(fractions)
    irr = draw(fractions) if irrational else Fraction(0)
    return Scalar(rat, irr)


nonzero_scalars = scalars().filter(bool)


@st.composite
def multivectors(draw, masks=tuple(range(16)), max_terms=6, irrational=True):
    chosen = draw(st.lists(st.sampled_from(masks), max_size=max_terms, unique=True))
    return Multivector(STA, {m: draw(scalars(irrational)) for m in chosen})


def even_multivectors(max_terms=6, irrational=True):
    return multivectors(EVEN_MASKS, max_terms, irrational)


@st.composite
def tensors(draw, n, masks=tuple(range(16)), max_terms=5):
    keys = st.tuples(*[st.sampled_from(masks)] * n)
    chosen = draw(st.lists(keys, max_size=max_terms, unique=True))
    return TensorMultivector(STA, n, {k: draw(scalars()) for k in chosen})


amplitude_values = st.tuples(*[scalars()] * 4)


@pytest.fixture(scope="session")
def check_all_json():
    """Two independent CLI runs of ``check all --json`` under different hash seeds."""
    import os
    import subprocess
    import sys

    outs = []
    for hashseed in ("1", "2"):
        env = dict(os.environ, PYTHONHASHSEED=hashseed)
        env.pop("SPINORQC_MODE", None)
        proc = subprocess.run(
            [sys.executable, "-m", "spinorqc.cli", "check", "all", "--json", "--seed", "0"],
            check=False,
            capture_output=True,
            env=env,
            timeout=300,
        )
        outs.append(proc)
    return outs
