import random

import pytest

from siltglue.fields import QQ
from siltglue.quiver import Quiver, build_algebra
from siltglue.complexes import ProjComplex, cone, direct_sum, minimize, shift
from siltglue.fixtures import ka3_algebra, ka3_named_complexes
from siltglue.homs import HomSpace


@pytest.fixture
def ka3():
    return ka3_named_complexes()


@pytest.fixture
def A3():
    return ka3_algebra()


def random_quiver(rng, max_vertices=5, arrow_prob=0.45):
    nv = rng.randint(2, max_vertices)
    verts = [str(i) for i in range(1, nv + 1)]
    arrows = []
    for i in range(nv):
        for j in range(i + 1, nv):
            if rng.random() < arrow_prob:
                arrows.append((f"a{i + 1}_{j + 1}", verts[i], verts[j]))
    return Quiver(verts, arrows)


def random_complex(alg, rng, steps=2, max_width=4, shift_range=2):
    """Random bounded complex: iterated cones of random chain maps of stalks."""
    def rand_stalk():
        v = rng.choice(alg.quiver.vertices)
        return shift(ProjComplex.stalk(alg, v), rng.randint(-shift_range, shift_range))

    X = rand_stalk()
    for _ in range(steps):
        Y = rand_stalk()
        hs = HomSpace(X, Y, 0)
        cycles = hs.cycle_basis
        if cycles and rng.random() < 0.7:
            from siltglue.complexes import ChainMap

            f = ChainMap.zero(X, Y)
            for v in cycles:
                if alg.field == QQ:
                    from fractions import Fraction

                    c = Fraction(rng.randint(-2, 2))
                else:
                    c = rng.randrange(alg.field.p)
                if not alg.field.is_zero(c):
                    f = f + ChainMap(X, Y, hs.fvars.from_vector(v), check=False).scale(c)
            X = minimize(cone(f).Z).complex
        else:
            X = direct_sum(X, Y)
        if X.is_zero():
            X = rand_stalk()
        if max(len(vs) for vs in X.components.values()) >= max_width:
            break
    return X


def seeded_rng(seed):
    return random.Random(seed)
