"""Hypothesis strategies producing lawful presentations by construction."""
from __future__ import annotations

from hypothesis import strategies as st

from bikernel.core import fullsub_bicat, op_bicat, product_bicat
from bikernel.corpus import MAX_ONE, MAX_TWO, chaotic_total, grow_corpus, seed_members

SEEDS = {m.name: m.p for m in seed_members()}
SMALL_SEEDS = {k: p for k, p in SEEDS.items() if p.size()[2] <= 6}


def _small(p) -> bool:
    n0, n1, n2 = p.size()
    return n0 <= 4 and n1 <= MAX_ONE and n2 <= MAX_TWO


@st.composite
def presentations(draw, depth: int = 2):
    """A seed member put through up to ``depth`` lawfulness-preserving constructions."""
    p = SEEDS[draw(st.sampled_from(sorted(SEEDS)))]
    for _ in range(draw(st.integers(0, depth))):
        op = draw(st.sampled_from(("op", "product", "chaotic", "fullsub")))
        if op == "op":
            q = op_bicat(p)
        elif op == "product":
            other = SMALL_SEEDS[draw(st.sampled_from(sorted(SMALL_SEEDS)))]
            if p.size()[1] * other.size()[1] > MAX_ONE or p.size()[2] * other.size()[2] > MAX_TWO:
                continue
            q = product_bicat([p, other])
        elif op == "chaotic":
            q = chaotic_total(p, draw(st.integers(1, 2)))
        else:
            keep = draw(st.sets(st.sampled_from(p.objects))) if p.objects else set()
            q = fullsub_bicat(p, lambda x: x in keep)
        if _small(q):
            p = q
    return p


def _tiny(p) -> bool:
    _, n1, n2 = p.size()
    return n1 <= 4 and n2 <= 8


TINY = sorted((m.name, m.p) for m in grow_corpus(0, 40) if _tiny(m.p))


@st.composite
def tiny_presentations(draw):
    """Corpus members small enough for exhaustive pseudofunctor search, maybe dualised."""
    p = draw(st.sampled_from(TINY))[1]
    return op_bicat(p) if draw(st.booleans()) else p
