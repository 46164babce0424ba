"""Linear network-coding mappings w_N = alpha*w_A + beta*w_B (mod q)."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal

from .gaussint import GInt, ONE
from .residue import ResidueField, field_inv, field_mul, reduce

Side = Literal["A", "B"]


@dataclass(frozen=True)
class NcMapping:
    alpha: GInt
    beta: GInt

    @classmethod
    def make(cls, alpha, beta, field: ResidueField) -> "NcMapping":
        a, b = reduce(alpha, field), reduce(beta, field)
        if not a or not b:
            raise ValueError("both mapping coefficients must be nonzero mod q")
        return cls(a, b)

    def __str__(self):
        return f"({self.alpha},{self.beta})"


@dataclass(frozen=True)
class CosetPartition:
    mapping: NcMapping
    classes: tuple[tuple[GInt, tuple[tuple[GInt, GInt], ...]], ...]

    def unlabeled(self) -> frozenset[frozenset[tuple[GInt, GInt]]]:
        return frozenset(frozenset(members) for _, members in self.classes)


def _pair_key(p: tuple[GInt, GInt]):
    return (p[0].key(), p[1].key())


def nc_map(m: NcMapping, wA, wB, field: ResidueField) -> GInt:
    return reduce(m.alpha * GInt.of(wA) + m.beta * GInt.of(wB), field)


def recover_partner(wN, m: NcMapping, own, side: Side, field: ResidueField) -> GInt:
    """Recover the other node's symbol from the NC symbol and one's own symbol."""
    wN, own = GInt.of(wN), GInt.of(own)
    if side == "A":
        return field_mul(field_inv(m.beta, field), wN - m.alpha * own, field)
    if side == "B":
        return field_mul(field_inv(m.alpha, field), wN - m.beta * own, field)
    raise ValueError("side must be 'A' or 'B'")


def clusters(m: NcMapping, dA, dB, field: ResidueField) -> bool:
    """True when the difference pair maps both joint symbols to one NC symbol."""
    s = m.alpha * reduce(dA, field) + m.beta * reduce(dB, field)
    return not reduce(s, field)


def clustered_set(m: NcMapping, field: ResidueField) -> frozenset[tuple[GInt, GInt]]:
    return frozenset(
        (field_mul(v, -m.beta, field), field_mul(v, m.alpha, field)) for v in field.elements
    )


def cosets(m: NcMapping, field: ResidueField) -> CosetPartition:
    groups: dict[GInt, list[tuple[GInt, GInt]]] = {w: [] for w in field.elements}
    for a in field.elements:
        for b in field.elements:
            groups[nc_map(m, a, b, field)].append((a, b))
    classes = tuple(
        (label, tuple(sorted(members, key=_pair_key)))
        for label, members in sorted(groups.items(), key=lambda kv: kv[0].key())
    )
    return CosetPartition(m, classes)


def canonicalize(m: NcMapping, field: ResidueField) -> NcMapping:
    return NcMapping(field_mul(field_inv(m.beta, field), m.alpha, field), ONE)


def canonical_mappings(field: ResidueField) -> list[NcMapping]:
    """The norm(q) - 1 representatives (alpha, 1), ordered by alpha's sort key."""
    return [NcMapping(a, ONE) for a in field.nonzero]


def _isomorphic_by_scaling(m1: NcMapping, m2: NcMapping, field: ResidueField) -> bool:
    return any(
        field_mul(g, m1.alpha, field) == m2.alpha and field_mul(g, m1.beta, field) == m2.beta
        for g in field.nonzero
    )


def isomorphic(m1: NcMapping, m2: NcMapping, field: ResidueField) -> bool:
    """Equal coset partitions, decided three independent ways that must agree."""
    by_canon = canonicalize(m1, field) == canonicalize(m2, field)
    by_scale = _isomorphic_by_scaling(m1, m2, field)
    by_partition = cosets(m1, field).unlabeled() == cosets(m2, field).unlabeled()
    if not by_canon == by_scale == by_partition:
        raise AssertionError(f"isomorphism tests disagree for {m1} and {m2}")
    return by_canon


def mapping_from_cluster(dA, dB, field: ResidueField) -> NcMapping:
    """The canonical mapping (-dA^-1 * dB, 1) that clusters (dA, dB)."""
    ra, rb = reduce(dA, field), reduce(dB, field)
    if not ra or not rb:
        raise ValueError("difference pair is not NC-valid (a component is 0 mod q)")
    return NcMapping(field_mul(-field_inv(ra, field), rb, field), ONE)


# vector formulation over a real prime q -------------------------------------

# Representatives of Z[i]/2 used by the vector-formulation demo; 2 is not a
# Gaussian prime, so this ring is handled only here.
Q2_REPRESENTATIVES = (GInt(0, 0), GInt(1, 0), GInt(0, 1), GInt(1, 1))


@dataclass(frozen=True)
class DualMapping:
    """alpha as the 2x2 rotation matrix [[aR, -aI], [aI, aR]] mod q (beta = I)."""

    q: int
    alpha_re: int
    alpha_im: int

    @property
    def matrix(self) -> tuple[tuple[int, int], tuple[int, int]]:
        return ((self.alpha_re, (-self.alpha_im) % self.q), (self.alpha_im, self.alpha_re))

    def as_gint(self) -> GInt:
        return GInt(self.alpha_re, self.alpha_im)


def vector_dual_mapping(dA, dB, q: int) -> DualMapping | None:
    """Solve the vector-formulation dual-clustering condition for alpha.

    Requires q to be a rational prime.  Returns None when
    ``dA_re^2 + dA_im^2 = 0 (mod q)``, in which case no matrix alpha clusters
    both the pair and its dual.  The returned alpha satisfies
    ``alpha*dA + dB = 0 (mod q)`` as a Gaussian integer, i.e.
    ``alpha = -conj(dA) * dB / norm(dA)``.
    """
    from .gaussint import is_rational_prime

    if not is_rational_prime(q):
        raise ValueError(f"{q} is not a rational prime")
    dA, dB = GInt.of(dA), GInt.of(dB)
    ar, ai = dA.re % q, dA.im % q
    br, bi = dB.re % q, dB.im % q
    if ar == 0 and ai == 0:
        raise ValueError("dA must be nonzero mod q")
    d = (ar * ar + ai * ai) % q
    if d == 0:
        return None
    inv = pow(d, -1, q)
    alpha_re = (-inv * (ar * br + ai * bi)) % q
    alpha_im = (-inv * (ar * bi - ai * br)) % q
    return DualMapping(q, alpha_re, alpha_im)


def dual_mapping_residual(sol: DualMapping, dA, dB) -> tuple[tuple[int, int], tuple[int, int]]:
    """alpha_matrix @ D_A + D_B mod q; all zeros when the pair and its dual cluster."""
    dA, dB = GInt.of(dA), GInt.of(dB)
    q = sol.q
    (a1, a2), (a3, a4) = sol.matrix
    DA = ((dA.re, -dA.im), (dA.im, dA.re))
    DB = ((dB.re, -dB.im), (dB.im, dB.re))
    return tuple(
        tuple((a_row[0] * DA[0][c] + a_row[1] * DA[1][c] + DB[r][c]) % q for c in range(2))
        for r, a_row in enumerate(((a1, a2), (a3, a4)))
    )
